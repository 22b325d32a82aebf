// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <filesystem>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "semiprod/boolsparse.hpp"
#include "semiprod/cli.hpp"
#include "semiprod/distmsb.hpp"
#include "semiprod/dominance.hpp"
#include "semiprod/exponents.hpp"
#include "semiprod/maxmin.hpp"

using namespace semiprod;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const ExtInt kInf = ExtInt::inf();
const ExtInt kNegInf = ExtInt::neg_inf();

// Values in a narrow range, with a fraction of cells copied from earlier
// cells so equal values are common.
ExtMatrix duplicate_heavy(std::mt19937_64& rng, std::size_t n, ExtInt absent, double p_absent, double p_other) {
  ExtMatrix m = oracle::random_ext(rng, n, absent, {-5, 5, p_absent, p_other});
  std::uniform_int_distribution<std::size_t> cell(0, n * n - 1);
  for (std::size_t c = 0; c < n * n / 3; ++c) {
    const std::size_t to = cell(rng), from = cell(rng);
    m(to / n, to % n) = m(from / n, from % n);
  }
  return m;
}

// ---------------------------------------------------------------------------

Verdict exponent_table() {
  std::map<std::string, double> t;
  for (const auto& e : published_exponent_table()) t[e.name] = e.value;
  const std::vector<std::pair<std::string, double>> want = {
      {"maxmin", 2.473},          {"dominance", 2.458},           {"maxmin_classical", 2.687},
      {"dist_quantum_coeff", 0.640}, {"dist_classical_coeff", 0.960}, {"boolsparse_example", 2.277},
      {"boolsparse_m", 0.517},    {"boolsparse_n", 1.406},        {"threshold_square", 1.151},
      {"threshold_dense", 1.873},
  };
  Verdict v;
  std::ostringstream s;
  for (const auto& [name, value] : want) {
    const double got = t.at(name);
    if (std::abs(got - value) > 0.001) v.fail(name + " = " + std::to_string(got));
  }
  if (v.ok) v.detail = "10 values within 0.001";
  return v;
}

Verdict generalized_suite() {
  std::mt19937_64 rng(2024);
  Verdict v;
  std::uint64_t runs = 0;
  for (int inst = 0; inst < 500 && v.ok; ++inst) {
    const std::size_t n = inst < 250 ? 1 + inst % 8 : 9 + inst % 12;
    const std::size_t u = 1 + rng() % 4;
    const std::size_t w = 1 + rng() % 4;
    std::vector<ExtMatrix> as, bs;
    for (std::size_t x = 0; x < u; ++x) as.push_back(duplicate_heavy(rng, n, kInf, 0.15, 0.1));
    for (std::size_t y = 0; y < w; ++y) bs.push_back(duplicate_heavy(rng, n, kNegInf, 0.15, 0.1));
    const std::size_t m1 = std::max<std::size_t>(1, oracle::count_present_a(as));

    std::vector<std::size_t> ts;
    if (n <= 8) {
      for (std::size_t t = 1; t <= m1; ++t) ts.push_back(t);
    } else {
      ts = {1, m1};
      for (int k = 0; k < 4; ++k) ts.push_back(1 + rng() % m1);
    }
    for (LexOrder order : {LexOrder::Normal, LexOrder::Decreasing}) {
      for (bool strict : {false, true}) {
        const LexMatrix want = generalized_dominance_brute(as, bs, order, strict);
        for (Engine engine : {Engine::QuantumSim, Engine::Classical}) {
          for (std::size_t t : ts) {
            CostLedger ledger(static_cast<std::uint64_t>(inst));
            DominanceOptions o;
            o.t = t;
            o.order = order;
            o.strict = strict;
            o.engine = engine;
            ++runs;
            if (generalized_dominance(as, bs, o, ledger) != want) {
              v.fail("instance " + std::to_string(inst) + " t=" + std::to_string(t));
            }
          }
        }
      }
    }
  }
  if (v.ok) v.detail = "500 instances, " + std::to_string(runs) + " runs";
  return v;
}

Verdict leftslice_suite() {
  std::mt19937_64 rng(77);
  Verdict v;
  for (int inst = 0; inst < 500 && v.ok; ++inst) {
    const std::size_t n = 1 + inst % 20;
    const auto a = duplicate_heavy(rng, n, kInf, 0.15, 0.1);
    const auto b = duplicate_heavy(rng, n, kNegInf, 0.1, 0.1);
    const auto want_left = leftslice_brute(a, b);
    const auto want_mm = maxmin_brute(a, b);
    const Engine engine = inst % 2 ? Engine::Classical : Engine::QuantumSim;
    std::optional<ExtMatrix> first;
    for (std::size_t g = 1; g <= n; ++g) {
      CostLedger ledger(static_cast<std::uint64_t>(inst));
      MaxminOptions o;
      o.g = g;
      o.engine = engine;
      if (leftslice(a, b, o, ledger) != want_left) v.fail("leftslice, instance " + std::to_string(inst));
      const auto mm = maxmin_product(a, b, o, ledger);
      if (mm != want_mm) v.fail("maxmin, instance " + std::to_string(inst));
      if (!first) first = mm;
      if (mm != *first) v.fail("g-dependence, instance " + std::to_string(inst));
    }
  }
  if (v.ok) v.detail = "500 instances, every g";
  return v;
}

Verdict apbp_suite() {
  std::mt19937_64 rng(5);
  Verdict v;
  for (int inst = 0; inst < 100 && v.ok; ++inst) {
    const std::size_t n = 1 + inst % 32;
    std::bernoulli_distribution edge(inst % 3 == 0 ? 0.1 : 0.3);
    std::uniform_int_distribution<int> weight(1, 12);
    ExtMatrix cap(n, n, kNegInf);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && edge(rng)) cap(i, j) = weight(rng);
    CostLedger ledger(static_cast<std::uint64_t>(inst));
    MaxminOptions o;
    o.engine = inst % 2 ? Engine::Classical : Engine::QuantumSim;
    const auto out = apbp(cap, o, ledger);
    if (out != oracle::bottleneck(cap)) v.fail("instance " + std::to_string(inst));
    if (maxmin_product(out, out, o, ledger) != out) v.fail("not a fixed point, instance " + std::to_string(inst));
  }
  if (v.ok) v.detail = "100 digraphs";
  return v;
}

Verdict distmsb_suite() {
  std::mt19937_64 rng(9);
  Verdict v;
  std::size_t negative = 0, infinite = 0;
  for (int inst = 0; inst < 80 && v.ok; ++inst) {
    const std::size_t n = 1 + inst % 16;
    auto a = oracle::random_ext(rng, n, kInf, {-9, 20, 0.1});
    const auto b = oracle::random_ext(rng, n, kInf, {-9, 20, 0.1});
    if (inst % 4 == 0) {
      const std::size_t r = rng() % n;
      for (std::size_t k = 0; k < n; ++k) a(r, k) = kInf;
    }
    const auto c = distance_brute(a, b);
    for (unsigned ell = 1; ell <= 6; ++ell) {
      for (Engine engine : {Engine::QuantumSim, Engine::Classical}) {
        CostLedger ledger(static_cast<std::uint64_t>(inst));
        MsbOptions o;
        o.ell = ell;
        o.engine = engine;
        const MsbResult got = distance_msb(a, b, o, ledger);
        if (got != msb_bits_oracle(c, got.scale(), ell)) {
          v.fail("instance " + std::to_string(inst) + " ell=" + std::to_string(ell));
        }
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            negative += got.tag(i, j) == MsbTag::Negative;
            infinite += got.tag(i, j) == MsbTag::Infinite;
          }
      }
    }
  }
  if (v.ok && (negative == 0 || infinite == 0)) v.fail("suite never produced negative and infinite cells");
  if (v.ok) v.detail = "80 instances x 6 bit counts x 2 engines";
  return v;
}

Verdict sparse_suite() {
  std::mt19937_64 rng(13);
  Verdict v;
  std::map<SparseRegime, int> regimes;
  for (int inst = 0; inst < 500 && v.ok; ++inst) {
    const std::size_t n = 1 + rng() % 64;
    const double da = std::exp2(-static_cast<double>(rng() % 7));
    const double db = std::exp2(-static_cast<double>(rng() % 7));
    const auto a = oracle::random_bool(rng, n, n, da);
    const auto b = oracle::random_bool(rng, n, n, db);
    const auto want = bool_multiply(a, b);
    const std::uint64_t m1 = std::max<std::uint64_t>(1, a.count());
    const std::uint64_t m2 = std::max<std::uint64_t>(1, b.count());
    const Engine engine = inst % 2 ? Engine::Classical : Engine::QuantumSim;
    auto grid = [](std::uint64_t m) {
      return std::vector<std::uint64_t>{1, std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::sqrt(double(m)))), m};
    };
    for (auto l1 : grid(m1))
      for (auto l2 : grid(m2))
        for (auto l3 : grid(m2)) {
          CostLedger ledger(1);
          const auto r = sparse_bool_product(a, b, l1, l2, l3, engine, ledger);
          if (r.product != want) v.fail("instance " + std::to_string(inst));
        }
    CostLedger ledger(2);
    const auto r = auto_sparse_bool_product(a, b, engine, ledger);
    ++regimes[r.regime];
    if (r.product != want) v.fail("auto, instance " + std::to_string(inst));
  }
  if (v.ok) {
    std::ostringstream s;
    s << "500 instances; regimes";
    for (const auto& [reg, count] : regimes) s << ' ' << to_string(reg) << '=' << count;
    v.detail = s.str();
  }
  return v;
}

// Square root rounded up, by a route independent of the library's.
std::uint64_t root_up(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r * r > x) --r;
  while (r * r < x) ++r;
  return r;
}

Verdict check_ledger(const CostLedger& ledger, const std::string& label) {
  Verdict v;
  std::map<std::string, std::uint64_t> recomputed;
  for (const auto& rec : ledger.log()) {
    recomputed[rec.phase] +=
        rec.kind == ChargeKind::Enumeration ? root_up(rec.space_size * (rec.solutions + 1)) : root_up(rec.space_size);
  }
  for (const auto& [phase, totals] : ledger.phases()) {
    const std::uint64_t want = recomputed.count(phase) ? recomputed.at(phase) : 0;
    if (totals.quantum_steps != want) v.fail(label + " phase " + phase);
  }
  return v;
}

Verdict ledger_conformance() {
  std::mt19937_64 rng(21);
  Verdict v;
  std::size_t phases = 0;
  auto absorb = [&](const CostLedger& ledger, const std::string& label) {
    const Verdict r = check_ledger(ledger, label);
    if (!r.ok) v.fail(r.detail);
    phases += ledger.phases().size();
  };
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t n = 12 + 4 * rep;
    const auto a = duplicate_heavy(rng, n, kInf, 0.2, 0.0);
    const auto b = duplicate_heavy(rng, n, kNegInf, 0.2, 0.0);
    {
      CostLedger ledger(rep);
      dominance_product(a, b, rep % 2, Engine::QuantumSim, ledger, 1 + rep);
      absorb(ledger, "dominance");
    }
    {
      CostLedger ledger(rep);
      MaxminOptions o;
      o.g = 1 + rep;
      maxmin_product(a, b, o, ledger);
      absorb(ledger, "maxmin");
    }
    {
      CostLedger ledger(rep);
      MsbOptions o;
      o.ell = 1 + rep;
      distance_msb(oracle::random_ext(rng, n, kInf, {0, 30, 0.1}), oracle::random_ext(rng, n, kInf, {-5, 30, 0.1}), o,
                   ledger);
      absorb(ledger, "distmsb");
    }
    {
      CostLedger ledger(rep);
      const auto p = oracle::random_bool(rng, 40, 40, 0.05);
      const auto q = oracle::random_bool(rng, 40, 40, 0.05);
      sparse_bool_product(p, q, 2, 3, 4, Engine::QuantumSim, ledger);
      auto_sparse_bool_product(p, q, Engine::QuantumSim, ledger, "auto/");
      absorb(ledger, "boolsparse");
    }
  }

  // Byte-identical reports from identical seeds.
  const std::string dir = "acceptance_ledger_tmp";
  std::filesystem::create_directories(dir);
  std::ostringstream sink;
  auto call = [&](std::vector<std::string> args) { return cli::run(args, sink, sink); };
  call({"gen", "--n", "14", "--seed", "3", "--out", dir + "/a.m"});
  call({"gen", "--n", "14", "--seed", "4", "--fill", "-inf", "--out", dir + "/b.m"});
  for (const char* task : {"dominance", "maxmin"}) {
    std::string first;
    for (int k = 0; k < 2; ++k) {
      std::ostringstream out, err;
      const int code = cli::run({task, "--a", dir + "/a.m", "--b", dir + "/b.m", "--seed", "99"}, out, err);
      if (code != 0) v.fail(std::string(task) + " exited " + std::to_string(code));
      if (k == 0) first = out.str();
      if (out.str() != first) v.fail(std::string(task) + " reports differ");
    }
  }
  std::filesystem::remove_all(dir);
  if (v.ok) v.detail = std::to_string(phases) + " phases recomputed; repeated reports identical";
  return v;
}

Verdict model_slope() {
  std::mt19937_64 rng(31);
  std::vector<double> xs, ys;
  std::ostringstream s;
  for (std::size_t n : {64u, 128u, 256u, 512u}) {
    ExtMatrix a(n, n), b(n, n);
    std::uniform_int_distribution<std::int64_t> val(-1000000, 1000000);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = val(rng);
        b(i, j) = val(rng);
      }
    CostLedger ledger(1);
    dominance_product(a, b, false, Engine::QuantumSim, ledger);
    const auto r = ledger.report();
    const double cost = static_cast<double>(r.totals.quantum_steps) + r.totals.model_multiply_cost;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(cost));
    s << " n=" << n << ":" << std::llround(cost);
  }
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  Verdict v;
  std::ostringstream d;
  d << "slope " << slope << " (target 2.458 +- 0.15);" << s.str();
  v.detail = d.str();
  if (std::abs(slope - 2.458) > 0.15) v.fail(v.detail);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exponent table", 1.0, exponent_table},
      {2, "generalized dominance oracle suite", 120.0, generalized_suite},
      {3, "leftslice and max-min", 120.0, leftslice_suite},
      {4, "all-pairs bottleneck paths", 60.0, apbp_suite},
      {5, "distance product leading bits", 60.0, distmsb_suite},
      {6, "sparse Boolean product", 120.0, sparse_suite},
      {7, "ledger conformance and reproducibility", 60.0, ledger_conformance},
      {8, "model-cost slope of dense dominance", 600.0, model_slope},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && secs > c.budget_s) v.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_s));
    failures += !v.ok;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", v.ok ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
