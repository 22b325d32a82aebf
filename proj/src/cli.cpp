#include "semiprod/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "semiprod/boolsparse.hpp"
#include "semiprod/distmsb.hpp"
#include "semiprod/dominance.hpp"
#include "semiprod/exponents.hpp"
#include "semiprod/matrix_io.hpp"
#include "semiprod/maxmin.hpp"

namespace semiprod::cli {

using nlohmann::json;

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

std::string render(const BoolMatrix& m) {
  std::ostringstream s;
  write_matrix(s, m);
  return s.str();
}

std::string render(const ExtMatrix& m, ExtInt fill) {
  std::ostringstream s;
  write_matrix(s, m, fill);
  return s.str();
}

std::string render(const LexMatrix& m) {
  std::ostringstream s;
  s << "lex " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).none()) s << i + 1 << ' ' << j + 1 << ' ' << m(i, j).x << ' ' << m(i, j).y << '\n';
  return s.str();
}

std::string render(const MsbResult& r) {
  std::ostringstream s;
  s << "msb " << r.rows() << ' ' << r.cols() << " ell=" << r.ell() << " W=" << r.scale() << '\n';
  for (std::size_t i = 0; i < r.rows(); ++i) {
    for (std::size_t j = 0; j < r.cols(); ++j) s << (j ? " " : "") << r.cell_string(i, j);
    s << '\n';
  }
  return s.str();
}

json phase_json(const PhaseTotals& p) {
  return {{"classical_steps", p.classical_steps},
          {"quantum_steps", p.quantum_steps},
          {"model_multiply_cost", p.model_multiply_cost},
          {"simulated_evaluations", p.simulated_evaluations}};
}

json ledger_json(const LedgerReport& r) {
  json phases = json::object();
  for (const auto& [name, p] : r.phases) phases[name] = phase_json(p);
  return {{"phases", phases},
          {"totals", phase_json(r.totals)},
          {"quantum_calls", r.quantum_calls},
          {"seed", r.seed},
          {"predicate_cost", r.predicate_cost_note}};
}

// Every task fills the same record, so reports share one schema.
struct Report {
  std::string task;
  std::string engine;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> n, u, v, ell, t, g, l1, l2, l3, scale;
  std::optional<std::string> order, regime;
  std::optional<bool> strict;
  LedgerReport ledger;
  std::string result;  // canonical text of the output
  bool verify_requested = false;
  bool verified = false;
};

json opt(const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); }
json opt(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }
json opt(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

json report_json(const Report& r) {
  return {
      {"task", r.task},
      {"engine", r.engine},
      {"seed", r.seed},
      {"n", opt(r.n)},
      {"u", opt(r.u)},
      {"v", opt(r.v)},
      {"ell", opt(r.ell)},
      {"parameters",
       {{"t", opt(r.t)},
        {"g", opt(r.g)},
        {"l1", opt(r.l1)},
        {"l2", opt(r.l2)},
        {"l3", opt(r.l3)},
        {"scale", opt(r.scale)},
        {"order", opt(r.order)},
        {"strict", opt(r.strict)},
        {"regime", opt(r.regime)}}},
      {"ledger", ledger_json(r.ledger)},
      {"quantum_steps", r.ledger.totals.quantum_steps},
      {"model_multiply_cost", r.ledger.totals.model_multiply_cost},
      {"result_checksum", hex64(fnv1a(r.result))},
      {"verification", r.verify_requested ? (r.verified ? "match" : "mismatch") : "skipped"},
      {"verified", r.verified},
  };
}

struct Options {
  std::vector<std::string> a, b;
  std::string engine = "quantum-sim";
  std::size_t t = 0;
  std::size_t g = 0;
  std::uint64_t l1 = 0, l2 = 0, l3 = 0;
  unsigned bits = 1;
  std::int64_t scale = 0;
  std::string order = "normal";
  bool strict = false;
  std::uint64_t seed = 0;
  bool verify = false;
  std::string report;
  std::string out;
  double omega = 2.373;
  double alpha = 0.302;

  // gen
  std::string kind = "extint";
  std::size_t size = 8;
  double density = 0.5;
  std::int64_t lo = -10, hi = 10;
  std::string fill = "inf";
};

const std::string& single(const std::vector<std::string>& paths, const char* flag) {
  if (paths.size() != 1) throw UsageError(std::string("exactly one ") + flag + " is required");
  return paths[0];
}

ExtMatrix load_ext(const std::string& path, ExtInt default_fill) {
  MatrixFile f = parse_matrix_file(path, default_fill);
  if (f.kind != MatrixKind::ExtInt) throw UsageError(path + ": expected an extint matrix");
  return std::move(f.values);
}

BoolMatrix load_bool(const std::string& path) {
  MatrixFile f = parse_matrix_file(path);
  if (f.kind != MatrixKind::Bool) throw UsageError(path + ": expected a bool matrix");
  return std::move(f.bits);
}

bool is_brute(const Options& o) { return o.engine == "brute"; }
Engine engine_of(const Options& o) { return is_brute(o) ? Engine::Classical : engine_from_string(o.engine); }

void write_out(const Options& o, const std::string& text) {
  if (o.out.empty()) return;
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << text;
}

Report start(const std::string& task, const Options& o) {
  Report r;
  r.task = task;
  r.engine = o.engine;
  r.seed = o.seed;
  r.verify_requested = o.verify;
  return r;
}

Report do_dominance(const Options& o) {
  const ExtMatrix a = load_ext(single(o.a, "--a"), ExtInt::inf());
  const ExtMatrix b = load_ext(single(o.b, "--b"), ExtInt::neg_inf());
  Report r = start("dominance", o);
  CostLedger ledger(o.seed);
  BoolMatrix c;
  if (is_brute(o)) {
    c = dominance_brute(a, b, o.strict);
  } else {
    const std::size_t t = o.t ? o.t : auto_dominance_t(a.rows(), a.count_present(ExtInt::inf()), b.count_present(ExtInt::neg_inf()));
    r.t = t;
    c = dominance_product(a, b, o.strict, engine_of(o), ledger, t);
  }
  if (o.verify) r.verified = c == (is_brute(o) ? serial::dominance_brute(a, b, o.strict) : dominance_brute(a, b, o.strict));
  r.n = a.rows();
  r.u = r.v = 1;
  r.strict = o.strict;
  r.ledger = ledger.report();
  r.result = render(c);
  write_out(o, r.result);
  return r;
}

Report do_gendom(const Options& o) {
  if (o.a.empty() || o.b.empty()) throw UsageError("gendom needs at least one --a and one --b");
  std::vector<ExtMatrix> as, bs;
  for (const auto& p : o.a) as.push_back(load_ext(p, ExtInt::inf()));
  for (const auto& p : o.b) bs.push_back(load_ext(p, ExtInt::neg_inf()));
  const LexOrder order = lex_order_from_string(o.order);
  Report r = start("gendom", o);
  CostLedger ledger(o.seed);
  LexMatrix c;
  if (is_brute(o)) {
    c = generalized_dominance_brute(as, bs, order, o.strict);
  } else {
    DominanceOptions d;
    d.order = order;
    d.strict = o.strict;
    d.engine = engine_of(o);
    std::uint64_t m1 = 0, m2 = 0;
    for (const auto& m : as) m1 += m.count_present(ExtInt::inf());
    for (const auto& m : bs) m2 += m.count_present(ExtInt::neg_inf());
    d.t = o.t ? o.t : auto_dominance_t(as[0].rows(), m1, m2);
    r.t = d.t;
    c = generalized_dominance(as, bs, d, ledger);
  }
  if (o.verify) r.verified = c == generalized_dominance_brute(as, bs, order, o.strict);
  r.n = as[0].rows();
  r.u = as.size();
  r.v = bs.size();
  r.order = o.order;
  r.strict = o.strict;
  r.ledger = ledger.report();
  r.result = render(c);
  write_out(o, r.result);
  return r;
}

Report do_maxmin(const Options& o) {
  const ExtMatrix a = load_ext(single(o.a, "--a"), ExtInt::neg_inf());
  const ExtMatrix b = load_ext(single(o.b, "--b"), ExtInt::neg_inf());
  Report r = start("maxmin", o);
  CostLedger ledger(o.seed);
  ExtMatrix c;
  if (is_brute(o)) {
    c = maxmin_brute(a, b);
  } else {
    MaxminOptions m;
    m.g = o.g ? o.g : auto_block_size(a.rows());
    m.t = o.t;
    m.engine = engine_of(o);
    r.g = m.g;
    if (o.t) r.t = o.t;
    c = maxmin_product(a, b, m, ledger);
  }
  if (o.verify) r.verified = c == (is_brute(o) ? serial::maxmin_brute(a, b) : maxmin_brute(a, b));
  r.n = a.rows();
  r.ledger = ledger.report();
  r.result = render(c, ExtInt::neg_inf());
  write_out(o, r.result);
  return r;
}

Report do_apbp(const Options& o) {
  const ExtMatrix cap = load_ext(single(o.a, "--a"), ExtInt::neg_inf());
  if (!o.b.empty()) throw UsageError("apbp takes a single capacity matrix via --a");
  Report r = start("apbp", o);
  CostLedger ledger(o.seed);
  ExtMatrix c;
  if (is_brute(o)) {
    c = bottleneck_brute(cap);
  } else {
    MaxminOptions m;
    m.g = o.g ? o.g : auto_block_size(cap.rows());
    m.t = o.t;
    m.engine = engine_of(o);
    r.g = m.g;
    if (o.t) r.t = o.t;
    c = apbp(cap, m, ledger);
  }
  if (o.verify) r.verified = c == bottleneck_brute(cap);
  r.n = cap.rows();
  r.ledger = ledger.report();
  r.result = render(c, ExtInt::neg_inf());
  write_out(o, r.result);
  return r;
}

Report do_distmsb(const Options& o) {
  const ExtMatrix a = load_ext(single(o.a, "--a"), ExtInt::inf());
  const ExtMatrix b = load_ext(single(o.b, "--b"), ExtInt::inf());
  Report r = start("distmsb", o);
  CostLedger ledger(o.seed);
  MsbResult c;
  if (is_brute(o)) {
    c = msb_bits_oracle(distance_brute(a, b), o.scale ? o.scale : distance_scale(a, b, o.bits), o.bits);
  } else {
    MsbOptions m;
    m.ell = o.bits;
    m.scale = o.scale;
    m.t = o.t;
    m.engine = engine_of(o);
    if (o.t) r.t = o.t;
    c = distance_msb(a, b, m, ledger);
  }
  if (o.verify) {
    r.verified = c == msb_bits_oracle(is_brute(o) ? serial::distance_brute(a, b) : distance_brute(a, b), c.scale(), o.bits);
  }
  r.n = a.rows();
  r.ell = o.bits;
  r.scale = static_cast<std::uint64_t>(c.scale());
  r.u = std::uint64_t{1} << ((o.bits + 1) / 2);
  r.v = std::uint64_t{1} << (o.bits / 2);
  r.ledger = ledger.report();
  r.result = render(c);
  write_out(o, r.result);
  return r;
}

Report do_boolmul(const Options& o) {
  const BoolMatrix a = load_bool(single(o.a, "--a"));
  const BoolMatrix b = load_bool(single(o.b, "--b"));
  const int given = (o.l1 > 0) + (o.l2 > 0) + (o.l3 > 0);
  if (given != 0 && given != 3) throw UsageError("--l1, --l2 and --l3 go together");
  Report r = start("boolmul", o);
  CostLedger ledger(o.seed);
  BoolMatrix c;
  if (is_brute(o)) {
    c = bool_multiply(a, b);
  } else {
    const SparseProduct p = given == 3 ? sparse_bool_product(a, b, o.l1, o.l2, o.l3, engine_of(o), ledger)
                                       : auto_sparse_bool_product(a, b, engine_of(o), ledger);
    if (given == 3 || p.regime == SparseRegime::Square || p.regime == SparseRegime::Middle) {
      r.l1 = p.l1;
      r.l2 = p.l2;
      r.l3 = p.l3;
    }
    if (given == 0) r.regime = std::string(to_string(p.regime));
    c = p.product;
  }
  if (o.verify) r.verified = c == serial::bool_multiply(a, b);
  r.n = a.rows();
  r.ledger = ledger.report();
  r.result = render(c);
  write_out(o, r.result);
  return r;
}

json do_exponents(const Options& o) {
  const OmegaParams p(o.omega, o.alpha);
  json exact = json::object();
  json printed = json::object();
  json formulas = json::object();
  for (const auto& e : published_exponent_table(p)) {
    exact[e.name] = e.value;
    printed[e.name] = std::round(e.value * 1000.0) / 1000.0;
    formulas[e.name] = e.formula;
  }
  json j = {{"task", "exponents"},
            {"omega", p.omega()},
            {"alpha", p.alpha()},
            {"beta", p.beta()},
            {"exponents", exact},
            {"rounded", printed},
            {"formulas", formulas}};
  j["result_checksum"] = hex64(fnv1a(exact.dump()));
  return j;
}

void do_gen(const Options& o) {
  if (o.out.empty()) throw UsageError("gen needs --out");
  if (o.density < 0.0 || o.density > 1.0) throw UsageError("--density must lie in [0, 1]");
  if (o.lo > o.hi) throw UsageError("--lo must not exceed --hi");
  std::mt19937_64 rng(o.seed);
  std::bernoulli_distribution keep(o.density);
  std::uniform_int_distribution<std::int64_t> value(o.lo, o.hi);
  const std::size_t n = o.size;
  std::ostringstream text;

  if (o.kind == "bool") {
    BoolMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (keep(rng)) m.set(i, j);
    write_matrix(text, m);
  } else if (o.kind == "extint" || o.kind == "duplicates" || o.kind == "capacity") {
    const bool capacity = o.kind == "capacity";
    ExtInt fill = capacity ? ExtInt::neg_inf() : parse_ext(o.fill);
    if (fill.is_finite()) throw UsageError("--fill must be inf or -inf");
    // Duplicate-heavy instances draw from three adjacent values only.
    std::uniform_int_distribution<std::int64_t> few(o.lo, std::min(o.hi, o.lo + 2));
    ExtMatrix m(n, n, fill);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (capacity && i == j) continue;
        if (keep(rng)) m(i, j) = o.kind == "duplicates" ? few(rng) : value(rng);
      }
    write_matrix(text, m, fill);
  } else {
    throw UsageError("unknown --kind '" + o.kind + "'");
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << text.str();
}

void add_common(CLI::App* sub, Options& o, bool many) {
  if (many) {
    sub->add_option("--a", o.a, "A-side matrix file (repeat for a family)")->required();
    sub->add_option("--b", o.b, "B-side matrix file (repeat for a family)")->required();
  } else {
    sub->add_option("--a", o.a, "A matrix file")->required()->expected(1);
    sub->add_option("--b", o.b, "B matrix file")->expected(1);
  }
  sub->add_option("--engine", o.engine, "quantum-sim, classical or brute")
      ->check(CLI::IsMember({"quantum-sim", "classical", "brute"}));
  sub->add_option("--seed", o.seed, "ledger seed");
  sub->add_flag("--verify", o.verify, "compare against the brute-force kernel");
  sub->add_option("--report", o.report, "write the JSON report here instead of stdout");
  sub->add_option("--out", o.out, "write the result matrix here");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semiring matrix products with a simulated quantum cost ledger", "semiprod"};
  app.require_subcommand(1);
  Options o;

  auto* dominance = app.add_subcommand("dominance", "existence dominance product");
  add_common(dominance, o, false);
  dominance->add_option("--t", o.t, "number of levels (0: automatic)");
  dominance->add_flag("--strict", o.strict, "use < instead of <=");

  auto* gendom = app.add_subcommand("gendom", "generalized dominance product over matrix families");
  add_common(gendom, o, true);
  gendom->add_option("--t", o.t, "number of levels (0: automatic)");
  gendom->add_flag("--strict", o.strict, "use < instead of <=");
  gendom->add_option("--order", o.order, "normal or decreasing")->check(CLI::IsMember({"normal", "decreasing"}));

  auto* maxmin = app.add_subcommand("maxmin", "(max,min) product");
  add_common(maxmin, o, false);
  maxmin->add_option("--g", o.g, "row block size (0: automatic)");
  maxmin->add_option("--t", o.t, "levels of the dominance step (0: automatic)");

  auto* bottleneck = app.add_subcommand("apbp", "all-pairs bottleneck paths");
  add_common(bottleneck, o, false);
  bottleneck->add_option("--g", o.g, "row block size (0: automatic)");
  bottleneck->add_option("--t", o.t, "levels of the dominance step (0: automatic)");

  auto* distmsb = app.add_subcommand("distmsb", "leading bits of the distance product");
  add_common(distmsb, o, false);
  distmsb->add_option("--bits", o.bits, "number of leading bits")->check(CLI::Range(1u, 62u));
  distmsb->add_option("--scale", o.scale, "power-of-two scale W (0: automatic)");
  distmsb->add_option("--t", o.t, "number of levels (0: automatic)");

  auto* boolmul = app.add_subcommand("boolmul", "sparse Boolean product");
  add_common(boolmul, o, false);
  boolmul->add_option("--l1", o.l1, "heavy-row parameter for A");
  boolmul->add_option("--l2", o.l2, "heavy inner-index parameter");
  boolmul->add_option("--l3", o.l3, "heavy-column parameter for B");

  auto* exponents = app.add_subcommand("exponents", "table of complexity exponents");
  exponents->add_option("--omega", o.omega, "square multiplication exponent");
  exponents->add_option("--alpha", o.alpha, "rectangular threshold exponent");
  exponents->add_option("--report", o.report, "write the JSON here instead of stdout");

  auto* gen = app.add_subcommand("gen", "write a seeded random instance");
  gen->add_option("--kind", o.kind, "extint, bool, capacity or duplicates");
  gen->add_option("--n", o.size, "dimension");
  gen->add_option("--density", o.density, "probability of a present entry");
  gen->add_option("--lo", o.lo, "smallest value");
  gen->add_option("--hi", o.hi, "largest value");
  gen->add_option("--fill", o.fill, "absent value for extint: inf or -inf");
  gen->add_option("--seed", o.seed, "generator seed");
  gen->add_option("--out", o.out, "output file")->required();

  std::vector<std::string> argv_store{"semiprod"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    json report;
    bool mismatch = false;
    auto finish = [&](const Report& r) {
      report = report_json(r);
      mismatch = r.verify_requested && !r.verified;
    };
    if (*dominance) {
      finish(do_dominance(o));
    } else if (*gendom) {
      finish(do_gendom(o));
    } else if (*maxmin) {
      finish(do_maxmin(o));
    } else if (*bottleneck) {
      finish(do_apbp(o));
    } else if (*distmsb) {
      finish(do_distmsb(o));
    } else if (*boolmul) {
      finish(do_boolmul(o));
    } else if (*exponents) {
      report = do_exponents(o);
    } else {
      do_gen(o);
      return 0;
    }

    const std::string text = report.dump(2) + "\n";
    if (o.report.empty()) {
      out << text;
    } else {
      std::ofstream f(o.report);
      if (!f) throw UsageError("cannot write '" + o.report + "'");
      f << text;
    }
    if (mismatch) {
      err << "verification failed: result differs from the brute-force kernel\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace semiprod::cli
