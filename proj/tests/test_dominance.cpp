#include "semiprod/dominance.hpp"

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace semiprod;

namespace {

const ExtInt kInf = ExtInt::inf();
const ExtInt kNegInf = ExtInt::neg_inf();

struct Family {
  std::vector<ExtMatrix> as;
  std::vector<ExtMatrix> bs;
};

// Entries from a small range so duplicates, and ties across level
// boundaries, are common.
Family random_family(std::mt19937_64& rng, std::size_t n, std::size_t u, std::size_t v) {
  oracle::ValueMix amix{-5, 5, 0.2, 0.05};
  oracle::ValueMix bmix{-5, 5, 0.2, 0.05};
  Family f;
  for (std::size_t x = 0; x < u; ++x) f.as.push_back(oracle::random_ext(rng, n, kInf, amix));
  for (std::size_t y = 0; y < v; ++y) f.bs.push_back(oracle::random_ext(rng, n, kNegInf, bmix));
  return f;
}

BoolMatrix ext_bits(const ExtMatrix& m, ExtInt absent) {
  BoolMatrix b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != absent) b.set(i, j);
  return b;
}

LexMatrix as_lex(const BoolMatrix& m) {
  LexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) out(i, j) = LexPair{1, 1};
  return out;
}

// The inside-level half of the split, computed by brute force per level.
LexMatrix inside_level_oracle(const LevelPartition& lp, LexOrder order) {
  const std::size_t n = lp.n();
  LexMatrix c(n, n);
  for (std::size_t x = 0; x < lp.u(); ++x)
    for (std::size_t y = 0; y < lp.v(); ++y) {
      BoolMatrix hit(n, n);
      for (std::size_t r = 0; r < lp.t(); ++r)
        or_into(hit, oracle::dominance(lp.a_level(x, r), lp.b_level(y, r), lp.strict()));
      const LexPair here{static_cast<std::uint32_t>(x + 1), static_cast<std::uint32_t>(y + 1)};
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (hit.get(i, j)) c(i, j) = lex_max(c(i, j), here, order);
    }
  return c;
}

}  // namespace

TEST_CASE("lexicographic orders") {
  const LexPair none{};
  const LexPair a{1, 2};
  const LexPair b{2, 1};
  CHECK(lex_less(a, b, LexOrder::Normal));
  CHECK(lex_less(b, a, LexOrder::Decreasing));
  CHECK(lex_less(none, a, LexOrder::Normal));
  CHECK(lex_less(none, a, LexOrder::Decreasing));
  CHECK_FALSE(lex_less(a, none, LexOrder::Decreasing));
  CHECK_FALSE(lex_less(a, a, LexOrder::Normal));
  CHECK(lex_max(LexPair{1, 1}, LexPair{1, 3}, LexOrder::Decreasing) == LexPair{1, 1});
}

TEST_CASE("dominance_brute on hand examples") {
  const auto one = ExtMatrix::from_rows({{1}});
  CHECK(dominance_brute(one, one, false) == BoolMatrix::from_rows({{1}}));
  CHECK(dominance_brute(one, one, true) == BoolMatrix::from_rows({{0}}));

  const auto a = ExtMatrix::from_rows({{3, kInf}, {5, 1}});
  const auto b = ExtMatrix::from_rows({{2, 4}, {kNegInf, 0}});
  const auto expect = oracle::dominance(a, b, false);
  CHECK(expect == BoolMatrix::from_rows({{0, 1}, {0, 0}}));
  CHECK(dominance_brute(a, b, false) == expect);

  CHECK_THROWS_AS(dominance_brute(ExtMatrix(2, 2), ExtMatrix(3, 3), false), ShapeError);
}

TEST_CASE("parallel and serial brute dominance agree") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    const auto a = oracle::random_ext(rng, 100, kInf, {-20, 20, 0.1});
    const auto b = oracle::random_ext(rng, 100, kNegInf, {-20, 20, 0.1});
    CHECK(dominance_brute(a, b, rep % 2 == 0) == serial::dominance_brute(a, b, rep % 2 == 0));
  }
}

TEST_CASE("generalized brute") {
  SUBCASE("single pair reduces to the plain product") {
    const std::vector<ExtMatrix> as{ExtMatrix::from_rows({{0}})};
    const std::vector<ExtMatrix> yes{ExtMatrix::from_rows({{0}})};
    const std::vector<ExtMatrix> no{ExtMatrix::from_rows({{-1}})};
    CHECK(generalized_dominance_brute(as, yes, LexOrder::Normal, false)(0, 0) == LexPair{1, 1});
    CHECK(generalized_dominance_brute(as, no, LexOrder::Normal, false)(0, 0) == LexPair{});
  }
  SUBCASE("all-inf A family gives no pairs") {
    const std::vector<ExtMatrix> as(2, ExtMatrix(3, 3, kInf));
    const std::vector<ExtMatrix> bs(2, ExtMatrix(3, 3, 7));
    CHECK(generalized_dominance_brute(as, bs, LexOrder::Normal, false).count_nonzero() == 0);
  }
  SUBCASE("random 2x2 families match the per-pair loop") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      auto f = random_family(rng, 6, 2, 2);
      for (auto order : {LexOrder::Normal, LexOrder::Decreasing})
        for (bool strict : {false, true})
          CHECK(generalized_dominance_brute(f.as, f.bs, order, strict) == oracle::generalized(f.as, f.bs, order, strict));
    }
  }
}

TEST_CASE("level partition") {
  std::mt19937_64 rng(21);
  SUBCASE("one level holds everything") {
    auto f = random_family(rng, 5, 1, 1);
    const auto m1 = oracle::count_present_a(f.as);
    const auto lp = build_level_partition(f.as, f.bs, 1, false);
    REQUIRE(lp.t() == 1);
    CHECK(lp.part(0).size() == m1);
    const ExtInt top = lp.part_max(0);
    const BoolMatrix clear = lp.b_clear_bits(0, 0);
    for (std::size_t k = 0; k < 5; ++k)
      for (std::size_t j = 0; j < 5; ++j) {
        const ExtInt b = f.bs[0](k, j);
        CHECK(clear.get(k, j) == (!b.is_neg_inf() && top <= b));
      }
  }
  SUBCASE("t = m1 gives singleton levels") {
    auto f = random_family(rng, 4, 2, 1);
    const auto m1 = oracle::count_present_a(f.as);
    const auto lp = build_level_partition(f.as, f.bs, m1, true);
    for (std::size_t r = 0; r < lp.t(); ++r) CHECK(lp.part(r).size() == 1);
  }
  SUBCASE("t outside [1, m1] is rejected") {
    auto f = random_family(rng, 3, 1, 1);
    const auto m1 = oracle::count_present_a(f.as);
    CHECK_THROWS_AS(build_level_partition(f.as, f.bs, 0, false), RangeError);
    CHECK_THROWS_AS(build_level_partition(f.as, f.bs, m1 + 1, false), RangeError);
  }
  SUBCASE("levels are sorted, contiguous and at most ceil(m1/t) long") {
    for (int rep = 0; rep < 30; ++rep) {
      auto f = random_family(rng, 6, 2, 2);
      const std::size_t m1 = oracle::count_present_a(f.as);
      if (m1 == 0) continue;
      for (std::size_t t : {std::size_t{1}, std::size_t{3}, m1}) {
        if (t > m1) continue;
        const auto lp = build_level_partition(f.as, f.bs, t, rep % 2 == 1);
        std::size_t total = 0;
        for (std::size_t r = 0; r < t; ++r) {
          CHECK(lp.part(r).size() >= 1);
          CHECK(lp.part(r).size() <= (m1 + t - 1) / t);
          total += lp.part(r).size();
          if (r + 1 < t) CHECK(lp.part_max(r) <= lp.part_min(r + 1));
        }
        CHECK(total == m1);
      }
    }
  }
  SUBCASE("the two halves of the split rebuild the product") {
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t n = 1 + rep % 10;
      auto f = random_family(rng, n, 1 + rep % 2, 1 + rep % 3);
      const std::size_t m1 = oracle::count_present_a(f.as);
      if (m1 == 0) continue;
      const std::size_t t = 1 + static_cast<std::size_t>(rng() % m1);
      const bool strict = rep % 4 >= 2;
      const auto lp = build_level_partition(f.as, f.bs, t, strict);
      if (lp.empty()) continue;
      for (std::size_t x = 0; x < lp.u(); ++x)
        for (std::size_t y = 0; y < lp.v(); ++y) {
          BoolMatrix rebuilt(n, n);
          for (std::size_t r = 0; r < t; ++r) {
            or_into(rebuilt, oracle::bool_product(lp.a_level_bits(x, r), lp.b_clear_bits(y, r)));
            or_into(rebuilt, oracle::dominance(lp.a_level(x, r), lp.b_level(y, r), strict));
          }
          CHECK(rebuilt == oracle::dominance(f.as[x], f.bs[y], strict));
        }
    }
  }
}

TEST_CASE("column balancing") {
  SUBCASE("one entry per column needs no splitting") {
    const auto a = ExtMatrix::from_rows({{4, kInf, kInf}, {kInf, kInf, 2}, {kInf, 9, kInf}});
    const std::vector<ExtMatrix> as{a};
    const std::vector<ExtMatrix> bs{ExtMatrix(3, 3, 0)};
    const auto lp = build_level_partition(as, bs, 1, false);
    const auto bb = column_balance(lp);
    CHECK(bb.chunk() == 1);
    for (std::size_t k = 0; k < 3; ++k) CHECK(bb.tables(0).parts_in(k) == 1);
    CHECK(ext_bits(bb.balanced_a(0, 0), kInf).count() == 3);
  }
  SUBCASE("a column with twice the chunk size splits in two") {
    // Four matrices with two entries each, all in column 0: m1 = 8, n = 2,
    // t = 1, so the chunk is 4 and column 0 holds exactly two chunks.
    std::vector<ExtMatrix> as;
    for (int x = 0; x < 4; ++x) as.push_back(ExtMatrix::from_rows({{x, kInf}, {x + 10, kInf}}));
    const std::vector<ExtMatrix> bs{ExtMatrix(2, 2, 0)};
    const auto lp = build_level_partition(as, bs, 1, false);
    const auto bb = column_balance(lp);
    CHECK(bb.chunk() == 4);
    CHECK(bb.tables(0).parts_in(0) == 2);
    CHECK(bb.tables(0).parts_in(1) == 0);
  }
  SUBCASE("random bundles satisfy the sparsity bound and rebuild every entry") {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 60; ++rep) {
      const std::size_t n = 2 + rep % 7;
      auto f = random_family(rng, n, 1 + rep % 4, 1 + rep % 2);
      const std::size_t m1 = oracle::count_present_a(f.as);
      if (m1 == 0) continue;
      const std::size_t t = 1 + static_cast<std::size_t>(rng() % std::min<std::size_t>(m1, 6));
      const auto lp = build_level_partition(f.as, f.bs, t, rep % 2 == 0);
      if (lp.empty()) continue;
      for (auto numbering : {RhoNumbering::Forward, RhoNumbering::Reversed}) {
        const auto bb = column_balance(lp, numbering);
        const std::uint64_t cap = (m1 + n * t - 1) / (n * t);
        for (std::size_t r = 0; r < t; ++r) {
          CHECK(bb.tables(r).columns() <= 2 * n);
          for (std::size_t col = 0; col < 2 * n; ++col) {
            std::uint64_t total = 0;
            for (std::size_t x = 0; x < lp.u(); ++x) total += bb.columns(x, r).size_of(col);
            CHECK(total <= cap);
          }
          for (std::size_t x = 0; x < lp.u(); ++x) {
            ExtMatrix rebuilt(n, n, kInf);
            const auto& cols = bb.columns(x, r);
            const auto& tab = bb.tables(r);
            for (std::size_t col = 0; col < 2 * n; ++col)
              for (std::uint32_t pos = cols.begin[col]; pos < cols.begin[col + 1]; ++pos) {
                const std::size_t k = tab.rho_inv_col[col];
                CHECK(rebuilt(cols.row[pos], k) == kInf);
                rebuilt(cols.row[pos], k) = cols.value[pos];
              }
            CHECK(rebuilt == lp.a_level(x, r));
            CHECK(ext_bits(bb.balanced_a(x, r), kInf) == bb.balanced_a_bits(x, r));
          }
        }
      }
    }
  }
}

TEST_CASE("C1") {
  SUBCASE("single level, single pair equals the clear-bit product") {
    std::mt19937_64 rng(41);
    auto f = random_family(rng, 6, 1, 1);
    const auto lp = build_level_partition(f.as, f.bs, 1, false);
    REQUIRE_FALSE(lp.empty());
    const auto c1 = compute_C1(lp, LexOrder::Normal);
    CHECK(c1 == as_lex(oracle::bool_product(lp.a_level_bits(0, 0), lp.b_clear_bits(0, 0))));
  }
  SUBCASE("B below every level sets nothing") {
    const std::vector<ExtMatrix> as{ExtMatrix::from_rows({{5, 6}, {7, 8}})};
    const std::vector<ExtMatrix> bs{ExtMatrix::from_rows({{1, 2}, {3, 4}})};
    const auto lp = build_level_partition(as, bs, 2, false);
    CHECK(compute_C1(lp, LexOrder::Normal).count_nonzero() == 0);
  }
  SUBCASE("never exceeds the full product") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 40; ++rep) {
      auto f = random_family(rng, 5, 3, 2);
      const std::size_t m1 = oracle::count_present_a(f.as);
      if (m1 == 0) continue;
      const auto lp = build_level_partition(f.as, f.bs, 1 + rng() % m1, rep % 2 == 0);
      if (lp.empty()) continue;
      const auto c1 = compute_C1(lp, LexOrder::Normal);
      const auto full = oracle::generalized(f.as, f.bs, LexOrder::Normal, lp.strict());
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK_FALSE(lex_less(full(i, j), c1(i, j), LexOrder::Normal));
    }
  }
}

TEST_CASE("D and C2") {
  SUBCASE("hand instance inside one sub-column") {
    // chunk = ceil(4 / 2) = 2, so column 0 is one sub-column {2, 5} with max 5.
    const std::vector<ExtMatrix> as{ExtMatrix::from_rows({{2, 7}, {5, 8}})};
    const std::vector<ExtMatrix> bs{ExtMatrix::from_rows({{3, kNegInf}, {kNegInf, kNegInf}})};
    const auto lp = build_level_partition(as, bs, 1, false);
    const auto bb = column_balance(lp);
    REQUIRE(bb.chunk() == 2);
    CostLedger ledger(1);
    const auto d = compute_D(bb, LexOrder::Normal, Engine::QuantumSim, ledger);
    CHECK(d(0, 0) == LexPair{1, 1});
    CHECK(d.count_nonzero() == 1);
  }
  SUBCASE("no candidates leaves D empty") {
    const std::vector<ExtMatrix> as{ExtMatrix::from_rows({{1, 1}, {1, 1}})};
    const std::vector<ExtMatrix> bs{ExtMatrix::from_rows({{9, 9}, {9, 9}})};
    const auto lp = build_level_partition(as, bs, 1, false);
    const auto bb = column_balance(lp);
    CostLedger ledger(1);
    CHECK(compute_D(bb, LexOrder::Normal, Engine::QuantumSim, ledger).count_nonzero() == 0);
  }
  SUBCASE("C2 takes D where the hat product is empty and the hat pair otherwise") {
    const std::vector<ExtMatrix> as(2, ExtMatrix::from_rows({{1}}));
    const std::vector<ExtMatrix> bs(2, ExtMatrix::from_rows({{0}}));
    const auto lp = build_level_partition(as, bs, 1, false);
    const auto bb = column_balance(lp);
    LexMatrix d(1, 1);
    CHECK(compute_C2(bb, d, LexOrder::Normal) == d);
    d(0, 0) = LexPair{1, 2};
    CHECK(compute_C2(bb, d, LexOrder::Normal)(0, 0) == LexPair{1, 2});
    CHECK_THROWS_AS(compute_C2(bb, LexMatrix(2, 2), LexOrder::Normal), ShapeError);

    // Level {1, 1, 9, 9} with chunk 2: B = 3 sits inside the level window
    // and clears the whole column-0 sub-column {1, 1}.
    const std::vector<ExtMatrix> as2(2, ExtMatrix::from_rows({{1, 9}, {kInf, kInf}}));
    const std::vector<ExtMatrix> bs2(2, ExtMatrix::from_rows({{3, kNegInf}, {kNegInf, kNegInf}}));
    const auto lp2 = build_level_partition(as2, bs2, 1, false);
    const auto bb2 = column_balance(lp2);
    REQUIRE(bb2.chunk() == 2);
    CHECK(compute_C2(bb2, LexMatrix(2, 2), LexOrder::Normal)(0, 0) == LexPair{2, 2});
  }
  SUBCASE("C2 equals the per-level brute force") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 80; ++rep) {
      const std::size_t n = 2 + rep % 6;
      auto f = random_family(rng, n, 1 + rep % 3, 1 + rep % 4);
      const std::size_t m1 = oracle::count_present_a(f.as);
      if (m1 == 0) continue;
      const auto lp = build_level_partition(f.as, f.bs, 1 + rng() % m1, rep % 2 == 0);
      if (lp.empty()) continue;
      const auto bb = column_balance(lp);
      for (auto order : {LexOrder::Normal, LexOrder::Decreasing}) {
        for (auto engine : {Engine::QuantumSim, Engine::Classical}) {
          CostLedger ledger(static_cast<std::uint64_t>(rep));
          const auto d = compute_D(bb, order, engine, ledger);
          CHECK(compute_C2(bb, d, order) == inside_level_oracle(lp, order));
        }
      }
    }
  }
  SUBCASE("D does not depend on the sub-column numbering") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 40; ++rep) {
      auto f = random_family(rng, 7, 2, 2);
      const std::size_t m1 = oracle::count_present_a(f.as);
      if (m1 == 0) continue;
      const auto lp = build_level_partition(f.as, f.bs, 1 + rng() % std::min<std::size_t>(m1, 4), false);
      if (lp.empty()) continue;
      CostLedger l1(3);
      CostLedger l2(3);
      const auto fwd = compute_D(column_balance(lp, RhoNumbering::Forward), LexOrder::Normal, Engine::QuantumSim, l1);
      const auto rev = compute_D(column_balance(lp, RhoNumbering::Reversed), LexOrder::Normal, Engine::QuantumSim, l2);
      CHECK(fwd == rev);
    }
  }
  SUBCASE("search charge shrinks as more cells are struck out") {
    std::mt19937_64 rng(59);
    auto f = random_family(rng, 10, 2, 2);
    const auto lp = build_level_partition(f.as, f.bs, 2, false);
    const auto bb = column_balance(lp);
    BoolMatrix struck(10, 10);
    std::uint64_t previous = UINT64_MAX;
    std::size_t found_total = 0;
    for (std::size_t step = 0; step <= 10; ++step) {
      CostLedger ledger(9);
      const auto d = compute_D(bb, LexOrder::Normal, Engine::QuantumSim, ledger, "D-search", &struck);
      const std::uint64_t charge = ledger.phases().at("D-search").quantum_steps;
      CHECK(charge <= previous);
      previous = charge;
      if (step == 0) {
        for (const auto& rec : ledger.log()) found_total += rec.solutions;
        CHECK(found_total <= 100);
      }
      for (std::size_t j = 0; j < 10; ++j) struck.set(step % 10, j);
    }
  }
}

TEST_CASE("generalized dominance matches the brute force") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 120; ++rep) {
    const std::size_t n = 1 + rep % 9;
    auto f = random_family(rng, n, 1 + rep % 4, 1 + (rep / 4) % 4);
    const std::size_t m1 = oracle::count_present_a(f.as);
    const std::size_t t = m1 == 0 ? 1 : 1 + static_cast<std::size_t>(rng() % m1);
    for (auto order : {LexOrder::Normal, LexOrder::Decreasing})
      for (bool strict : {false, true})
        for (auto engine : {Engine::QuantumSim, Engine::Classical}) {
          CostLedger ledger(static_cast<std::uint64_t>(rep));
          DominanceOptions opts{t, order, strict, engine, ""};
          CHECK(generalized_dominance(f.as, f.bs, opts, ledger) == oracle::generalized(f.as, f.bs, order, strict));
        }
  }
}

TEST_CASE("generalized dominance edge cases") {
  CostLedger ledger(0);
  SUBCASE("n = 1 zeros") {
    const std::vector<ExtMatrix> as{ExtMatrix::from_rows({{0}})};
    const std::vector<ExtMatrix> bs{ExtMatrix::from_rows({{0}})};
    CHECK(generalized_dominance(as, bs, {}, ledger)(0, 0) == LexPair{1, 1});
  }
  SUBCASE("the plain example re-encoded") {
    const auto a = ExtMatrix::from_rows({{3, kInf}, {5, 1}});
    const auto b = ExtMatrix::from_rows({{2, 4}, {kNegInf, 0}});
    const std::vector<ExtMatrix> as{a};
    const std::vector<ExtMatrix> bs{b};
    CHECK(generalized_dominance(as, bs, {}, ledger) == as_lex(oracle::dominance(a, b, false)));
  }
  SUBCASE("decreasing order picks the smallest firing pair") {
    std::mt19937_64 rng(67);
    for (int rep = 0; rep < 20; ++rep) {
      auto f = random_family(rng, 5, 3, 3);
      DominanceOptions opts;
      opts.order = LexOrder::Decreasing;
      const auto dec = generalized_dominance(f.as, f.bs, opts, ledger);
      for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
          LexPair smallest{};
          for (std::uint32_t x = 0; x < 3 && smallest.none(); ++x)
            for (std::uint32_t y = 0; y < 3 && smallest.none(); ++y)
              if (oracle::dominance(f.as[x], f.bs[y], false).get(i, j)) smallest = LexPair{x + 1, y + 1};
          CHECK(dec(i, j) == smallest);
        }
    }
  }
  SUBCASE("empty families short-circuit but still check t") {
    const std::vector<ExtMatrix> as{ExtMatrix(3, 3, kInf)};
    const std::vector<ExtMatrix> bs{ExtMatrix(3, 3, 0)};
    CHECK(generalized_dominance(as, bs, {}, ledger).count_nonzero() == 0);
    DominanceOptions bad;
    bad.t = 2;
    CHECK_THROWS_AS(generalized_dominance(as, bs, bad, ledger), RangeError);
  }
  SUBCASE("ledger phases") {
    std::mt19937_64 rng(71);
    auto f = random_family(rng, 6, 2, 2);
    CostLedger l(4);
    DominanceOptions opts;
    opts.t = 2;
    opts.phase_prefix = "gd/";
    generalized_dominance(f.as, f.bs, opts, l);
    for (const char* p : {"gd/partition", "gd/balance", "gd/C1-multiply", "gd/D-search", "gd/C2-multiply"})
      CHECK(l.phases().count(p) == 1);
    CHECK(l.phases().at("gd/C1-multiply").model_multiply_cost > 0.0);
  }
}

TEST_CASE("dominance_product") {
  CostLedger ledger(0);
  const ExtMatrix zeros(4, 4, 0);
  BoolMatrix ones(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) ones.set(i, j);
  CHECK(dominance_product(zeros, zeros, false, Engine::QuantumSim, ledger) == ones);
  CHECK(dominance_product(ExtMatrix(4, 4, kInf), zeros, false, Engine::QuantumSim, ledger).count() == 0);

  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 1 + rep % 20;
    const auto a = oracle::random_ext(rng, n, kInf, {-6, 6, 0.2});
    const auto b = oracle::random_ext(rng, n, kNegInf, {-6, 6, 0.2});
    const bool strict = rep % 3 == 0;
    const auto engine = rep % 2 == 0 ? Engine::QuantumSim : Engine::Classical;
    CHECK(dominance_product(a, b, strict, engine, ledger) == oracle::dominance(a, b, strict));
  }
}
