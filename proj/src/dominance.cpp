#include "semiprod/dominance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "semiprod/exponents.hpp"

namespace semiprod {

std::string_view to_string(LexOrder o) { return o == LexOrder::Normal ? "normal" : "decreasing"; }

LexOrder lex_order_from_string(std::string_view s) {
  if (s == "normal") return LexOrder::Normal;
  if (s == "decreasing") return LexOrder::Decreasing;
  throw std::invalid_argument("unknown order '" + std::string(s) + "'");
}

bool lex_less(LexPair a, LexPair b, LexOrder order) {
  if (a == b || b.none()) return false;
  if (a.none()) return true;
  const auto ka = std::tie(a.x, a.y);
  const auto kb = std::tie(b.x, b.y);
  return order == LexOrder::Normal ? ka < kb : kb < ka;
}

LexPair lex_max(LexPair a, LexPair b, LexOrder order) { return lex_less(a, b, order) ? b : a; }

std::size_t LexMatrix::count_nonzero() const {
  return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](LexPair p) { return !p.none(); }));
}

LexMatrix lex_max(const LexMatrix& a, const LexMatrix& b, LexOrder order) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("lex_max operands differ");
  LexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = lex_max(a(i, j), b(i, j), order);
  return c;
}

namespace {

void check_product_shape(const ExtMatrix& a, const ExtMatrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) {
    throw ShapeError("dominance operands must be square and equal-sized");
  }
}

std::size_t check_families(std::span<const ExtMatrix> as, std::span<const ExtMatrix> bs) {
  if (as.empty() || bs.empty()) throw ShapeError("matrix families must be nonempty");
  const std::size_t n = as.front().rows();
  auto ok = [n](const ExtMatrix& m) { return m.rows() == n && m.cols() == n; };
  if (!std::all_of(as.begin(), as.end(), ok) || !std::all_of(bs.begin(), bs.end(), ok)) {
    throw ShapeError("all matrices in a family must be n x n with the same n");
  }
  return n;
}

bool cell_dominates(const ExtMatrix& a, const ExtMatrix& b, std::size_t i, std::size_t j, bool strict) {
  const std::size_t n = a.cols();
  for (std::size_t k = 0; k < n; ++k) {
    const ExtInt& l = a(i, k);
    const ExtInt& r = b(k, j);
    if (a_present(l) && b_present(r) && dominated(l, r, strict)) return true;
  }
  return false;
}

void dominance_row(const ExtMatrix& a, const ExtMatrix& b, bool strict, std::size_t i, BoolMatrix& c) {
  for (std::size_t j = 0; j < b.cols(); ++j)
    if (cell_dominates(a, b, i, j, strict)) c.set(i, j);
}

// Pairs (x, y), 0-based, from the largest to the smallest under `order`.
std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_descending(std::size_t u, std::size_t v, LexOrder order) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(u * v);
  for (std::size_t x = 0; x < u; ++x)
    for (std::size_t y = 0; y < v; ++y) out.emplace_back(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y));
  if (order == LexOrder::Normal) std::reverse(out.begin(), out.end());
  return out;
}

std::string phase_name(const std::string& prefix, const char* base) { return prefix + base; }

}  // namespace

BoolMatrix dominance_brute(const ExtMatrix& a, const ExtMatrix& b, bool strict) {
  check_product_shape(a, b);
  BoolMatrix c(a.rows(), b.cols());
  // Each row owns its words, so row-parallel writes never race.
  parallel_rows(a.rows(), 64, [&](std::size_t i) { dominance_row(a, b, strict, i, c); });
  return c;
}

namespace serial {
BoolMatrix dominance_brute(const ExtMatrix& a, const ExtMatrix& b, bool strict) {
  check_product_shape(a, b);
  BoolMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) dominance_row(a, b, strict, i, c);
  return c;
}
}  // namespace serial

LexMatrix generalized_dominance_brute(std::span<const ExtMatrix> as, std::span<const ExtMatrix> bs, LexOrder order,
                                      bool strict) {
  const std::size_t n = check_families(as, bs);
  const auto pairs = pairs_descending(as.size(), bs.size(), order);
  LexMatrix c(n, n);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) if (rows >= 32)
  for (std::int64_t si = 0; si < rows; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [x, y] : pairs) {
        if (cell_dominates(as[x], bs[y], i, j, strict)) {
          c(i, j) = LexPair{x + 1, y + 1};
          break;
        }
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// LevelPartition
// ---------------------------------------------------------------------------

LevelPartition build_level_partition(std::span<const ExtMatrix> as, std::span<const ExtMatrix> bs, std::size_t t,
                                     bool strict, CostLedger* ledger, const std::string& phase) {
  const std::size_t n = check_families(as, bs);
  LevelPartition lp;
  lp.n_ = n;
  lp.strict_ = strict;
  lp.as_.assign(as.begin(), as.end());
  lp.bs_.assign(bs.begin(), bs.end());

  std::uint64_t m1 = 0;
  for (const auto& a : as) m1 += a.count_present(ExtInt::inf());
  for (const auto& b : bs) lp.m2_ += b.count_present(ExtInt::neg_inf());

  if (t == 0 || t > std::max<std::uint64_t>(1, m1)) {
    throw RangeError("t = " + std::to_string(t) + " outside [1, " + std::to_string(std::max<std::uint64_t>(1, m1)) +
                     "]");
  }
  if (m1 == 0 || lp.m2_ == 0) return lp;

  lp.t_ = t;
  lp.sorted_.reserve(m1);
  for (std::size_t x = 0; x < as.size(); ++x)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (a_present(as[x](i, k))) {
          lp.sorted_.push_back(LevelEntry{as[x](i, k), static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(i),
                                          static_cast<std::uint32_t>(k)});
        }
  std::sort(lp.sorted_.begin(), lp.sorted_.end(), [](const LevelEntry& l, const LevelEntry& r) {
    return std::tie(l.value, l.x, l.i, l.k) < std::tie(r.value, r.x, r.i, r.k);
  });

  lp.begin_.resize(t + 1);
  for (std::size_t r = 0; r <= t; ++r) lp.begin_[r] = static_cast<std::size_t>(r * m1 / t);

  lp.a_part_.assign(as.size(), std::vector<std::int32_t>(n * n, LevelPartition::kNone));
  for (std::size_t r = 0; r < t; ++r)
    for (const auto& e : lp.part(r)) lp.a_part_[e.x][e.i * n + e.k] = static_cast<std::int32_t>(r);

  // Level r owns the B values in [min, max) (or (min, max] when strict). The
  // windows are disjoint, so only the last level whose min sits below the
  // value can hold it.
  std::vector<ExtInt> mins(t);
  for (std::size_t r = 0; r < t; ++r) mins[r] = lp.part_min(r);
  lp.b_window_.assign(bs.size(), std::vector<std::int32_t>(n * n, LevelPartition::kNone));
  for (std::size_t y = 0; y < bs.size(); ++y) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        const ExtInt& b = bs[y](k, j);
        if (!b_present(b)) continue;
        const auto it = std::partition_point(mins.begin(), mins.end(),
                                             [&](const ExtInt& lo) { return dominated(lo, b, strict); });
        if (it == mins.begin()) continue;
        const auto r = static_cast<std::size_t>(it - mins.begin()) - 1;
        if (!dominated(lp.part_max(r), b, strict)) lp.b_window_[y][k * n + j] = static_cast<std::int32_t>(r);
      }
    }
  }

  if (ledger != nullptr) ledger->charge_classical(phase, n * n * t * (as.size() + bs.size()));
  return lp;
}

bool LevelPartition::b_clears(std::size_t y, std::size_t r, std::size_t k, std::size_t j) const {
  const ExtInt& b = bs_[y](k, j);
  return b_present(b) && dominated(part_max(r), b, strict_);
}

ExtMatrix LevelPartition::a_level(std::size_t x, std::size_t r) const {
  ExtMatrix m(n_, n_, ExtInt::inf());
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k)
      if (a_part(x, i, k) == static_cast<std::int32_t>(r)) m(i, k) = as_[x](i, k);
  return m;
}

BoolMatrix LevelPartition::a_level_bits(std::size_t x, std::size_t r) const {
  BoolMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k)
      if (a_part(x, i, k) == static_cast<std::int32_t>(r)) m.set(i, k);
  return m;
}

ExtMatrix LevelPartition::b_level(std::size_t y, std::size_t r) const {
  ExtMatrix m(n_, n_, ExtInt::neg_inf());
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t j = 0; j < n_; ++j)
      if (b_window(y, k, j) == static_cast<std::int32_t>(r)) m(k, j) = bs_[y](k, j);
  return m;
}

BoolMatrix LevelPartition::b_clear_bits(std::size_t y, std::size_t r) const {
  BoolMatrix m(n_, n_);
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t j = 0; j < n_; ++j)
      if (b_clears(y, r, k, j)) m.set(k, j);
  return m;
}

BoolMatrix LevelPartition::stacked_a_bits() const {
  BoolMatrix m(n_ * u(), n_ * t_);
  for (std::size_t r = 0; r < t_; ++r)
    for (const auto& e : part(r)) m.set(e.x * n_ + e.i, r * n_ + e.k);
  return m;
}

BoolMatrix LevelPartition::stacked_b_clear() const {
  BoolMatrix m(n_ * t_, n_ * v());
  // Level maxima are nondecreasing, so the levels a value clears form a prefix.
  for (std::size_t y = 0; y < v(); ++y) {
    for (std::size_t k = 0; k < n_; ++k) {
      for (std::size_t j = 0; j < n_; ++j) {
        const ExtInt& b = bs_[y](k, j);
        if (!b_present(b)) continue;
        for (std::size_t r = 0; r < t_ && dominated(part_max(r), b, strict_); ++r) m.set(r * n_ + k, y * n_ + j);
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Column balancing
// ---------------------------------------------------------------------------

BalancedBundle column_balance(const LevelPartition& lp, RhoNumbering numbering, CostLedger* ledger,
                              const std::string& phase) {
  BalancedBundle bb;
  bb.lp_ = &lp;
  if (lp.empty()) return bb;

  const std::size_t n = lp.n();
  const std::size_t t = lp.t();
  const std::size_t u = lp.u();
  bb.chunk_ = std::max<std::uint64_t>(1, (lp.m1() + n * t - 1) / (n * t));
  const std::uint64_t chunk = bb.chunk_;

  bb.tables_.resize(t);
  bb.tilde_.resize(u * t);
  std::uint64_t work = 0;

  for (std::size_t r = 0; r < t; ++r) {
    const auto level = lp.part(r);
    // Entries of the level grouped by column, each group still in sorted order.
    std::vector<std::uint32_t> col_count(n + 1, 0);
    for (const auto& e : level) ++col_count[e.k + 1];
    std::partial_sum(col_count.begin(), col_count.end(), col_count.begin());
    std::vector<std::uint32_t> by_col(level.size());
    {
      auto fill = col_count;
      for (std::uint32_t idx = 0; idx < level.size(); ++idx) by_col[fill[level[idx].k]++] = idx;
    }

    LevelTables& tab = bb.tables_[r];
    tab.chunk = chunk;
    tab.col_begin.assign(n + 1, 0);
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t cnt = col_count[k + 1] - col_count[k];
      tab.col_begin[k + 1] = tab.col_begin[k] + static_cast<std::uint32_t>((cnt + chunk - 1) / chunk);
    }
    const std::uint32_t p = tab.col_begin[n];
    if (p > 2 * n) throw std::logic_error("column balancing produced more than 2n columns");
    tab.chunk_max.resize(p);
    tab.chunk_size.assign(p, 0);
    tab.rho.resize(p);
    tab.rho_inv_col.resize(p);
    tab.rho_inv_q.resize(p);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::uint32_t q = 0; q < tab.parts_in(k); ++q) {
        const std::uint32_t c = tab.col_begin[k] + q;
        const std::uint32_t col = numbering == RhoNumbering::Forward ? c : p - 1 - c;
        tab.rho[c] = col;
        tab.rho_inv_col[col] = static_cast<std::uint32_t>(k);
        tab.rho_inv_q[col] = q;
      }
    }

    // Per (x, balanced column) counts, then rows and values in ascending row.
    std::vector<std::vector<std::uint32_t>> per_x_count(u, std::vector<std::uint32_t>(2 * n + 1, 0));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::uint32_t s = col_count[k]; s < col_count[k + 1]; ++s) {
        const auto& e = level[by_col[s]];
        const std::uint32_t q = (s - col_count[k]) / static_cast<std::uint32_t>(chunk);
        const std::uint32_t c = tab.col_begin[k] + q;
        tab.chunk_max[c] = e.value;
        ++tab.chunk_size[c];
        ++per_x_count[e.x][tab.rho[c] + 1];
      }
    }
    for (std::size_t x = 0; x < u; ++x) {
      BalancedColumns& cols = bb.tilde_[x * t + r];
      cols.begin.resize(2 * n + 1);
      std::partial_sum(per_x_count[x].begin(), per_x_count[x].end(), cols.begin.begin());
      cols.row.resize(cols.begin.back());
      cols.value.resize(cols.begin.back());
    }
    std::vector<std::vector<std::uint32_t>> cursor(u);
    for (std::size_t x = 0; x < u; ++x) cursor[x].assign(bb.tilde_[x * t + r].begin.begin(), bb.tilde_[x * t + r].begin.end() - 1);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::uint32_t s = col_count[k]; s < col_count[k + 1]; ++s) {
        const auto& e = level[by_col[s]];
        const std::uint32_t c = tab.col_begin[k] + (s - col_count[k]) / static_cast<std::uint32_t>(chunk);
        BalancedColumns& cols = bb.tilde_[e.x * t + r];
        const std::uint32_t pos = cursor[e.x][tab.rho[c]]++;
        cols.row[pos] = e.i;
        cols.value[pos] = e.value;
      }
    }
    for (std::size_t x = 0; x < u; ++x) {
      BalancedColumns& cols = bb.tilde_[x * t + r];
      std::vector<std::pair<std::uint32_t, ExtInt>> tmp;
      for (std::size_t col = 0; col < 2 * n; ++col) {
        if (cols.size_of(col) < 2) continue;
        tmp.clear();
        for (std::uint32_t pos = cols.begin[col]; pos < cols.begin[col + 1]; ++pos)
          tmp.emplace_back(cols.row[pos], cols.value[pos]);
        std::sort(tmp.begin(), tmp.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        for (std::uint32_t off = 0; off < tmp.size(); ++off) {
          cols.row[cols.begin[col] + off] = tmp[off].first;
          cols.value[cols.begin[col] + off] = tmp[off].second;
        }
      }
    }
    work += level.size() + 2 * n;
  }

  bb.b_entries_.resize(lp.v());
  for (std::size_t y = 0; y < lp.v(); ++y) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::int32_t r = lp.b_window(y, k, j);
        if (r == LevelPartition::kNone) continue;
        BEntry e;
        e.r = static_cast<std::uint32_t>(r);
        e.k = static_cast<std::uint32_t>(k);
        e.j = static_cast<std::uint32_t>(j);
        e.value = lp.b(y)(k, j);
        if (const auto q = bb.first_open_part(e.r, k, e.value)) {
          const LevelTables& tab = bb.tables_[e.r];
          e.column = tab.rho[tab.col_begin[k] + *q];
        }
        bb.b_entries_[y].push_back(e);
      }
    }
    work += n * n;
  }

  if (ledger != nullptr) ledger->charge_classical(phase, work);
  return bb;
}

std::optional<std::uint32_t> BalancedBundle::first_open_part(std::size_t r, std::size_t k, const ExtInt& value) const {
  const LevelTables& tab = tables_[r];
  const auto first = tab.chunk_max.begin() + tab.col_begin[k];
  const auto last = tab.chunk_max.begin() + tab.col_begin[k + 1];
  const bool strict = lp_->strict();
  const auto it = std::partition_point(first, last, [&](const ExtInt& mx) { return dominated(mx, value, strict); });
  if (it == last) return std::nullopt;
  return static_cast<std::uint32_t>(it - first);
}

ExtMatrix BalancedBundle::balanced_a(std::size_t x, std::size_t r) const {
  const std::size_t n = this->n();
  ExtMatrix m(n, 2 * n, ExtInt::inf());
  const BalancedColumns& cols = columns(x, r);
  for (std::size_t col = 0; col < 2 * n; ++col)
    for (std::uint32_t pos = cols.begin[col]; pos < cols.begin[col + 1]; ++pos) m(cols.row[pos], col) = cols.value[pos];
  return m;
}

BoolMatrix BalancedBundle::balanced_a_bits(std::size_t x, std::size_t r) const {
  const std::size_t n = this->n();
  BoolMatrix m(n, 2 * n);
  const BalancedColumns& cols = columns(x, r);
  for (std::size_t col = 0; col < 2 * n; ++col)
    for (std::uint32_t pos = cols.begin[col]; pos < cols.begin[col + 1]; ++pos) m.set(cols.row[pos], col);
  return m;
}

BoolMatrix BalancedBundle::balanced_b_bits(std::size_t y, std::size_t r) const {
  const std::size_t n = this->n();
  BoolMatrix m(2 * n, n);
  const LevelTables& tab = tables_[r];
  for (const auto& e : b_entries_[y]) {
    if (e.r != r) continue;
    const std::uint32_t open = e.column < 0 ? tab.parts_in(e.k) : tab.rho_inv_q[static_cast<std::size_t>(e.column)];
    for (std::uint32_t q = 0; q < open; ++q) m.set(tab.rho[tab.col_begin[e.k] + q], e.j);
  }
  return m;
}

BoolMatrix BalancedBundle::stacked_a_hat() const {
  const std::size_t n = this->n();
  BoolMatrix m(n * u(), 2 * n * t());
  for (std::size_t x = 0; x < u(); ++x) {
    for (std::size_t r = 0; r < t(); ++r) {
      const BalancedColumns& cols = columns(x, r);
      for (std::size_t col = 0; col < 2 * n; ++col)
        for (std::uint32_t pos = cols.begin[col]; pos < cols.begin[col + 1]; ++pos)
          m.set(x * n + cols.row[pos], r * 2 * n + col);
    }
  }
  return m;
}

BoolMatrix BalancedBundle::stacked_b_hat() const {
  const std::size_t n = this->n();
  BoolMatrix m(2 * n * t(), n * v());
  for (std::size_t y = 0; y < v(); ++y) {
    for (const auto& e : b_entries_[y]) {
      const LevelTables& tab = tables_[e.r];
      const std::uint32_t open = e.column < 0 ? tab.parts_in(e.k) : tab.rho_inv_q[static_cast<std::size_t>(e.column)];
      for (std::uint32_t q = 0; q < open; ++q) m.set(e.r * 2 * n + tab.rho[tab.col_begin[e.k] + q], y * n + e.j);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// C1, D, C2
// ---------------------------------------------------------------------------

namespace {

// Per cell, the largest (x, y) whose block of `prod` (nu x nv) has the bit set.
LexMatrix best_block_pair(const BoolMatrix& prod, std::size_t n, std::size_t u, std::size_t v, LexOrder order) {
  const auto pairs = pairs_descending(u, v, order);
  LexMatrix c(n, n);
  const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (rows >= 128)
  for (std::int64_t si = 0; si < rows; ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [x, y] : pairs) {
        if (prod.get(x * n + i, y * n + j)) {
          c(i, j) = LexPair{x + 1, y + 1};
          break;
        }
      }
    }
  }
  return c;
}

}  // namespace

LexMatrix compute_C1(const LevelPartition& lp, LexOrder order, CostLedger* ledger, const std::string& phase) {
  const std::size_t n = lp.n();
  if (lp.empty()) return LexMatrix(n, n);
  const BoolMatrix prod = bool_multiply(lp.stacked_a_bits(), lp.stacked_b_clear());
  if (ledger != nullptr) {
    const auto dn = static_cast<double>(n);
    ledger->charge_model_multiply(phase, model_multiply_cost(dn * static_cast<double>(lp.u()),
                                                             dn * static_cast<double>(lp.t()),
                                                             dn * static_cast<double>(lp.v())));
    ledger->charge_classical(phase, n * n * lp.u() * lp.v());
  }
  return best_block_pair(prod, n, lp.u(), lp.v(), order);
}

namespace {

struct GammaItem {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  ExtInt a;
  ExtInt b;
};

}  // namespace

LexMatrix compute_D(const BalancedBundle& bb, LexOrder order, Engine engine, CostLedger& ledger,
                    const std::string& phase, const BoolMatrix* struck) {
  const LevelPartition& lp = bb.partition();
  const std::size_t n = lp.n();
  LexMatrix d(n, n);
  if (lp.empty()) return d;

  BoolMatrix settled = struck != nullptr ? *struck : BoolMatrix(n, n);
  if (settled.rows() != n || settled.cols() != n) throw ShapeError("struck-out set must be n x n");
  const bool strict = lp.strict();

  std::vector<std::uint64_t> prefix;
  for (const auto& [x, y] : pairs_descending(lp.u(), lp.v(), order)) {
    const auto& entries = bb.b_entries(y);
    prefix.assign(entries.size() + 1, 0);
    for (std::size_t s = 0; s < entries.size(); ++s) {
      const auto& e = entries[s];
      const std::uint64_t size =
          e.column < 0 ? 0 : bb.columns(x, e.r).size_of(static_cast<std::size_t>(e.column));
      prefix[s + 1] = prefix[s] + size;
    }
    ledger.charge_classical(phase, entries.size());

    const SearchSpace space{prefix.back(), [&, x = x](std::uint64_t z) {
                              const auto s = static_cast<std::size_t>(
                                  std::upper_bound(prefix.begin(), prefix.end(), z) - prefix.begin() - 1);
                              const auto& e = entries[s];
                              const BalancedColumns& cols = bb.columns(x, e.r);
                              const std::uint32_t pos =
                                  cols.begin[static_cast<std::size_t>(e.column)] + static_cast<std::uint32_t>(z - prefix[s]);
                              return GammaItem{cols.row[pos], e.j, cols.value[pos], e.value};
                            }};
    const LexPair here{x + 1, y + 1};
    enumerate(
        engine, space,
        [&](const GammaItem& g) { return !settled.get(g.i, g.j) && dominated(g.a, g.b, strict); }, ledger, phase,
        [&](const GammaItem& g) {
          d(g.i, g.j) = here;
          settled.set(g.i, g.j);
        });
  }
  return d;
}

LexMatrix compute_C2(const BalancedBundle& bb, const LexMatrix& d, LexOrder order, CostLedger* ledger,
                     const std::string& phase) {
  const LevelPartition& lp = bb.partition();
  const std::size_t n = lp.n();
  if (d.rows() != n || d.cols() != n) throw ShapeError("D does not match the bundle size");
  if (lp.empty()) return d;
  const BoolMatrix prod = bool_multiply(bb.stacked_a_hat(), bb.stacked_b_hat());
  if (ledger != nullptr) {
    const auto dn = static_cast<double>(n);
    ledger->charge_model_multiply(phase, model_multiply_cost(dn * static_cast<double>(lp.u()),
                                                             2.0 * dn * static_cast<double>(lp.t()),
                                                             dn * static_cast<double>(lp.v())));
    ledger->charge_classical(phase, n * n * lp.u() * lp.v());
  }
  return lex_max(d, best_block_pair(prod, n, lp.u(), lp.v(), order), order);
}

LexMatrix generalized_dominance(std::span<const ExtMatrix> as, std::span<const ExtMatrix> bs,
                                const DominanceOptions& opts, CostLedger& ledger) {
  const std::string& pre = opts.phase_prefix;
  const LevelPartition lp =
      build_level_partition(as, bs, opts.t, opts.strict, &ledger, phase_name(pre, "partition"));
  if (lp.empty()) return LexMatrix(lp.n(), lp.n());
  const LexMatrix c1 = compute_C1(lp, opts.order, &ledger, phase_name(pre, "C1-multiply"));
  const BalancedBundle bb = column_balance(lp, RhoNumbering::Forward, &ledger, phase_name(pre, "balance"));
  const LexMatrix d = compute_D(bb, opts.order, opts.engine, ledger, phase_name(pre, "D-search"));
  const LexMatrix c2 = compute_C2(bb, d, opts.order, &ledger, phase_name(pre, "C2-multiply"));
  return lex_max(c1, c2, opts.order);
}

std::size_t auto_dominance_t(std::size_t n, std::uint64_t m1, std::uint64_t m2) {
  if (n == 0 || m1 == 0 || m2 == 0) return 1;
  ParameterRequest req;
  req.task = ParameterTask::DominanceT;
  req.n = n;
  req.m1 = m1;
  req.m2 = m2;
  return static_cast<std::size_t>(select_parameters(req).t);
}

BoolMatrix dominance_product(const ExtMatrix& a, const ExtMatrix& b, bool strict, Engine engine, CostLedger& ledger,
                             std::size_t t, const std::string& phase_prefix) {
  check_product_shape(a, b);
  const std::size_t n = a.rows();
  if (t == 0) t = auto_dominance_t(n, a.count_present(ExtInt::inf()), b.count_present(ExtInt::neg_inf()));
  DominanceOptions opts;
  opts.t = t;
  opts.strict = strict;
  opts.engine = engine;
  opts.phase_prefix = phase_prefix;
  const LexMatrix c = generalized_dominance(std::span(&a, 1), std::span(&b, 1), opts, ledger);
  BoolMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!c(i, j).none()) out.set(i, j);
  return out;
}

}  // namespace semiprod
