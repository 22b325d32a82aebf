#pragma once

// Existence dominance products.
//
// For families {A^(1..u)} and {B^(1..v)} of n x n matrices the generalized
// product reports, per cell (i,j), the largest pair (x,y) (under a chosen
// lexicographic order) such that A^(x)[i,k] <= B^(y)[k,j] for some k, or
// (0,0) if there is none. With u = v = 1 this is the ordinary dominance
// product.
//
// The fast algorithm splits the sorted A entries into t levels. Cells decided
// by comparing against whole levels go through one stacked Boolean product
// (C1). Cells decided inside a level go through column balancing, a search
// over the candidate set of every (x,y) pair (D), and a second stacked
// product (C2). The answer is max(C1, C2).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semiprod/core.hpp"
#include "semiprod/qsim.hpp"

namespace semiprod {

enum class LexOrder { Normal, Decreasing };

std::string_view to_string(LexOrder o);
LexOrder lex_order_from_string(std::string_view s);

// (x, y) with 1-based coordinates; (0,0) means "no pair".
struct LexPair {
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  bool none() const { return x == 0; }
  bool operator==(const LexPair&) const = default;
};

// a strictly precedes b. (0,0) precedes every other pair in both orders.
bool lex_less(LexPair a, LexPair b, LexOrder order);
LexPair lex_max(LexPair a, LexPair b, LexOrder order);

class LexMatrix {
 public:
  LexMatrix() = default;
  LexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  LexPair& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LexPair& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t count_nonzero() const;
  bool operator==(const LexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<LexPair> data_;
};

// Entrywise max under `order`. Shapes must agree.
LexMatrix lex_max(const LexMatrix& a, const LexMatrix& b, LexOrder order);

// An A-side entry takes part unless it is +inf; a B-side entry unless -inf.
inline bool a_present(const ExtInt& a) { return !a.is_pos_inf(); }
inline bool b_present(const ExtInt& b) { return !b.is_neg_inf(); }

BoolMatrix dominance_brute(const ExtMatrix& a, const ExtMatrix& b, bool strict);
LexMatrix generalized_dominance_brute(std::span<const ExtMatrix> as, std::span<const ExtMatrix> bs,
                                      LexOrder order, bool strict);

namespace serial {
BoolMatrix dominance_brute(const ExtMatrix& a, const ExtMatrix& b, bool strict);
}  // namespace serial

// ---------------------------------------------------------------------------
// Level partition
// ---------------------------------------------------------------------------

struct LevelEntry {
  ExtInt value;
  std::uint32_t x = 0;  // 0-based matrix index
  std::uint32_t i = 0;
  std::uint32_t k = 0;
};

class LevelPartition {
 public:
  static constexpr std::int32_t kNone = -1;

  std::size_t n() const { return n_; }
  std::size_t u() const { return as_.size(); }
  std::size_t v() const { return bs_.size(); }
  std::size_t t() const { return t_; }
  bool strict() const { return strict_; }
  std::uint64_t m1() const { return sorted_.size(); }
  std::uint64_t m2() const { return m2_; }
  bool empty() const { return t_ == 0; }

  const std::vector<LevelEntry>& sorted() const { return sorted_; }
  std::span<const LevelEntry> part(std::size_t r) const {
    return {sorted_.data() + begin_[r], begin_[r + 1] - begin_[r]};
  }
  const ExtInt& part_min(std::size_t r) const { return sorted_[begin_[r]].value; }
  const ExtInt& part_max(std::size_t r) const { return sorted_[begin_[r + 1] - 1].value; }

  const ExtMatrix& a(std::size_t x) const { return as_[x]; }
  const ExtMatrix& b(std::size_t y) const { return bs_[y]; }

  // Part of A^(x)[i,k], or kNone when the entry is absent.
  std::int32_t a_part(std::size_t x, std::size_t i, std::size_t k) const { return a_part_[x][i * n_ + k]; }
  // The level whose value window holds B^(y)[k,j], or kNone.
  std::int32_t b_window(std::size_t y, std::size_t k, std::size_t j) const { return b_window_[y][k * n_ + j]; }
  // B^(y)[k,j] clears every entry of level r.
  bool b_clears(std::size_t y, std::size_t r, std::size_t k, std::size_t j) const;

  ExtMatrix a_level(std::size_t x, std::size_t r) const;
  BoolMatrix a_level_bits(std::size_t x, std::size_t r) const;
  ExtMatrix b_level(std::size_t y, std::size_t r) const;
  BoolMatrix b_clear_bits(std::size_t y, std::size_t r) const;

  // nu x nt: block (x, r) is a_level_bits(x, r).
  BoolMatrix stacked_a_bits() const;
  // nt x nv: block (r, y) is b_clear_bits(y, r).
  BoolMatrix stacked_b_clear() const;

 private:
  friend LevelPartition build_level_partition(std::span<const ExtMatrix>, std::span<const ExtMatrix>, std::size_t,
                                              bool, CostLedger*, const std::string&);

  std::size_t n_ = 0;
  std::size_t t_ = 0;
  bool strict_ = false;
  std::uint64_t m2_ = 0;
  std::vector<ExtMatrix> as_;
  std::vector<ExtMatrix> bs_;
  std::vector<LevelEntry> sorted_;
  std::vector<std::size_t> begin_;  // t + 1 offsets into sorted_
  std::vector<std::vector<std::int32_t>> a_part_;
  std::vector<std::vector<std::int32_t>> b_window_;
};

// t must lie in [1, max(1, m1)]. With m1 = 0 or m2 = 0 the partition is
// empty (t() == 0).
LevelPartition build_level_partition(std::span<const ExtMatrix> as, std::span<const ExtMatrix> bs, std::size_t t,
                                     bool strict, CostLedger* ledger = nullptr, const std::string& phase = "partition");

// ---------------------------------------------------------------------------
// Column balancing
// ---------------------------------------------------------------------------

enum class RhoNumbering { Forward, Reversed };

struct LevelTables {
  std::uint64_t chunk = 1;               // entries per sub-column
  std::vector<std::uint32_t> col_begin;  // n + 1 offsets into the chunk arrays
  std::vector<ExtInt> chunk_max;         // max of T_{r,k}^q
  std::vector<std::uint32_t> chunk_size;
  std::vector<std::uint32_t> rho;  // balanced column of chunk (k, q)
  std::vector<std::uint32_t> rho_inv_col;
  std::vector<std::uint32_t> rho_inv_q;

  std::uint32_t columns() const { return static_cast<std::uint32_t>(rho_inv_col.size()); }
  std::uint32_t parts_in(std::size_t k) const { return col_begin[k + 1] - col_begin[k]; }
};

// Column-major list of the entries of one balanced n x 2n matrix.
struct BalancedColumns {
  std::vector<std::uint32_t> begin;  // 2n + 1 offsets
  std::vector<std::uint32_t> row;
  std::vector<ExtInt> value;

  std::uint32_t size_of(std::size_t col) const { return begin[col + 1] - begin[col]; }
};

struct BEntry {
  std::uint32_t r = 0;
  std::uint32_t k = 0;
  std::uint32_t j = 0;
  ExtInt value;
  // Balanced column of the first sub-column B does not clear; -1 if B clears
  // the whole column.
  std::int64_t column = -1;
};

class BalancedBundle {
 public:
  const LevelPartition& partition() const { return *lp_; }
  std::size_t n() const { return lp_->n(); }
  std::size_t u() const { return lp_->u(); }
  std::size_t v() const { return lp_->v(); }
  std::size_t t() const { return lp_->t(); }
  std::uint64_t chunk() const { return chunk_; }

  const LevelTables& tables(std::size_t r) const { return tables_[r]; }
  const BalancedColumns& columns(std::size_t x, std::size_t r) const { return tilde_[x * t() + r]; }
  const std::vector<BEntry>& b_entries(std::size_t y) const { return b_entries_[y]; }

  // 0-based q of the first sub-column of (r, k) whose max is not cleared by
  // `value`, or nullopt.
  std::optional<std::uint32_t> first_open_part(std::size_t r, std::size_t k, const ExtInt& value) const;

  ExtMatrix balanced_a(std::size_t x, std::size_t r) const;
  BoolMatrix balanced_a_bits(std::size_t x, std::size_t r) const;
  BoolMatrix balanced_b_bits(std::size_t y, std::size_t r) const;

  // nu x 2nt and 2nt x nv assemblies of the hat matrices.
  BoolMatrix stacked_a_hat() const;
  BoolMatrix stacked_b_hat() const;

 private:
  friend BalancedBundle column_balance(const LevelPartition&, RhoNumbering, CostLedger*, const std::string&);

  const LevelPartition* lp_ = nullptr;
  std::uint64_t chunk_ = 1;
  std::vector<LevelTables> tables_;
  std::vector<BalancedColumns> tilde_;
  std::vector<std::vector<BEntry>> b_entries_;
};

// The bundle keeps a reference to `lp`, which must outlive it.
BalancedBundle column_balance(const LevelPartition& lp, RhoNumbering numbering = RhoNumbering::Forward,
                              CostLedger* ledger = nullptr, const std::string& phase = "balance");

// ---------------------------------------------------------------------------
// Phases and drivers
// ---------------------------------------------------------------------------

LexMatrix compute_C1(const LevelPartition& lp, LexOrder order, CostLedger* ledger = nullptr,
                     const std::string& phase = "C1-multiply");

// `struck` marks cells already settled; they stay (0,0) in the result.
LexMatrix compute_D(const BalancedBundle& bb, LexOrder order, Engine engine, CostLedger& ledger,
                    const std::string& phase = "D-search", const BoolMatrix* struck = nullptr);

LexMatrix compute_C2(const BalancedBundle& bb, const LexMatrix& d, LexOrder order, CostLedger* ledger = nullptr,
                     const std::string& phase = "C2-multiply");

struct DominanceOptions {
  std::size_t t = 1;
  LexOrder order = LexOrder::Normal;
  bool strict = false;
  Engine engine = Engine::QuantumSim;
  std::string phase_prefix;
};

LexMatrix generalized_dominance(std::span<const ExtMatrix> as, std::span<const ExtMatrix> bs,
                                const DominanceOptions& opts, CostLedger& ledger);

// t == 0 picks t from the sizes.
BoolMatrix dominance_product(const ExtMatrix& a, const ExtMatrix& b, bool strict, Engine engine, CostLedger& ledger,
                             std::size_t t = 0, const std::string& phase_prefix = "");

std::size_t auto_dominance_t(std::size_t n, std::uint64_t m1, std::uint64_t m2);

}  // namespace semiprod
