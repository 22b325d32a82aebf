#pragma once

// Output-sensitive Boolean product of sparse matrices.
//
// With three size parameters l1, l2, l3 the inner indices and the outer
// rows/columns are split into heavy and light classes:
//   S = { k : row k of B has >= m2/l2 ones }      (S' the rest)
//   T = { i : row i of A has >= m1/l1 ones }      (T' the rest)
//   U = { j : column j of B has >= m2/l3 ones }   (U' the rest)
// and A*B is the OR of four products:
//   (1) A restricted to T x S  times  B restricted to S x U   (compressed dense)
//   (2) A restricted to columns S'  times  B restricted to rows S'
//   (3) A restricted to rows T'  times  B
//   (4) A  times  B restricted to columns U'
// Terms (2)-(4) are found by enumeration with a strike-out set, so their cost
// scales with the number of output ones rather than with n^2.

#include <cstdint>
#include <string>
#include <vector>

#include "semiprod/core.hpp"
#include "semiprod/exponents.hpp"
#include "semiprod/qsim.hpp"

namespace semiprod {

struct DegreeProfile {
  std::vector<std::uint64_t> a_row, a_col, b_row, b_col;
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;

  static DegreeProfile of(const BoolMatrix& a, const BoolMatrix& b);
};

struct IndexSets {
  // heavy_*[k] is true for members of S, T, U; false for S', T', U'.
  std::vector<bool> heavy_inner;  // S
  std::vector<bool> heavy_rows;   // T
  std::vector<bool> heavy_cols;   // U
  std::vector<std::uint32_t> inner, rows, cols;  // sorted members of S, T, U

  std::size_t n() const { return heavy_inner.size(); }
};

// Membership uses exact cross-multiplication: k is heavy iff count > 0 and
// count * l >= m. When m = 0 every index is light.
IndexSets classify_indices(const BoolMatrix& a, const BoolMatrix& b, std::uint64_t l1, std::uint64_t l2,
                           std::uint64_t l3, CostLedger* ledger = nullptr, const std::string& phase = "classify");

struct SparseTermStats {
  std::uint64_t output_ones = 0;      // lambda
  std::uint64_t term2_space = 0;      // N
  std::uint64_t term2_found = 0;      // lambda'
  std::uint64_t term3_witnesses = 0;  // sum_k (column k of A_{T'}) * (row k of B)
  std::uint64_t term4_witnesses = 0;  // sum_k (column k of A) * (row k of B^{U'})
  std::uint64_t term3_found = 0;
  std::uint64_t term4_found = 0;
};

struct SparseProduct {
  BoolMatrix product;
  SparseRegime regime = SparseRegime::Square;
  std::uint64_t l1 = 0, l2 = 0, l3 = 0;
  IndexSets sets;  // empty for the sparse-expand and dense regimes
  SparseTermStats stats;
};

// Throws RangeError for parameters outside [1, max(1, m)] and std::logic_error
// if a size or witness invariant of the decomposition fails.
SparseProduct sparse_bool_product(const BoolMatrix& a, const BoolMatrix& b, std::uint64_t l1, std::uint64_t l2,
                                  std::uint64_t l3, Engine engine, CostLedger& ledger,
                                  const std::string& phase_prefix = "");

// Picks the regime from sqrt(m1 m2) against n, n^(1+alpha/2), n^(omega-1/2);
// boundary values go to the lower regime.
SparseProduct auto_sparse_bool_product(const BoolMatrix& a, const BoolMatrix& b, Engine engine, CostLedger& ledger,
                                       const std::string& phase_prefix = "", const OmegaParams& p = {});

// Enumerates the ones of the sparser operand and ORs the matching rows
// (or columns) of the other one.
BoolMatrix sparse_expand_product(const BoolMatrix& a, const BoolMatrix& b, Engine engine, CostLedger& ledger,
                                 const std::string& phase_prefix = "");

}  // namespace semiprod
