#pragma once

// Leftslice products, the (max,min)-product and all-pairs bottleneck paths.
//
// leftslice(A, B)[i,j] = max { A[i,k] : A[i,k] <= B[k,j] }, or -inf.
//
// The fast version sorts each row of A, cuts it into s = ceil(n/g) runs of g
// entries and asks one generalized dominance product for the highest run that
// still has a witness. A maximum search inside that run gives the value.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semiprod/core.hpp"
#include "semiprod/qsim.hpp"

namespace semiprod {

class RowPartition {
 public:
  struct Item {
    ExtInt value;
    std::uint32_t k = 0;
  };

  RowPartition(const ExtMatrix& a, std::size_t g);

  std::size_t n() const { return n_; }
  std::size_t block_size() const { return g_; }
  std::size_t parts() const { return s_; }

  // Entries of row i in part r (0-based), ascending by (value, column).
  std::span<const Item> part(std::size_t i, std::size_t r) const;
  // Row entries, all parts, ascending.
  const std::vector<Item>& row(std::size_t i) const { return rows_[i]; }

  // A restricted to part r: entries outside the part become +inf.
  ExtMatrix part_matrix(std::size_t r) const;

 private:
  std::size_t n_;
  std::size_t g_;
  std::size_t s_;
  std::vector<std::vector<Item>> rows_;
};

ExtMatrix leftslice_brute(const ExtMatrix& a, const ExtMatrix& b);
ExtMatrix maxmin_brute(const ExtMatrix& a, const ExtMatrix& b);

namespace serial {
ExtMatrix leftslice_brute(const ExtMatrix& a, const ExtMatrix& b);
ExtMatrix maxmin_brute(const ExtMatrix& a, const ExtMatrix& b);
}  // namespace serial

struct MaxminOptions {
  std::size_t g = 0;  // 0: from the sizes
  std::size_t t = 0;  // level count of the inner dominance product; 0: from the sizes
  Engine engine = Engine::QuantumSim;
  std::string phase_prefix;
};

std::size_t auto_block_size(std::size_t n);

ExtMatrix leftslice(const ExtMatrix& a, const ExtMatrix& b, const MaxminOptions& opts, CostLedger& ledger);
ExtMatrix maxmin_product(const ExtMatrix& a, const ExtMatrix& b, const MaxminOptions& opts, CostLedger& ledger);

// Bottleneck capacities over all paths. cap[i,j] = -inf marks a missing edge;
// the diagonal is treated as +inf.
ExtMatrix apbp(const ExtMatrix& cap, const MaxminOptions& opts, CostLedger& ledger);

// Widest paths by relaxing through one intermediate vertex at a time; the
// reference apbp is checked against.
ExtMatrix bottleneck_brute(const ExtMatrix& cap);

// Squarings apbp performs for an n-vertex graph.
std::size_t apbp_rounds(std::size_t n);

}  // namespace semiprod
