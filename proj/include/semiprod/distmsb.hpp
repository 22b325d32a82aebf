#pragma once

// Leading bits of the distance (min-plus) product.
//
// With W a power of two above every finite entry of C = A (min,+) B, cell
// (i,j) falls in bucket d - 1 where d is the smallest integer with
// C[i,j] < d * W / 2^ell. Writing d = d1 * 2^(ell - h) + d2 with h =
// ceil(ell / 2), the test C[i,j] < d * W / 2^ell becomes a strict dominance
// between A - d1 * W / 2^h and -B + d2 * W / 2^ell, so one generalized
// dominance product (decreasing order) finds d for all cells at once.

#include <cstdint>
#include <string>
#include <vector>

#include "semiprod/core.hpp"
#include "semiprod/qsim.hpp"

namespace semiprod {

enum class MsbTag : std::uint8_t { Bits, Negative, Infinite };

class MsbResult {
 public:
  MsbResult() = default;
  MsbResult(std::size_t rows, std::size_t cols, unsigned ell, std::int64_t scale)
      : rows_(rows), cols_(cols), ell_(ell), scale_(scale), tag_(rows * cols, MsbTag::Infinite), bucket_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned ell() const { return ell_; }
  std::int64_t scale() const { return scale_; }

  MsbTag tag(std::size_t i, std::size_t j) const { return tag_[i * cols_ + j]; }
  // floor(C[i,j] * 2^ell / W); meaningful for MsbTag::Bits only.
  std::uint64_t bucket(std::size_t i, std::size_t j) const { return bucket_[i * cols_ + j]; }
  // "010..." (most significant first), "neg" or "inf".
  std::string cell_string(std::size_t i, std::size_t j) const;

  void set_bits(std::size_t i, std::size_t j, std::uint64_t bucket) {
    tag_[i * cols_ + j] = MsbTag::Bits;
    bucket_[i * cols_ + j] = bucket;
  }
  void set_tag(std::size_t i, std::size_t j, MsbTag t) {
    tag_[i * cols_ + j] = t;
    bucket_[i * cols_ + j] = 0;
  }

  bool operator==(const MsbResult&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  unsigned ell_ = 0;
  std::int64_t scale_ = 0;
  std::vector<MsbTag> tag_;
  std::vector<std::uint64_t> bucket_;
};

// Inputs range over the integers and +inf; -inf is rejected.
ExtMatrix distance_brute(const ExtMatrix& a, const ExtMatrix& b);
namespace serial {
ExtMatrix distance_brute(const ExtMatrix& a, const ExtMatrix& b);
}

MsbResult msb_bits_oracle(const ExtMatrix& c, std::int64_t scale, unsigned ell);

// Smallest power of two above max(A) + max(B) (finite entries) and no
// smaller than 2^ell.
std::int64_t distance_scale(const ExtMatrix& a, const ExtMatrix& b, unsigned ell);

// a - d1 * W / 2^ceil(ell/2) and -b + d2 * W / 2^ell.
ExtInt shift_row_side(const ExtInt& a, std::uint64_t d1, std::int64_t scale, unsigned ell);
ExtInt shift_col_side(const ExtInt& b, std::uint64_t d2, std::int64_t scale, unsigned ell);

struct MsbOptions {
  unsigned ell = 1;
  std::int64_t scale = 0;  // W; 0 derives it from the inputs
  std::size_t t = 0;       // 0: from the sizes
  Engine engine = Engine::QuantumSim;
  std::string phase_prefix;
};

MsbResult distance_msb(const ExtMatrix& a, const ExtMatrix& b, const MsbOptions& opts, CostLedger& ledger);

}  // namespace semiprod
