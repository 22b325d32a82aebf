#pragma once

// Extended-integer and bit-packed Boolean matrices plus the kernels every
// product algorithm in this library builds on.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace semiprod {

struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& what) : std::invalid_argument("shape: " + what) {}
};

struct RangeError : std::out_of_range {
  explicit RangeError(const std::string& what) : std::out_of_range("range: " + what) {}
};

struct OverflowError : std::overflow_error {
  explicit OverflowError(const std::string& what) : std::overflow_error("overflow: " + what) {}
};

// ---------------------------------------------------------------------------
// ExtInt: a 64-bit integer extended with -inf and +inf.
// The infinities are tags, not sentinel integers, so finite arithmetic never
// collides with them.
// ---------------------------------------------------------------------------
class ExtInt {
 public:
  enum class Kind : std::uint8_t { NegInf = 0, Finite = 1, PosInf = 2 };

  constexpr ExtInt() = default;
  constexpr ExtInt(std::int64_t v) : value_(v), kind_(Kind::Finite) {}  // NOLINT(google-explicit-constructor)

  static constexpr ExtInt inf() { return ExtInt(Kind::PosInf); }
  static constexpr ExtInt neg_inf() { return ExtInt(Kind::NegInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  // Only meaningful for finite values.
  constexpr std::int64_t value() const { return value_; }

  constexpr std::strong_ordering operator<=>(const ExtInt& o) const {
    if (kind_ != o.kind_) return kind_ <=> o.kind_;
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const ExtInt& o) const { return (*this <=> o) == 0; }

  std::string to_string() const;

 private:
  constexpr explicit ExtInt(Kind k) : kind_(k) {}

  std::int64_t value_ = 0;
  Kind kind_ = Kind::Finite;
};

// Min-plus addition: x + inf = inf. Adding -inf to +inf has no meaning in a
// distance product and raises std::domain_error; finite overflow raises
// OverflowError.
ExtInt add(ExtInt a, ExtInt b);
ExtInt negate(ExtInt a);
// a - b for finite b, with overflow detection.
ExtInt sub_finite(ExtInt a, std::int64_t b);

// `a <= b`, or `a < b` when strict. The one comparison dominance products use.
constexpr bool dominated(const ExtInt& a, const ExtInt& b, bool strict) {
  return strict ? a < b : a <= b;
}

// ---------------------------------------------------------------------------
// ExtMatrix
// ---------------------------------------------------------------------------
class ExtMatrix {
 public:
  ExtMatrix() = default;
  ExtMatrix(std::size_t rows, std::size_t cols, ExtInt fill = ExtInt::inf())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static ExtMatrix from_rows(const std::vector<std::vector<ExtInt>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  ExtInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ExtInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const ExtInt> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<const ExtInt> data() const { return data_; }

  // Number of entries different from `absent` (+inf for A-side matrices,
  // -inf for B-side matrices).
  std::size_t count_present(ExtInt absent) const;
  std::size_t count_finite() const;

  bool operator==(const ExtMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExtInt> data_;
};

// ---------------------------------------------------------------------------
// BoolMatrix: row-major, 64 bits per word, padding bits always zero.
// ---------------------------------------------------------------------------
class BoolMatrix {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + kWordBits - 1) / kWordBits), words_(rows * stride_, 0) {}

  static BoolMatrix identity(std::size_t n);
  static BoolMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t i, std::size_t j) const {
    return (words_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool v = true) {
    Word& w = words_[i * stride_ + j / kWordBits];
    const Word mask = Word{1} << (j % kWordBits);
    w = v ? (w | mask) : (w & ~mask);
  }

  std::span<const Word> row_words(std::size_t i) const { return {words_.data() + i * stride_, stride_}; }
  std::span<Word> row_words(std::size_t i) { return {words_.data() + i * stride_, stride_}; }

  std::size_t row_count(std::size_t i) const;
  std::size_t count() const;

  bool operator==(const BoolMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> words_;
};

// Dense grid of equally shaped-per-row/column Boolean blocks.
struct BlockGrid {
  std::size_t block_rows = 0;
  std::size_t block_cols = 0;
  std::vector<BoolMatrix> blocks;  // row-major, block_rows * block_cols

  BoolMatrix& at(std::size_t p, std::size_t q) { return blocks[p * block_cols + q]; }
  const BoolMatrix& at(std::size_t p, std::size_t q) const { return blocks[p * block_cols + q]; }
};

// C[i,j] = OR_k a[i,k] & b[k,j]. Row-parallel word-OR accumulation.
BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b);

BoolMatrix entrywise_or(const BoolMatrix& a, const BoolMatrix& b);
void or_into(BoolMatrix& acc, const BoolMatrix& b);

BoolMatrix transpose(const BoolMatrix& a);
ExtMatrix transpose(const ExtMatrix& a);

BoolMatrix stack_blocks(const BlockGrid& g);

// Copy of the rows x cols window starting at (r0, c0).
BoolMatrix sub_block(const BoolMatrix& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols);

// Runs body(i) for i in [0, rows), in parallel once rows reaches
// `min_parallel`. The first exception thrown by any row is rethrown after the
// loop; rows after a failure may or may not run.
template <class Body>
void parallel_rows(std::size_t rows, std::size_t min_parallel, Body&& body) {
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(dynamic, 4) if (rows >= min_parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(semiprod_parallel_rows)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace serial {
// Single-threaded reference for bool_multiply, kept for cross-checking and
// benchmarking against the parallel kernel.
BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b);
}  // namespace serial

}  // namespace semiprod
