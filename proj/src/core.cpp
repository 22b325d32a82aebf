#include "semiprod/core.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace semiprod {

std::string ExtInt::to_string() const {
  switch (kind_) {
    case Kind::PosInf:
      return "inf";
    case Kind::NegInf:
      return "-inf";
    case Kind::Finite:
      break;
  }
  return std::to_string(value_);
}

ExtInt add(ExtInt a, ExtInt b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw std::domain_error("add: inf + -inf is undefined");
  }
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtInt::inf();
  if (a.is_neg_inf() || b.is_neg_inf()) return ExtInt::neg_inf();
  std::int64_t r = 0;
  if (__builtin_add_overflow(a.value(), b.value(), &r)) {
    throw OverflowError(a.to_string() + " + " + b.to_string());
  }
  return r;
}

ExtInt negate(ExtInt a) {
  if (a.is_pos_inf()) return ExtInt::neg_inf();
  if (a.is_neg_inf()) return ExtInt::inf();
  std::int64_t r = 0;
  if (__builtin_sub_overflow(std::int64_t{0}, a.value(), &r)) throw OverflowError("-" + a.to_string());
  return r;
}

ExtInt sub_finite(ExtInt a, std::int64_t b) {
  if (!a.is_finite()) return a;
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a.value(), b, &r)) {
    throw OverflowError(a.to_string() + " - " + std::to_string(b));
  }
  return r;
}

ExtMatrix ExtMatrix::from_rows(const std::vector<std::vector<ExtInt>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  ExtMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ShapeError("ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::size_t ExtMatrix::count_present(ExtInt absent) const {
  std::size_t c = 0;
  for (const auto& e : data_) c += (e != absent);
  return c;
}

std::size_t ExtMatrix::count_finite() const {
  std::size_t c = 0;
  for (const auto& e : data_) c += e.is_finite();
  return c;
}

BoolMatrix BoolMatrix::identity(std::size_t n) {
  BoolMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BoolMatrix BoolMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  BoolMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw ShapeError("ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j] != 0);
  }
  return m;
}

std::size_t BoolMatrix::row_count(std::size_t i) const {
  std::size_t c = 0;
  for (Word w : row_words(i)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BoolMatrix::count() const {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

namespace {

void check_product_shape(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("bool_multiply inner dimensions " + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()));
  }
}

// OR row k of b into `out` for every set bit k of row i of a.
inline void accumulate_row(const BoolMatrix& a, const BoolMatrix& b, std::size_t i,
                           std::span<BoolMatrix::Word> out) {
  const auto arow = a.row_words(i);
  for (std::size_t w = 0; w < arow.size(); ++w) {
    BoolMatrix::Word bits = arow[w];
    while (bits != 0) {
      const std::size_t k = w * BoolMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      const auto brow = b.row_words(k);
      for (std::size_t q = 0; q < out.size(); ++q) out[q] |= brow[q];
    }
  }
}

}  // namespace

BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  check_product_shape(a, b);
  BoolMatrix c(a.rows(), b.cols());
  const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(dynamic, 16) if (rows >= 128)
  for (std::int64_t i = 0; i < rows; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    accumulate_row(a, b, ui, c.row_words(ui));
  }
  return c;
}

namespace serial {
BoolMatrix bool_multiply(const BoolMatrix& a, const BoolMatrix& b) {
  check_product_shape(a, b);
  BoolMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) accumulate_row(a, b, i, c.row_words(i));
  return c;
}
}  // namespace serial

BoolMatrix entrywise_or(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix c = a;
  or_into(c, b);
  return c;
}

void or_into(BoolMatrix& acc, const BoolMatrix& b) {
  if (acc.rows() != b.rows() || acc.cols() != b.cols()) throw ShapeError("entrywise_or operands differ");
  for (std::size_t i = 0; i < acc.rows(); ++i) {
    auto dst = acc.row_words(i);
    const auto src = b.row_words(i);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
  }
}

BoolMatrix transpose(const BoolMatrix& a) {
  BoolMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto row = a.row_words(i);
    for (std::size_t w = 0; w < row.size(); ++w) {
      BoolMatrix::Word bits = row[w];
      while (bits != 0) {
        const std::size_t j = w * BoolMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        t.set(j, i);
      }
    }
  }
  return t;
}

ExtMatrix transpose(const ExtMatrix& a) {
  ExtMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

BoolMatrix stack_blocks(const BlockGrid& g) {
  if (g.blocks.size() != g.block_rows * g.block_cols) throw ShapeError("block grid size mismatch");
  std::vector<std::size_t> row_heights(g.block_rows, 0);
  std::vector<std::size_t> col_widths(g.block_cols, 0);
  for (std::size_t p = 0; p < g.block_rows; ++p) {
    for (std::size_t q = 0; q < g.block_cols; ++q) {
      const auto& b = g.at(p, q);
      if (q == 0) row_heights[p] = b.rows();
      if (p == 0) col_widths[q] = b.cols();
      if (b.rows() != row_heights[p] || b.cols() != col_widths[q]) {
        throw ShapeError("nonuniform block at (" + std::to_string(p) + "," + std::to_string(q) + ")");
      }
    }
  }
  std::size_t total_rows = 0;
  std::size_t total_cols = 0;
  for (auto h : row_heights) total_rows += h;
  for (auto w : col_widths) total_cols += w;

  BoolMatrix out(total_rows, total_cols);
  std::size_t r0 = 0;
  for (std::size_t p = 0; p < g.block_rows; ++p) {
    std::size_t c0 = 0;
    for (std::size_t q = 0; q < g.block_cols; ++q) {
      const auto& b = g.at(p, q);
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
          if (b.get(i, j)) out.set(r0 + i, c0 + j);
      c0 += col_widths[q];
    }
    r0 += row_heights[p];
  }
  return out;
}

BoolMatrix sub_block(const BoolMatrix& a, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  if (r0 + rows > a.rows() || c0 + cols > a.cols()) throw ShapeError("sub_block window out of bounds");
  BoolMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (a.get(r0 + i, c0 + j)) out.set(i, j);
  return out;
}

}  // namespace semiprod
