#include "semiprod/distmsb.hpp"

#include <algorithm>
#include <bit>

#include "semiprod/dominance.hpp"
#include "semiprod/exponents.hpp"

namespace semiprod {

std::string MsbResult::cell_string(std::size_t i, std::size_t j) const {
  switch (tag(i, j)) {
    case MsbTag::Negative:
      return "neg";
    case MsbTag::Infinite:
      return "inf";
    case MsbTag::Bits:
      break;
  }
  std::string s(ell_, '0');
  const std::uint64_t b = bucket(i, j);
  for (unsigned p = 0; p < ell_; ++p)
    if ((b >> (ell_ - 1 - p)) & 1u) s[p] = '1';
  return s;
}

namespace {

void check_inputs(const ExtMatrix& a, const ExtMatrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) throw ShapeError("operands must be square and equal-sized");
  auto no_neg_inf = [](const ExtMatrix& m) {
    return std::none_of(m.data().begin(), m.data().end(), [](const ExtInt& e) { return e.is_neg_inf(); });
  };
  if (!no_neg_inf(a) || !no_neg_inf(b)) throw RangeError("distance inputs may not contain -inf");
}

void distance_row(const ExtMatrix& a, const ExtMatrix& b, std::size_t i, ExtMatrix& c) {
  const std::size_t n = a.cols();
  for (std::size_t j = 0; j < n; ++j) {
    ExtInt best = ExtInt::inf();
    for (std::size_t k = 0; k < n; ++k) best = std::min(best, add(a(i, k), b(k, j)));
    c(i, j) = best;
  }
}

void check_scale(std::int64_t scale, unsigned ell) {
  if (ell == 0 || ell > 62) throw RangeError("ell must lie in [1, 62]");
  if (scale <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(scale))) {
    throw RangeError("W must be a positive power of two");
  }
  if (std::bit_width(static_cast<std::uint64_t>(scale)) - 1 < ell) {
    throw RangeError("ell exceeds log2(W)");
  }
}

std::int64_t finite_max(const ExtMatrix& m) {
  std::int64_t best = 0;
  bool any = false;
  for (const auto& e : m.data()) {
    if (!e.is_finite()) continue;
    best = any ? std::max(best, e.value()) : e.value();
    any = true;
  }
  return best;
}

}  // namespace

ExtMatrix distance_brute(const ExtMatrix& a, const ExtMatrix& b) {
  check_inputs(a, b);
  ExtMatrix c(a.rows(), a.rows());
  parallel_rows(a.rows(), 64, [&](std::size_t i) { distance_row(a, b, i, c); });
  return c;
}

namespace serial {
ExtMatrix distance_brute(const ExtMatrix& a, const ExtMatrix& b) {
  check_inputs(a, b);
  ExtMatrix c(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) distance_row(a, b, i, c);
  return c;
}
}  // namespace serial

MsbResult msb_bits_oracle(const ExtMatrix& c, std::int64_t scale, unsigned ell) {
  check_scale(scale, ell);
  const std::int64_t quantum = scale >> ell;
  MsbResult out(c.rows(), c.cols(), ell, scale);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    for (std::size_t j = 0; j < c.cols(); ++j) {
      const ExtInt& v = c(i, j);
      if (v.is_pos_inf()) continue;
      if (v.is_neg_inf() || v.value() < 0) {
        out.set_tag(i, j, MsbTag::Negative);
        continue;
      }
      if (v.value() >= scale) throw RangeError("entry " + v.to_string() + " is not below W = " + std::to_string(scale));
      out.set_bits(i, j, static_cast<std::uint64_t>(v.value() / quantum));
    }
  }
  return out;
}

std::int64_t distance_scale(const ExtMatrix& a, const ExtMatrix& b, unsigned ell) {
  if (ell == 0 || ell > 62) throw RangeError("ell must lie in [1, 62]");
  const ExtInt top = add(finite_max(a), finite_max(b));
  if (top.value() >= (std::int64_t{1} << 61)) throw OverflowError("entries too large for a 64-bit scale");
  std::int64_t w = 1;
  while (w <= top.value()) w <<= 1;
  return std::max(w, std::int64_t{1} << ell);
}

ExtInt shift_row_side(const ExtInt& a, std::uint64_t d1, std::int64_t scale, unsigned ell) {
  const unsigned high = (ell + 1) / 2;
  return sub_finite(a, static_cast<std::int64_t>(d1) * (scale >> high));
}

ExtInt shift_col_side(const ExtInt& b, std::uint64_t d2, std::int64_t scale, unsigned ell) {
  return add(negate(b), ExtInt(static_cast<std::int64_t>(d2) * (scale >> ell)));
}

MsbResult distance_msb(const ExtMatrix& a, const ExtMatrix& b, const MsbOptions& opts, CostLedger& ledger) {
  check_inputs(a, b);
  const unsigned ell = opts.ell;
  const std::int64_t scale = opts.scale == 0 ? distance_scale(a, b, ell) : opts.scale;
  check_scale(scale, ell);
  if (opts.scale != 0) {
    const ExtInt top = add(finite_max(a), finite_max(b));
    if (top.value() >= scale) throw RangeError("W must exceed max(A) + max(B)");
  }

  const std::size_t n = a.rows();
  const unsigned high = (ell + 1) / 2;
  const unsigned low = ell / 2;
  const std::size_t u = std::size_t{1} << high;
  const std::size_t v = std::size_t{1} << low;

  std::vector<ExtMatrix> rows_side(u, ExtMatrix(n, n));
  std::vector<ExtMatrix> cols_side(v, ExtMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t d1 = 0; d1 < u; ++d1) rows_side[d1](i, k) = shift_row_side(a(i, k), d1, scale, ell);
      for (std::size_t d2 = 0; d2 < v; ++d2) cols_side[d2](i, k) = shift_col_side(b(i, k), d2, scale, ell);
    }

  std::size_t t = opts.t;
  const std::uint64_t m1 = u * a.count_present(ExtInt::inf());
  if (t == 0) {
    ParameterRequest req;
    req.task = ParameterTask::DistMsbT;
    req.n = std::max<std::size_t>(1, n);
    req.m1 = std::max<std::uint64_t>(1, m1);
    req.m2 = std::max<std::uint64_t>(1, v * b.count_present(ExtInt::inf()));
    req.ell = ell;
    req.classical = opts.engine == Engine::Classical;
    t = static_cast<std::size_t>(select_parameters(req).t);
  }

  DominanceOptions dopt;
  dopt.t = t;
  dopt.order = LexOrder::Decreasing;
  dopt.strict = true;
  dopt.engine = opts.engine;
  dopt.phase_prefix = opts.phase_prefix + "buckets/";
  const LexMatrix first = generalized_dominance(rows_side, cols_side, dopt, ledger);

  MsbResult out(n, n, ell, scale);
  bool unresolved = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const LexPair p = first(i, j);
      if (p.none()) {
        unresolved = true;
        continue;
      }
      const std::uint64_t d = (p.x - 1) * v + (p.y - 1);
      if (d == 0) {
        out.set_tag(i, j, MsbTag::Negative);
      } else {
        out.set_bits(i, j, d - 1);
      }
    }
  }

  if (unresolved) {
    // Cells past the last threshold are either in the top bucket or infinite.
    ExtMatrix upper(n, n);
    const std::uint64_t top_index = std::uint64_t{1} << ell;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) upper(k, j) = shift_col_side(b(k, j), top_index, scale, ell);
    const BoolMatrix below_scale =
        dominance_product(a, upper, true, opts.engine, ledger, 0, opts.phase_prefix + "top/");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (first(i, j).none() && below_scale.get(i, j)) out.set_bits(i, j, top_index - 1);
  }
  return out;
}

}  // namespace semiprod
