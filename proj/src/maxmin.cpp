#include "semiprod/maxmin.hpp"

#include <algorithm>
#include <bit>

#include "semiprod/dominance.hpp"
#include "semiprod/exponents.hpp"

namespace semiprod {

namespace {

void check_square_pair(const ExtMatrix& a, const ExtMatrix& b) {
  if (!a.square() || !b.square() || a.rows() != b.rows()) throw ShapeError("operands must be square and equal-sized");
}

void leftslice_row(const ExtMatrix& a, const ExtMatrix& b, std::size_t i, ExtMatrix& c) {
  const std::size_t n = a.cols();
  for (std::size_t j = 0; j < n; ++j) {
    ExtInt best = ExtInt::neg_inf();
    for (std::size_t k = 0; k < n; ++k) {
      const ExtInt& l = a(i, k);
      if (a_present(l) && b_present(b(k, j)) && l <= b(k, j) && best < l) best = l;
    }
    c(i, j) = best;
  }
}

void maxmin_row(const ExtMatrix& a, const ExtMatrix& b, std::size_t i, ExtMatrix& c) {
  const std::size_t n = a.cols();
  for (std::size_t j = 0; j < n; ++j) {
    ExtInt best = ExtInt::neg_inf();
    for (std::size_t k = 0; k < n; ++k) best = std::max(best, std::min(a(i, k), b(k, j)));
    c(i, j) = best;
  }
}

}  // namespace

RowPartition::RowPartition(const ExtMatrix& a, std::size_t g) : n_(a.rows()), g_(g), s_(0) {
  if (!a.square()) throw ShapeError("row partition needs a square matrix");
  if (n_ > 0 && (g == 0 || g > n_)) throw RangeError("block size g must lie in [1, n]");
  s_ = n_ == 0 ? 0 : (n_ + g_ - 1) / g_;
  rows_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k)
      if (a_present(a(i, k))) rows_[i].push_back(Item{a(i, k), static_cast<std::uint32_t>(k)});
    std::sort(rows_[i].begin(), rows_[i].end(),
              [](const Item& l, const Item& r) { return l.value != r.value ? l.value < r.value : l.k < r.k; });
  }
}

std::span<const RowPartition::Item> RowPartition::part(std::size_t i, std::size_t r) const {
  const auto& row = rows_[i];
  const std::size_t lo = std::min(row.size(), r * g_);
  const std::size_t hi = std::min(row.size(), (r + 1) * g_);
  return {row.data() + lo, hi - lo};
}

ExtMatrix RowPartition::part_matrix(std::size_t r) const {
  ExtMatrix m(n_, n_, ExtInt::inf());
  for (std::size_t i = 0; i < n_; ++i)
    for (const auto& it : part(i, r)) m(i, it.k) = it.value;
  return m;
}

ExtMatrix leftslice_brute(const ExtMatrix& a, const ExtMatrix& b) {
  check_square_pair(a, b);
  ExtMatrix c(a.rows(), a.rows(), ExtInt::neg_inf());
  parallel_rows(a.rows(), 64, [&](std::size_t i) { leftslice_row(a, b, i, c); });
  return c;
}

ExtMatrix maxmin_brute(const ExtMatrix& a, const ExtMatrix& b) {
  check_square_pair(a, b);
  ExtMatrix c(a.rows(), a.rows(), ExtInt::neg_inf());
  parallel_rows(a.rows(), 64, [&](std::size_t i) { maxmin_row(a, b, i, c); });
  return c;
}

namespace serial {
ExtMatrix leftslice_brute(const ExtMatrix& a, const ExtMatrix& b) {
  check_square_pair(a, b);
  ExtMatrix c(a.rows(), a.rows(), ExtInt::neg_inf());
  for (std::size_t i = 0; i < a.rows(); ++i) leftslice_row(a, b, i, c);
  return c;
}

ExtMatrix maxmin_brute(const ExtMatrix& a, const ExtMatrix& b) {
  check_square_pair(a, b);
  ExtMatrix c(a.rows(), a.rows(), ExtInt::neg_inf());
  for (std::size_t i = 0; i < a.rows(); ++i) maxmin_row(a, b, i, c);
  return c;
}
}  // namespace serial

std::size_t auto_block_size(std::size_t n) {
  if (n <= 1) return 1;
  ParameterRequest req;
  req.task = ParameterTask::MaxminG;
  req.n = n;
  req.m1 = n * n;
  req.m2 = n * n;
  return static_cast<std::size_t>(select_parameters(req).g);
}

ExtMatrix leftslice(const ExtMatrix& a, const ExtMatrix& b, const MaxminOptions& opts, CostLedger& ledger) {
  check_square_pair(a, b);
  const std::size_t n = a.rows();
  ExtMatrix c(n, n, ExtInt::neg_inf());
  if (n == 0) return c;
  const std::size_t g = opts.g == 0 ? auto_block_size(n) : opts.g;
  const RowPartition rp(a, g);

  std::vector<ExtMatrix> runs;
  runs.reserve(rp.parts());
  for (std::size_t r = 0; r < rp.parts(); ++r) runs.push_back(rp.part_matrix(r));

  const std::uint64_t m1 = a.count_present(ExtInt::inf());
  std::size_t t = opts.t;
  if (t == 0) {
    ParameterRequest req;
    req.task = ParameterTask::MaxminG;
    req.n = n;
    req.m1 = std::max<std::uint64_t>(1, m1);
    req.m2 = std::max<std::uint64_t>(1, b.count_present(ExtInt::neg_inf()));
    t = static_cast<std::size_t>(select_parameters(req).t);
  }

  DominanceOptions dopt;
  dopt.t = t;
  dopt.order = LexOrder::Normal;
  dopt.strict = false;
  dopt.engine = opts.engine;
  dopt.phase_prefix = opts.phase_prefix + "step1/";
  const LexMatrix top = generalized_dominance(runs, std::span(&b, 1), dopt, ledger);

  const std::string step2 = opts.phase_prefix + "step2";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (top(i, j).none()) continue;
      const auto run = rp.part(i, top(i, j).x - 1);
      const SearchSpace space{run.size(), [&](std::uint64_t z) { return run[z]; }};
      auto key = [&](const RowPartition::Item& it) {
        const ExtInt& bv = b(it.k, j);
        return b_present(bv) && it.value <= bv ? it.value : ExtInt::neg_inf();
      };
      const auto best = extremum(opts.engine, space, key, Extremum::Max, ledger, step2);
      c(i, j) = key(run[*best]);
    }
  }
  return c;
}

ExtMatrix maxmin_product(const ExtMatrix& a, const ExtMatrix& b, const MaxminOptions& opts, CostLedger& ledger) {
  check_square_pair(a, b);
  const std::size_t n = a.rows();
  MaxminOptions left = opts;
  left.phase_prefix = opts.phase_prefix + "AB/";
  MaxminOptions right = opts;
  right.phase_prefix = opts.phase_prefix + "BtAt/";
  const ExtMatrix l = leftslice(a, b, left, ledger);
  const ExtMatrix r = leftslice(transpose(b), transpose(a), right, ledger);

  // min(+inf, +inf) falls through both leftslices, so the +inf cells come
  // from a Boolean product of the two infinity patterns.
  BoolMatrix a_inf(n, n);
  BoolMatrix b_inf(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j).is_pos_inf()) a_inf.set(i, j);
      if (b(i, j).is_pos_inf()) b_inf.set(i, j);
    }
  const BoolMatrix both_inf = bool_multiply(a_inf, b_inf);
  ledger.charge_classical(opts.phase_prefix + "inf-pattern", n * n);

  ExtMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = both_inf.get(i, j) ? ExtInt::inf() : std::max(l(i, j), r(j, i));
  return c;
}

ExtMatrix bottleneck_brute(const ExtMatrix& cap) {
  if (!cap.square()) throw ShapeError("capacity matrix must be square");
  const std::size_t n = cap.rows();
  ExtMatrix d = cap;
  for (std::size_t i = 0; i < n; ++i) d(i, i) = ExtInt::inf();
  // Row k is a fixed point of round k, so the rows can relax in parallel.
  for (std::size_t k = 0; k < n; ++k) {
    parallel_rows(n, 128, [&](std::size_t i) {
      const ExtInt via = d(i, k);
      if (via.is_neg_inf()) return;
      for (std::size_t j = 0; j < n; ++j) d(i, j) = std::max(d(i, j), std::min(via, d(k, j)));
    });
  }
  return d;
}

std::size_t apbp_rounds(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(n - 1)); }

ExtMatrix apbp(const ExtMatrix& cap, const MaxminOptions& opts, CostLedger& ledger) {
  if (!cap.square()) throw ShapeError("capacity matrix must be square");
  ExtMatrix d = cap;
  for (std::size_t i = 0; i < d.rows(); ++i) d(i, i) = ExtInt::inf();
  const std::size_t rounds = apbp_rounds(d.rows());
  for (std::size_t s = 0; s < rounds; ++s) {
    MaxminOptions round = opts;
    round.phase_prefix = opts.phase_prefix + "square" + std::to_string(s + 1) + "/";
    d = maxmin_product(d, d, round, ledger);
  }
  return d;
}

}  // namespace semiprod
