#include "semiprod/boolsparse.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace semiprod {

namespace {

using u128 = unsigned __int128;

struct Cell {
  std::uint32_t i;
  std::uint32_t j;
};

void check_square_pair(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ShapeError("operands must be square and equal-sized");
  }
}

template <class F>
void for_each_one(const BoolMatrix& m, std::size_t i, F&& f) {
  const auto words = m.row_words(i);
  for (std::size_t w = 0; w < words.size(); ++w) {
    BoolMatrix::Word bits = words[w];
    while (bits) {
      f(w * BoolMatrix::kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

bool heavy(std::uint64_t count, std::uint64_t total, std::uint64_t l) {
  return count > 0 && static_cast<u128>(count) * l >= total;
}

std::vector<std::uint32_t> members(const std::vector<bool>& flags) {
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < flags.size(); ++k)
    if (flags[k]) out.push_back(static_cast<std::uint32_t>(k));
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("sparse product invariant violated: ") + what);
}

// Strike-out enumeration over the cells of E x F, shared set `sigma`.
std::uint64_t enumerate_block(const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& cols,
                              BoolMatrix& sigma, Engine engine, CostLedger& ledger, const std::string& phase) {
  const std::uint64_t width = cols.size();
  const SearchSpace space{rows.size() * width, [&](std::uint64_t z) { return Cell{rows[z / width], cols[z % width]}; }};
  const auto found = enumerate(
      engine, space, [&](const Cell& c) { return !sigma.get(c.i, c.j); }, ledger, phase,
      [&](const Cell& c) { sigma.set(c.i, c.j); });
  return found.size();
}

BoolMatrix term_compressed(const BoolMatrix& a, const BoolMatrix& b, const IndexSets& sets, CostLedger& ledger,
                           const std::string& phase) {
  const std::size_t n = a.rows();
  BoolMatrix ac(sets.rows.size(), sets.inner.size());
  BoolMatrix bc(sets.inner.size(), sets.cols.size());
  for (std::size_t p = 0; p < sets.rows.size(); ++p)
    for (std::size_t q = 0; q < sets.inner.size(); ++q)
      if (a.get(sets.rows[p], sets.inner[q])) ac.set(p, q);
  for (std::size_t q = 0; q < sets.inner.size(); ++q)
    for (std::size_t r = 0; r < sets.cols.size(); ++r)
      if (b.get(sets.inner[q], sets.cols[r])) bc.set(q, r);
  const BoolMatrix cc = bool_multiply(ac, bc);

  BoolMatrix out(n, n);
  for (std::size_t p = 0; p < cc.rows(); ++p) for_each_one(cc, p, [&](std::size_t r) { out.set(sets.rows[p], sets.cols[r]); });

  const auto dt = static_cast<double>(sets.rows.size());
  const auto ds = static_cast<double>(sets.inner.size());
  const auto du = static_cast<double>(sets.cols.size());
  ledger.charge_model_multiply(phase, model_multiply_cost(dt, ds, du));
  ledger.charge_classical(phase, sets.rows.size() * sets.inner.size() + sets.inner.size() * sets.cols.size() +
                                     sets.rows.size() * sets.cols.size());
  return out;
}

// Ones of A^{S'} B_{S'} through one enumeration over the index space of
// (entry of A in a light column, entry of the matching row of B).
BoolMatrix term_light_inner(const BoolMatrix& a, const BoolMatrix& b, const IndexSets& sets, Engine engine,
                            CostLedger& ledger, const std::string& phase, SparseTermStats& stats) {
  const std::size_t n = a.rows();
  std::vector<std::uint32_t> entry_row, entry_col;
  for (std::size_t i = 0; i < n; ++i)
    for_each_one(a, i, [&](std::size_t k) {
      if (!sets.heavy_inner[k]) {
        entry_row.push_back(static_cast<std::uint32_t>(i));
        entry_col.push_back(static_cast<std::uint32_t>(k));
      }
    });
  std::vector<std::vector<std::uint32_t>> row_ones(n);
  for (std::size_t k = 0; k < n; ++k)
    if (!sets.heavy_inner[k]) for_each_one(b, k, [&](std::size_t j) { row_ones[k].push_back(static_cast<std::uint32_t>(j)); });

  std::vector<std::uint64_t> offset(entry_row.size() + 1, 0);
  for (std::size_t p = 0; p < entry_row.size(); ++p) offset[p + 1] = offset[p] + row_ones[entry_col[p]].size();
  ledger.charge_classical(phase, n * n);

  BoolMatrix sigma(n, n);
  const SearchSpace space{offset.back(), [&](std::uint64_t x) {
                            const auto p = static_cast<std::size_t>(
                                std::upper_bound(offset.begin(), offset.end(), x) - offset.begin() - 1);
                            return Cell{entry_row[p], row_ones[entry_col[p]][x - offset[p]]};
                          }};
  const auto found = enumerate(
      engine, space, [&](const Cell& c) { return !sigma.get(c.i, c.j); }, ledger, phase,
      [&](const Cell& c) { sigma.set(c.i, c.j); });
  stats.term2_space = offset.back();
  stats.term2_found = found.size();
  return sigma;
}

// Ones of A_R B^C through per-k enumerations over E_k x F_k, where E_k holds
// the rows i with A[i,k] = 1 and keep_row[i], F_k the columns j with
// B[k,j] = 1 and keep_col[j].
BoolMatrix term_per_inner(const BoolMatrix& a_cols, const BoolMatrix& b, const std::vector<bool>& keep_row,
                          const std::vector<bool>& keep_col, Engine engine, CostLedger& ledger,
                          const std::string& phase, std::uint64_t& witnesses, std::uint64_t& found) {
  const std::size_t n = b.rows();
  BoolMatrix sigma(n, n);
  std::vector<std::uint32_t> e, f;
  ledger.charge_classical(phase, n * n);
  for (std::size_t k = 0; k < n; ++k) {
    e.clear();
    f.clear();
    for_each_one(a_cols, k, [&](std::size_t i) {
      if (keep_row[i]) e.push_back(static_cast<std::uint32_t>(i));
    });
    for_each_one(b, k, [&](std::size_t j) {
      if (keep_col[j]) f.push_back(static_cast<std::uint32_t>(j));
    });
    if (e.empty() || f.empty()) continue;
    witnesses += e.size() * f.size();
    found += enumerate_block(e, f, sigma, engine, ledger, phase);
  }
  return sigma;
}

void check_parameter(std::uint64_t l, std::uint64_t m, const char* name) {
  if (l < 1 || l > std::max<std::uint64_t>(1, m)) {
    throw RangeError(std::string(name) + " = " + std::to_string(l) + " outside [1, " +
                     std::to_string(std::max<std::uint64_t>(1, m)) + "]");
  }
}

}  // namespace

DegreeProfile DegreeProfile::of(const BoolMatrix& a, const BoolMatrix& b) {
  check_square_pair(a, b);
  const std::size_t n = a.rows();
  DegreeProfile d;
  d.a_row.assign(n, 0);
  d.a_col.assign(n, 0);
  d.b_row.assign(n, 0);
  d.b_col.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for_each_one(a, i, [&](std::size_t k) {
      ++d.a_row[i];
      ++d.a_col[k];
    });
    for_each_one(b, i, [&](std::size_t j) {
      ++d.b_row[i];
      ++d.b_col[j];
    });
    d.m1 += d.a_row[i];
    d.m2 += d.b_row[i];
  }
  return d;
}

IndexSets classify_indices(const BoolMatrix& a, const BoolMatrix& b, std::uint64_t l1, std::uint64_t l2,
                           std::uint64_t l3, CostLedger* ledger, const std::string& phase) {
  const DegreeProfile d = DegreeProfile::of(a, b);
  check_parameter(l1, d.m1, "l1");
  check_parameter(l2, d.m2, "l2");
  check_parameter(l3, d.m2, "l3");
  const std::size_t n = a.rows();
  IndexSets s;
  s.heavy_inner.resize(n);
  s.heavy_rows.resize(n);
  s.heavy_cols.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    s.heavy_inner[k] = heavy(d.b_row[k], d.m2, l2);
    s.heavy_rows[k] = heavy(d.a_row[k], d.m1, l1);
    s.heavy_cols[k] = heavy(d.b_col[k], d.m2, l3);
  }
  s.inner = members(s.heavy_inner);
  s.rows = members(s.heavy_rows);
  s.cols = members(s.heavy_cols);
  if (ledger) ledger->charge_classical(phase, n * n);
  return s;
}

SparseProduct sparse_bool_product(const BoolMatrix& a, const BoolMatrix& b, std::uint64_t l1, std::uint64_t l2,
                                  std::uint64_t l3, Engine engine, CostLedger& ledger,
                                  const std::string& phase_prefix) {
  SparseProduct out;
  out.sets = classify_indices(a, b, l1, l2, l3, &ledger, phase_prefix + "classify");
  out.l1 = l1;
  out.l2 = l2;
  out.l3 = l3;
  const std::size_t n = a.rows();
  const IndexSets& sets = out.sets;
  require(sets.rows.size() <= std::min<std::uint64_t>(l1, n), "|T| <= min(l1, n)");
  require(sets.inner.size() <= std::min<std::uint64_t>(l2, n), "|S| <= min(l2, n)");
  require(sets.cols.size() <= std::min<std::uint64_t>(l3, n), "|U| <= min(l3, n)");

  SparseTermStats& st = out.stats;
  BoolMatrix c = term_compressed(a, b, sets, ledger, phase_prefix + "term1-multiply");
  or_into(c, term_light_inner(a, b, sets, engine, ledger, phase_prefix + "term2-enumerate", st));

  const BoolMatrix at = transpose(a);
  std::vector<bool> light_rows(n), light_cols(n), all(n, true);
  for (std::size_t k = 0; k < n; ++k) {
    light_rows[k] = !sets.heavy_rows[k];
    light_cols[k] = !sets.heavy_cols[k];
  }
  or_into(c, term_per_inner(at, b, light_rows, all, engine, ledger, phase_prefix + "term3-enumerate",
                            st.term3_witnesses, st.term3_found));
  or_into(c, term_per_inner(at, b, all, light_cols, engine, ledger, phase_prefix + "term4-enumerate",
                            st.term4_witnesses, st.term4_found));

  const std::uint64_t m1 = a.count();
  const std::uint64_t m2 = b.count();
  const std::uint64_t lambda = c.count();
  st.output_ones = lambda;
  require(static_cast<u128>(st.term2_space) * l2 <= static_cast<u128>(m1) * m2, "N <= m1 m2 / l2");
  require(st.term2_found <= lambda, "lambda' <= lambda");
  require(static_cast<u128>(st.term2_found) * l2 <= static_cast<u128>(m1) * m2, "lambda' <= m1 m2 / l2");
  require(static_cast<u128>(st.term3_witnesses) * l1 <= static_cast<u128>(lambda) * m1 &&
              static_cast<u128>(st.term3_witnesses) <= static_cast<u128>(lambda) * n,
          "term (3) witnesses <= lambda min(m1/l1, n)");
  require(static_cast<u128>(st.term4_witnesses) * l3 <= static_cast<u128>(lambda) * m2 &&
              static_cast<u128>(st.term4_witnesses) <= static_cast<u128>(lambda) * n,
          "term (4) witnesses <= lambda min(m2/l3, n)");
  out.product = std::move(c);
  return out;
}

namespace {

// Enumerates the ones of `sparse` over its n x n index space, then ORs row k
// of `other` into row i for every found one (i, k).
BoolMatrix expand_rows(const BoolMatrix& sparse, const BoolMatrix& other, Engine engine, CostLedger& ledger,
                       const std::string& phase) {
  const std::size_t n = sparse.rows();
  const SearchSpace space{static_cast<std::uint64_t>(n) * n, [&](std::uint64_t z) {
                            return Cell{static_cast<std::uint32_t>(z / n), static_cast<std::uint32_t>(z % n)};
                          }};
  const auto ones = enumerate(engine, space, [&](const Cell& c) { return sparse.get(c.i, c.j); }, ledger,
                              phase + "-enumerate");
  BoolMatrix found(n, n);
  for (const Cell& c : ones) found.set(c.i, c.j);

  BoolMatrix out(n, n);
  parallel_rows(n, 64, [&](std::size_t i) {
    auto dst = out.row_words(i);
    for_each_one(found, i, [&](std::size_t k) {
      const auto src = other.row_words(k);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
    });
  });
  ledger.charge_classical(phase, ones.size() * n);
  return out;
}

}  // namespace

BoolMatrix sparse_expand_product(const BoolMatrix& a, const BoolMatrix& b, Engine engine, CostLedger& ledger,
                                 const std::string& phase_prefix) {
  check_square_pair(a, b);
  if (a.count() <= b.count()) return expand_rows(a, b, engine, ledger, phase_prefix + "expand");
  return transpose(expand_rows(transpose(b), transpose(a), engine, ledger, phase_prefix + "expand"));
}

SparseProduct auto_sparse_bool_product(const BoolMatrix& a, const BoolMatrix& b, Engine engine, CostLedger& ledger,
                                       const std::string& phase_prefix, const OmegaParams& p) {
  check_square_pair(a, b);
  const std::uint64_t n = a.rows();
  const std::uint64_t m1 = a.count();
  const std::uint64_t m2 = b.count();

  SparseProduct out;
  out.regime = (n == 0 || m1 == 0 || m2 == 0) ? SparseRegime::SparseExpand : sparse_regime(n, m1, m2, p);
  switch (out.regime) {
    case SparseRegime::SparseExpand:
      out.product = sparse_expand_product(a, b, engine, ledger, phase_prefix);
      break;
    case SparseRegime::Dense: {
      out.product = bool_multiply(a, b);
      const auto dn = static_cast<double>(n);
      ledger.charge_model_multiply(phase_prefix + "dense-multiply", model_multiply_cost(dn, dn, dn, p));
      break;
    }
    case SparseRegime::Square:
    case SparseRegime::Middle: {
      ParameterRequest req;
      req.task = ParameterTask::BoolSparseL123;
      req.n = n;
      req.m1 = m1;
      req.m2 = m2;
      const ParameterChoice c = select_parameters(req, p);
      const SparseRegime regime = out.regime;
      out = sparse_bool_product(a, b, c.l1, c.l2, c.l3, engine, ledger, phase_prefix);
      out.regime = regime;
      return out;
    }
  }
  out.stats.output_ones = out.product.count();
  return out;
}

}  // namespace semiprod
