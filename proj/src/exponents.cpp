#include "semiprod/exponents.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "semiprod/core.hpp"

namespace semiprod {

OmegaParams::OmegaParams(double omega, double alpha) : omega_(omega), alpha_(alpha) {
  if (!(omega >= 2.0 && omega < 3.0)) throw RangeError("omega must lie in [2, 3)");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw RangeError("alpha must lie in (0, 1]");
  if (alpha == 1.0 && omega != 2.0) throw RangeError("alpha = 1 forces omega = 2");
}

double omega_square_outer(double k, const OmegaParams& p) {
  if (k <= p.alpha()) return 2.0;
  if (k <= 1.0) return 2.0 + p.beta() * (k - p.alpha());
  return p.omega() + (k - 1.0);
}

double omega_bound(double k1, double k2, double k3, const OmegaParams& p) {
  if (!(k1 > 0.0 && k2 > 0.0 && k3 > 0.0)) throw RangeError("omega_bound arguments must be positive");
  const std::array<double, 3> k{k1, k2, k3};
  double best = std::numeric_limits<double>::infinity();
  // Pick which argument plays the inner dimension; the two outer ones are
  // equalised at the smaller value and the excess is added back linearly.
  for (int inner = 0; inner < 3; ++inner) {
    const double a = k[(inner + 1) % 3];
    const double b = k[(inner + 2) % 3];
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    best = std::min(best, lo * omega_square_outer(k[inner] / lo, p) + (hi - lo));
  }
  const double floor = std::max({k1 + k2, k1 + k3, k2 + k3});
  if (best < floor - 1e-12) throw std::logic_error("omega_bound fell below the pairwise-sum floor");
  return best;
}

double model_multiply_cost(double d1, double d2, double d3, const OmegaParams& p) {
  if (d1 <= 0.0 || d2 <= 0.0 || d3 <= 0.0) return 0.0;
  const double pairwise = std::max({d1 * d2, d2 * d3, d1 * d3});
  if (d1 < 2.0 || d2 < 2.0 || d3 < 2.0) return pairwise;
  const double w = omega_bound(std::log2(d1), std::log2(d2), std::log2(d3), p);
  return std::max(pairwise, std::exp2(w));
}

ExponentEquation equation_from_string(std::string_view s) {
  if (s == "dom-mu") return ExponentEquation::DominanceMu;
  if (s == "maxmin-gamma") return ExponentEquation::MaxminGamma;
  if (s == "dist-q-gamma") return ExponentEquation::DistQuantum;
  if (s == "dist-c-gamma") return ExponentEquation::DistClassical;
  throw std::invalid_argument("unknown exponent equation '" + std::string(s) + "'");
}

double exponent_residual(ExponentEquation eq, double x, double input, const OmegaParams& p) {
  switch (eq) {
    case ExponentEquation::DominanceMu:
      return x + 2.0 * omega_bound(1.0, 1.0 + x, 1.0, p) - (1.0 + input);
    case ExponentEquation::MaxminGamma:
      return x + 2.0 * omega_bound(1.0 + x, 1.0 + x, 1.0, p) - 5.0;
    case ExponentEquation::DistQuantum:
      return 2.0 * omega_bound(1.0 + input / 2.0, 1.0 + x, 1.0 + input / 2.0, p) - (5.0 + input - x);
    case ExponentEquation::DistClassical:
      return omega_bound(1.0 + input / 2.0, 1.0 + x, 1.0 + input / 2.0, p) - (3.0 + input - x);
  }
  throw std::logic_error("unreachable");
}

double solve_exponent(ExponentEquation eq, double input, const OmegaParams& p) {
  double lo = 0.0;
  double hi = 4.0;
  double flo = exponent_residual(eq, lo, input, p);
  const double fhi = exponent_residual(eq, hi, input, p);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw std::domain_error("solve_exponent: no sign change on [0, 4]");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = exponent_residual(eq, mid, input, p);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string_view to_string(SparseRegime r) {
  switch (r) {
    case SparseRegime::SparseExpand:
      return "sparse-expand";
    case SparseRegime::Square:
      return "square";
    case SparseRegime::Middle:
      return "middle";
    case SparseRegime::Dense:
      return "dense";
  }
  return "?";
}

SparseRegime sparse_regime(double log_m1, double log_m2, const OmegaParams& p) {
  const double s = 0.5 * (log_m1 + log_m2);
  if (s <= 1.0) return SparseRegime::SparseExpand;
  if (s <= 1.0 + p.alpha() / 2.0) return SparseRegime::Square;
  if (s <= p.omega() - 0.5) return SparseRegime::Middle;
  return SparseRegime::Dense;
}

SparseRegime sparse_regime(std::uint64_t n, std::uint64_t m1, std::uint64_t m2, const OmegaParams& p) {
  const auto prod = static_cast<unsigned __int128>(m1) * m2;
  if (prod <= static_cast<unsigned __int128>(n) * n) return SparseRegime::SparseExpand;
  const double ln = std::log(static_cast<double>(n));
  return sparse_regime(std::log(static_cast<double>(m1)) / ln, std::log(static_cast<double>(m2)) / ln, p);
}

double sparse_model_exponent(double log_m1, double log_m2, const OmegaParams& p) {
  const double a = p.alpha();
  const double b = p.beta();
  switch (sparse_regime(log_m1, log_m2, p)) {
    case SparseRegime::SparseExpand:
      return 1.0 + std::min(log_m1, log_m2);
    case SparseRegime::Square:
      return 2.0;
    case SparseRegime::Middle:
      return (b * (log_m1 + log_m2) + 2.0 + 2.0 * b - a * b) / (1.0 + 2.0 * b);
    case SparseRegime::Dense:
      return p.omega();
  }
  return p.omega();
}

std::vector<ExponentEntry> published_exponent_table(const OmegaParams& p) {
  const double w = p.omega();
  const double a = p.alpha();
  const double b = p.beta();
  const double ab = a * b;
  const double gamma = solve_exponent(ExponentEquation::MaxminGamma, 0.0, p);
  const double mid_m = (1.0 + w) / 2.0;
  return {
      {"maxmin", (12.0 - 6.0 * ab + b) / (5.0 - 2.0 * ab), "(12-6ab+b)/(5-2ab)"},
      {"maxmin_solved", (5.0 - gamma) / 2.0, "(5-gamma)/2, gamma+2w(1+gamma,1+gamma,1)=5"},
      {"maxmin_gamma_floor", (1.0 + 2.0 * ab - 2.0 * b) / (5.0 - 2.0 * ab), "(1+2ab-2b)/(5-2ab)"},
      {"dominance", (5.0 + w) / 3.0, "(5+w)/3"},
      {"maxmin_classical", (3.0 + w) / 2.0, "(3+w)/2"},
      {"dist_quantum_coeff", (4.0 - ab) / 6.0, "(4-ab)/6"},
      {"dist_classical_coeff", 1.0 - ab / 4.0, "1-ab/4"},
      {"boolsparse_m", 2.0 * b / (1.0 + 2.0 * b), "2b/(1+2b)"},
      {"boolsparse_n", (2.0 + 2.0 * b - ab) / (1.0 + 2.0 * b), "(2+2b-ab)/(1+2b)"},
      {"boolsparse_example", sparse_model_exponent(mid_m, mid_m, p), "m1=m2=n^((1+w)/2)"},
      {"threshold_square", 1.0 + a / 2.0, "1+a/2"},
      {"threshold_dense", w - 0.5, "w-1/2"},
  };
}

ParameterTask parameter_task_from_string(std::string_view s) {
  if (s == "dominance-t") return ParameterTask::DominanceT;
  if (s == "maxmin-g-gamma") return ParameterTask::MaxminG;
  if (s == "distmsb-t") return ParameterTask::DistMsbT;
  if (s == "boolsparse-l123") return ParameterTask::BoolSparseL123;
  throw std::invalid_argument("unknown parameter task '" + std::string(s) + "'");
}

namespace {

std::uint64_t clamp_count(double x, std::uint64_t hi) {
  if (!(x >= 1.0)) return 1;
  if (x >= static_cast<double>(hi)) return hi;
  return static_cast<std::uint64_t>(x);
}

// ceil() that forgives floating-point noise just above an integer.
double soft_ceil(double x) { return std::ceil(x - 1e-9); }

}  // namespace

ParameterChoice select_parameters(const ParameterRequest& req, const OmegaParams& p) {
  if (req.n == 0) throw RangeError("n must be at least 1");
  if (req.m1 == 0 || req.m2 == 0) throw RangeError("m1 and m2 must be at least 1");
  ParameterChoice c;
  const double n = static_cast<double>(req.n);
  const double ln = std::log(n);
  const double lm1 = std::log(static_cast<double>(req.m1));
  const double lm2 = std::log(static_cast<double>(req.m2));
  const double w = p.omega();

  switch (req.task) {
    case ParameterTask::DominanceT: {
      const double log_t = (lm1 + lm2) / 3.0 + ln * (1.0 - 2.0 * w) / 3.0;
      c.t = clamp_count(soft_ceil(std::exp(log_t)), req.m1);
      c.exponent = req.n > 1 ? std::log(static_cast<double>(c.t)) / ln : 0.0;
      break;
    }
    case ParameterTask::MaxminG: {
      const double gamma = solve_exponent(ExponentEquation::MaxminGamma, 0.0, p);
      c.exponent = gamma;
      c.g = clamp_count(std::round(std::pow(n, 1.0 - gamma)), req.n);
      c.t = clamp_count(std::round(std::pow(n, gamma)), req.m1);
      break;
    }
    case ParameterTask::DistMsbT: {
      const double mu = req.n > 1 ? static_cast<double>(req.ell) * std::log(2.0) / ln : 0.0;
      const auto eq = req.classical ? ExponentEquation::DistClassical : ExponentEquation::DistQuantum;
      double gamma = 0.0;
      try {
        gamma = solve_exponent(eq, mu, p);
      } catch (const std::domain_error&) {
        gamma = 0.0;
      }
      c.exponent = gamma;
      c.t = clamp_count(soft_ceil(std::pow(n, gamma)), req.m1);
      const double ab = p.alpha() * p.beta();
      c.in_useful_range = req.classical ? (1.0 - ab / 4.0) * mu + (3.0 + w) / 2.0 <= 3.0
                                          : (4.0 - ab) / 6.0 * mu + (5.0 + w) / 3.0 <= 2.5;
      break;
    }
    case ParameterTask::BoolSparseL123: {
      c.regime = sparse_regime(req.n, req.m1, req.m2, p);
      c.l1 = req.m1;
      c.l2 = req.m2;
      c.l3 = req.m2;
      if (c.regime == SparseRegime::Square) {
        c.l2 = clamp_count(std::round(std::exp(lm1 + lm2 - 2.0 * ln)), req.m2);
      } else if (c.regime == SparseRegime::Middle) {
        const double b = p.beta();
        const double log_l2 = (lm1 + lm2) / (1.0 + 2.0 * b) + ln * 2.0 * (p.alpha() * b - 1.0) / (1.0 + 2.0 * b);
        c.l2 = clamp_count(std::round(std::exp(log_l2)), req.m2);
      }
      c.exponent = req.n > 1 ? sparse_model_exponent(lm1 / ln, lm2 / ln, p) : 0.0;
      break;
    }
  }
  return c;
}

}  // namespace semiprod
