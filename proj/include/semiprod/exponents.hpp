#pragma once

// Rectangular matrix multiplication exponent calculus.
//
// omega(k1,k2,k3) is the exponent of multiplying an n^k1 x n^k2 matrix by an
// n^k2 x n^k3 matrix. Bounds are derived only from two classical facts:
//   - omega(1,k,1) = 2 for k <= alpha, and <= 2 + beta (k - alpha) for
//     alpha <= k <= 1;
//   - homogeneity, permutation invariance, omega(k1,k2,1+k3) <=
//     omega(k1,k2,1) + k3, and omega >= every pairwise sum.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace semiprod {

class OmegaParams {
 public:
  OmegaParams() : OmegaParams(2.373, 0.302) {}
  OmegaParams(double omega, double alpha);

  double omega() const { return omega_; }
  double alpha() const { return alpha_; }
  double beta() const { return (omega_ - 2.0) / (1.0 - alpha_); }

 private:
  double omega_;
  double alpha_;
};

// Upper bound on omega(1,k,1) for k > 0.
double omega_square_outer(double k, const OmegaParams& p);

// Upper bound on omega(k1,k2,k3), all arguments positive.
double omega_bound(double k1, double k2, double k3, const OmegaParams& p = {});

// Model cost of a d1 x d2 by d2 x d3 product: n^omega(log_n d1, log_n d2,
// log_n d3) (base-independent by homogeneity). Degenerate dimensions fall
// back to the product of the other two.
double model_multiply_cost(double d1, double d2, double d3, const OmegaParams& p = {});

enum class ExponentEquation {
  DominanceMu,    // mu + 2 omega(1, 1+mu, 1) = 1 + log_n(m1 m2)
  MaxminGamma,    // gamma + 2 omega(1+gamma, 1+gamma, 1) = 5
  DistQuantum,    // 5 + mu - gamma = 2 omega(1+mu/2, 1+gamma, 1+mu/2)
  DistClassical,  // 3 + mu - gamma = omega(1+mu/2, 1+gamma, 1+mu/2)
};

ExponentEquation equation_from_string(std::string_view s);

// Root of the equation by bisection on [0, 4], tolerance 1e-9. `input` is
// log_n(m1 m2) for DominanceMu and mu = log_n(2^ell) for the two distance
// equations; it is ignored for MaxminGamma. Throws std::domain_error when the
// residual does not change sign on the bracket.
double solve_exponent(ExponentEquation eq, double input, const OmegaParams& p = {});

// Residual whose root solve_exponent returns (exposed for verification).
double exponent_residual(ExponentEquation eq, double x, double input, const OmegaParams& p = {});

struct ExponentEntry {
  std::string name;
  double value;
  std::string formula;
};

// Named complexity exponents and thresholds as functions of (omega, alpha).
std::vector<ExponentEntry> published_exponent_table(const OmegaParams& p = {});

// Regimes of the sparse Boolean product, by sqrt(m1 m2) against
// n, n^(1+alpha/2), n^(omega-1/2). Boundary values belong to the lower regime.
enum class SparseRegime { SparseExpand = 1, Square = 2, Middle = 3, Dense = 4 };
std::string_view to_string(SparseRegime r);

SparseRegime sparse_regime(double log_m1, double log_m2, const OmegaParams& p = {});
SparseRegime sparse_regime(std::uint64_t n, std::uint64_t m1, std::uint64_t m2, const OmegaParams& p = {});
// log_n of the time bound in the regime that applies.
double sparse_model_exponent(double log_m1, double log_m2, const OmegaParams& p = {});

enum class ParameterTask { DominanceT, MaxminG, DistMsbT, BoolSparseL123 };
ParameterTask parameter_task_from_string(std::string_view s);

struct ParameterRequest {
  ParameterTask task = ParameterTask::DominanceT;
  std::uint64_t n = 1;
  std::uint64_t m1 = 1;
  std::uint64_t m2 = 1;
  unsigned ell = 1;
  bool classical = false;  // DistMsbT: solve the classical balance equation
};

struct ParameterChoice {
  std::uint64_t t = 1;
  std::uint64_t g = 1;
  std::uint64_t l1 = 1;
  std::uint64_t l2 = 1;
  std::uint64_t l3 = 1;
  SparseRegime regime = SparseRegime::SparseExpand;
  double exponent = 0.0;  // the real-valued exponent behind the choice (gamma, mu, ...)
  // DistMsbT: whether 2^(0.640 ell) n^((5+omega)/3) <= n^(5/2) holds; outside
  // that range the bound is no better than the straightforward search.
  bool in_useful_range = true;
};

ParameterChoice select_parameters(const ParameterRequest& req, const OmegaParams& p = {});

}  // namespace semiprod
