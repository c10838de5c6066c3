#pragma once

#include <vector>

#include <json.hpp>

#include "quadsuite/fock.hpp"

namespace quadsuite {

/// Raw moments m[0..k_max] of a probability measure on the line.
///
/// Construction checks m[0] = 1 and that the Hankel matrix [m[i+j]] over
/// 2i, 2j <= k_max is positive semidefinite (smallest eigenvalue >= -1e-9,
/// relative to the largest).
class MomentSequence {
 public:
  explicit MomentSequence(std::vector<double> values);

  int k_max() const { return static_cast<int>(values_.size()) - 1; }
  double operator[](int k) const { return values_.at(static_cast<std::size_t>(k)); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Moments of N(mean, var).
MomentSequence gaussian_moments(double mean, double var, int k_max);

/// (mu * p)[k] = sum_{n<=k} C(k, n) mu[k-n] p[n].
MomentSequence convolved_moments(const MomentSequence& mu, const MomentSequence& p, int k_max);

/// Solves s = mu * p for p by forward substitution (mu[0] = 1):
///   p[k] = s[k] - sum_{n<k} C(k, n) mu[k-n] p[n].
MomentSequence invert_moments(const MomentSequence& s, const MomentSequence& mu);

/// Distribution exp(-x^2) * sum_j c_j x^j fitted to the first degree+1 moments.
/// Exact for quadrature densities of states spanned by h_0 .. h_{degree/2}.
struct GaussianPolynomialDensity {
  std::vector<double> coefficients;
  double operator()(double x) const;
};

GaussianPolynomialDensity density_from_moments(const MomentSequence& moments, int degree);

inline constexpr int kMaxDemoMomentOrder = 16;

struct MomentChannel {
  double theta = 0.0;
  double smearing_var = 0.0;
  std::vector<double> truth;
  std::vector<double> smeared;
  std::vector<double> recovered;
  /// max_k |recovered - truth| / max(1, |truth|)
  double max_relative_error = 0.0;
};

/// Sequential Q-then-Q_t scheme with centred Gaussian smearing of both outputs.
struct SequentialReport {
  int k_max = 0;
  MomentChannel first;   ///< Q channel, smeared by N(0, mu_var)
  MomentChannel second;  ///< Q_t channel, smeared by N(0, nu_var)
};

SequentialReport sequential_demo(const TruncatedState& rho, double theta, double mu_var,
                                 double nu_var, int k_max = 12);

nlohmann::json to_json(const SequentialReport& report);

}  // namespace quadsuite
