#pragma once

#include <span>
#include <vector>

#include "quadsuite/fock.hpp"

namespace quadsuite {

/// Truncated matrix of Q_t = cos t Q + sin t P in the Hermite basis:
/// Q_{n,n+1} = sqrt((n+1)/2), P_{n,n+1} = -i sqrt((n+1)/2), both Hermitian.
struct QuadratureMatrix {
  double theta = 0.0;
  CMatrix matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

QuadratureMatrix quadrature_matrix(double theta, int dim);

/// exp(i t H) for Hermitian H, by eigendecomposition.
CMatrix expm_hermitian(const CMatrix& h, double t);

/// Density of the Q_t distribution at x:
///   rho^{Q_t}(x) = sum_{nm} rho_{nm} exp(-i (n - m) t) h_n(x) h_m(x),
/// i.e. the Q-density of rotate_state(rho, -t).
double quadrature_density(const TruncatedState& rho, double theta, double x);
std::vector<double> quadrature_density(const TruncatedState& rho, double theta,
                                       std::span<const double> xs);

/// tr[rho Q_t(X)], clamped to [0, 1].
double quadrature_probability(const TruncatedState& rho, double theta, const IntervalSet& X);

/// Largest moment order accepted by quadrature_moment.
inline constexpr int kMaxMomentOrder = 64;

/// k-th raw moment of rho^{Q_t}, evaluated as tr[rho Q_t^k] on a truncation
/// enlarged by k so the tridiagonal powers are exact on the support of rho.
double quadrature_moment(const TruncatedState& rho, double theta, int k);

/// Moments 0..k_max in one pass.
std::vector<double> quadrature_moments(const TruncatedState& rho, double theta, int k_max);

/// [Q, Q_t] at truncation dim (full matrix, including the top-corner artifact).
CMatrix commutator_matrix(double theta, int dim);

/// Top-left (dim-2) x (dim-2) block of [Q, Q_t]; equals i sin t I there.
CMatrix commutator_block(double theta, int dim);

/// Var(rho^Q) * Var(rho^{Q_t}).
double uncertainty_product(const TruncatedState& rho, double theta);

/// Pure centred Gaussian with quadrature covariance [[v, c], [c, (1/4 + c^2)/v]],
/// realized as a rotated squeezed vacuum.
TruncatedState gaussian_with_covariance(double v, double c, int dim);

/// Member of the Gaussian family with c = -v cot t, whose product
/// Var(Q) Var(Q_t) equals sin^2 t / 4.
TruncatedState saturating_gaussian(double theta, double v, int dim);

/// Truncated trace sum_{n<dim} <h_n| Q(X) Q_t(Y) |h_n>. Tends to
/// lambda(X) lambda(Y) / (2 pi |sin t|) as dim grows.
double trace_pair(const IntervalSet& X, const IntervalSet& Y, double theta, int dim);

/// Max-norm, on the top-left dim/2 block, of
///   exp(-iqP) exp(ipQ) - exp(-iqp) exp(ipQ) exp(-iqP)
/// with both exponentials taken of the dim-truncated generators.
double weyl_relation_deviation(double q, double p, int dim);

}  // namespace quadsuite
