#pragma once

#include <span>
#include <vector>

#include "quadsuite/fock.hpp"
#include "quadsuite/frame.hpp"
#include "quadsuite/grid.hpp"

namespace quadsuite {

// Weyl operators
//
// W(q, p) = exp(iqp/2) exp(-iqP) exp(ipQ). Factoring with BCH
// (exp(A) exp(B) = exp(A + B + [A, B]/2), [A, B] = -iqp for A = -iqP, B = ipQ)
// gives W(q, p) = exp(i(pQ - qP)), which is the displacement D(alpha) =
// exp(alpha a^* - conj(alpha) a) with alpha = (q + ip) / sqrt(2).
//
// Conjugation by rotations: U_t^* W(q, p) U_t = W(q_t, p_t).

/// Truncated W(q, p) from the Laguerre closed form, for m >= n
///   <h_m|W|h_n> = sqrt(n!/m!) alpha^(m-n) exp(-|alpha|^2/2) L_n^(m-n)(|alpha|^2),
/// and <h_m|W|h_n> = conj-type mirror (-conj alpha)^(n-m) for m < n.
/// Entries are those of the infinite operator; only the projection is truncated.
CMatrix displacement_matrix(PhasePoint pt, int dim);

/// Same operator by exponentiating the generator pQ - qP truncated at
/// work_dim >= dim; returns the top-left dim x dim block.
CMatrix displacement_matrix_expm(PhasePoint pt, int dim, int work_dim);

/// g_K^rho(q, p) = tr[rho W K W^*]. The probability density of G_K in the
/// state rho is g / (2 pi).
double gk_density(const TruncatedState& rho, const TruncatedState& K, PhasePoint pt);

/// g_K^rho sampled on q_axis x p_axis (row-major in q).
GridFunction gk_density_grid(const TruncatedState& rho, const TruncatedState& K,
                             const Axis& q_axis, const Axis& p_axis);

/// Trapezoid grid used for the 1D convolutions. The half width is raised to
/// the Hermite support of the states when they are larger than the default.
struct ConvolutionOptions {
  double half_width = 12.0;
  double step = 0.005;
};

/// Density of the rotated marginal of G_K:
///   (K_{pi-t}^Q * rho^{Q_t})(s) = int K_{pi-t}^Q(s - x) rho^{Q_t}(x) dx,
/// with K_{pi-t} = Pi K_{-t} Pi^*.
double rotated_marginal_density(const TruncatedState& rho, const TruncatedState& K, double theta,
                                double t, const ConvolutionOptions& options = {});
std::vector<double> rotated_marginal_density(const TruncatedState& rho, const TruncatedState& K,
                                             double theta, std::span<const double> ts,
                                             const ConvolutionOptions& options = {});

/// tr[rho G_K(Z(t, X))], where Z(t, X) is the union of lines l(t, s), s in X.
double strip_probability(const TruncatedState& rho, const TruncatedState& K, double theta,
                         const IntervalSet& X, const ConvolutionOptions& options = {});

enum class MarginalAxis { q, p };

/// Cartesian marginals: theta = 0 for q, theta = pi/2 for p.
double cartesian_marginal_density(const TruncatedState& rho, const TruncatedState& K,
                                  MarginalAxis axis, double t,
                                  const ConvolutionOptions& options = {});

}  // namespace quadsuite
