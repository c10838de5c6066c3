#pragma once

#include <span>
#include <vector>

#include "quadsuite/fock.hpp"
#include "quadsuite/frame.hpp"
#include "quadsuite/grid.hpp"
#include "quadsuite/phase_space.hpp"

namespace quadsuite {

/// W_rho(q, p) = (1/pi) tr[rho W(q,p) Pi W(q,p)^*].
///
/// The operator product is formed as W(q,p) Pi W(q,p)^* = W(2q, 2p) Pi, so the
/// trace only needs matrix elements inside the truncation and is exact there.
double wigner(const TruncatedState& rho, PhasePoint pt);

/// Wigner function sampled on q_axis x p_axis (row-major in q).
GridFunction wigner_grid(const TruncatedState& rho, const Axis& q_axis, const Axis& p_axis);

/// Local tensor-product Lagrange interpolation of the given even order
/// (2 = bilinear, 4 = cubic, 6 = quintic).
enum class Interpolation { bilinear = 2, cubic = 4, quintic = 6 };

struct RadonOptions {
  Interpolation interpolation = Interpolation::quintic;
  /// Half length of the integration segment along e2; <= 0 picks the largest
  /// half extent that fits in the grid box.
  double half_length = 0.0;
  /// Integration step along e2; <= 0 uses the grid step.
  double step = 0.0;
  /// Largest |f| tolerated on the grid boundary.
  double boundary_tol = 1e-12;
};

/// Line integral of f along l(t, s) = s e1(t) + R e2(t) (composite trapezoid).
/// Throws CoverageError when f does not decay below boundary_tol on the box edge.
double radon(const GridFunction& f, double theta, double t, const RadonOptions& options = {});
std::vector<double> radon(const GridFunction& f, double theta, std::span<const double> ts,
                          const RadonOptions& options = {});

/// Phase-space box plus the line offsets at which identities are compared.
struct RadonGrid {
  Axis phase{-8.0, 8.0, 0.02};
  Axis offsets{-6.0, 6.0, 0.02};
  RadonOptions radon{};
};

/// max_x |R W_rho (t, x) - rho^{Q_t}(x)|.
double verify_wigner_radon(const TruncatedState& rho, double theta, const RadonGrid& grid = {});
/// Same with a precomputed Wigner grid (reused across angles).
double verify_wigner_radon(const TruncatedState& rho, double theta, const GridFunction& wigner,
                           const RadonGrid& grid);

/// max_x |R g_K^rho (t, x) - 2 pi (K_{pi-t}^Q * rho^{Q_t})(x)|.
double verify_gk_radon(const TruncatedState& rho, const TruncatedState& K, double theta,
                       const RadonGrid& grid = {}, const ConvolutionOptions& conv = {});

}  // namespace quadsuite
