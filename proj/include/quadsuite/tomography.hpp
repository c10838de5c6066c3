#pragma once

#include <iosfwd>
#include <vector>

#include "quadsuite/fock.hpp"
#include "quadsuite/frame.hpp"
#include "quadsuite/grid.hpp"

namespace quadsuite {

/// Samples of rho^{Q_t}(x) at J equally spaced angles t_j = 2 pi j / J.
class QuadratureDataset {
 public:
  /// Validates: values non-negative (>= -1e-10) and each row integrating to 1
  /// within 1e-6 (trapezoid). Throws ValidationError.
  QuadratureDataset(int angles, Axis xs, std::vector<std::vector<double>> values);

  int angle_count() const { return angles_; }
  double angle(int j) const;
  const Axis& xs() const { return xs_; }
  const std::vector<std::vector<double>>& values() const { return values_; }

  /// Text format: header "# J x_min x_max step", then J rows of samples.
  void write(std::ostream& out) const;
  static QuadratureDataset read(std::istream& in);

 private:
  int angles_;
  Axis xs_;
  std::vector<std::vector<double>> values_;
};

/// Forward map: tabulates rho^{Q_t} at J angles on xs.
QuadratureDataset generate_dataset(const TruncatedState& rho, int angles, const Axis& xs);

/// tr[rho E(Theta x X)] with E(Theta x X) = (1/2pi) int_Theta Q_t(X) dt.
/// The angle integral is done in closed form. Theta must lie in [0, 2pi].
double tomography_probability(const TruncatedState& rho, const IntervalSet& angles,
                              const IntervalSet& X);

struct Reconstruction {
  TruncatedState state;
  double clipped_weight = 0.0;   ///< total |negative eigenvalue| removed
  double min_eigenvalue = 0.0;   ///< before projection
  double max_condition = 0.0;    ///< worst band least-squares condition number
  double max_residual = 0.0;     ///< worst band RMS residual
};

inline constexpr double kMaxBandCondition = 1e10;

/// Band-wise inversion: a DFT over the angles isolates each band d = n - m of
/// rho, whose entries are fitted by least squares against h_{m+d}(x) h_m(x);
/// the result is projected onto the positive trace-one cone.
/// Throws UnderdeterminedError when J < 2 dim - 1 and ConditioningError when
/// a band system has condition number > 1e10.
Reconstruction reconstruct_state(const QuadratureDataset& data, int dim);

enum class KernelForm { derivative, series };

/// Largest number-state index accepted by the Markov kernel.
inline constexpr int kMaxKernelIndex = 6;

/// Generalized Markov kernel M_{q,p}^{|h_n><h_n|}(t, x), evaluated at
/// s = x - q_t with q_t = q cos t + p sin t:
///   derivative: sum_u C(n,u) 2^(1-u)/u! F^(2u+1)(s)        (F = Dawson)
///   series:     sum_{k>=n} C(k,n) (-1)^(k-n) k! / (2^k (2k)!) H_2k(s)
double markov_kernel_number(int n, PhasePoint pt, double theta, double x,
                            KernelForm form = KernelForm::derivative);

/// g_K^rho(q,p) for K = |h_n><h_n| from tomography data:
///   int int M_{q,p}(t', x) rho^{Q_t'}(x) dt'/(2 pi) dx,
/// rectangle rule in the angle (periodic), trapezoid in x.
double gk_from_quadrature_data(const QuadratureDataset& data, int n, PhasePoint pt);

}  // namespace quadsuite
