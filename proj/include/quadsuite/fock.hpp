#pragma once

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "quadsuite/interval_set.hpp"

namespace quadsuite {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
/// Throws RangeError when the value leaves the double range.
double hermite_polynomial(int n, double x);

/// Normalized Hermite function h_n(x) = (2^n n! sqrt(pi))^(-1/2) H_n(x) exp(-x^2/2).
double hermite_function(int n, double x);

/// Fills out[k] = h_k(x) for k < out.size(). The recurrence carries a running
/// exponent, so no intermediate overflows; values below the double range come
/// out as 0.
void hermite_functions(double x, std::span<double> out);
std::vector<double> hermite_functions(int count, double x);

/// Effective support radius of h_0 .. h_{n_max}: sqrt(2 n_max + 1) + 6.
double hermite_support(int n_max);

/// Integral of h_n h_m over X by adaptive Gauss-Legendre panels.
double overlap(const IntervalSet& X, int n, int m);

/// Matrix of overlap(X, n, m) for n, m < dim; exactly symmetric.
RMatrix overlap_matrix(const IntervalSet& X, int dim);

// ---------------------------------------------------------------------------
// Truncated states
// ---------------------------------------------------------------------------

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kLeakageTol = 1e-8;

/// Density matrix in the Hermite-function basis, truncated to dimension D.
///
/// Instances always satisfy: Hermitian, unit trace, positive semidefinite
/// (tolerances above). `leakage()` is the norm lost when the state was cut
/// from an infinite-dimensional family; `leaky()` flags leakage > 1e-8.
class TruncatedState {
 public:
  /// Validates and wraps a raw matrix. Throws ValidationError.
  static TruncatedState from_matrix(CMatrix matrix);

  /// Pure state |psi><psi| of a (not necessarily normalized) coefficient vector.
  static TruncatedState from_pure(const CVector& coefficients, double leakage = 0.0);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }
  Complex operator()(int n, int m) const { return matrix_(n, m); }

  double leakage() const { return leakage_; }
  bool leaky() const { return leakage_ > kLeakageTol; }

  /// Zero-padded copy of dimension `dim` >= this->dim().
  TruncatedState padded(int dim) const;

 private:
  TruncatedState(CMatrix matrix, double leakage) : matrix_(std::move(matrix)), leakage_(leakage) {}

  friend TruncatedState rotate_state(const TruncatedState&, double);
  friend TruncatedState parity_conjugate(const TruncatedState&);

  CMatrix matrix_;
  double leakage_ = 0.0;
};

/// Throws ValidationError naming the failed invariant.
void validate_density_matrix(const CMatrix& matrix);

struct NumberSpec {
  int n = 0;
};
struct CoherentSpec {
  Complex alpha;
};
/// Squeezed vacuum with real squeezing r, afterwards rotated by phi.
struct SqueezedSpec {
  double r = 0.0;
  double phi = 0.0;
};
struct PureSpec {
  CVector coefficients;
};
struct RawSpec {
  CMatrix matrix;
};
using StateSpec = std::variant<NumberSpec, CoherentSpec, SqueezedSpec, PureSpec, RawSpec>;

TruncatedState make_state(const StateSpec& spec, int dim);

inline TruncatedState vacuum(int dim) { return make_state(NumberSpec{0}, dim); }
inline TruncatedState number_state(int n, int dim) { return make_state(NumberSpec{n}, dim); }

/// A_t = U_t A U_t^*, entrywise (A_t)_{nm} = exp(i (n - m) t) A_{nm}.
/// The global phase of U_t = exp(i t (N + 1/2)) cancels and is dropped.
TruncatedState rotate_state(const TruncatedState& state, double theta);

/// Pi A Pi^* with (Pi psi)(x) = psi(-x); entries (-1)^(n-m) A_{nm}.
TruncatedState parity_conjugate(const TruncatedState& state);

/// Same transforms on bare matrices.
CMatrix rotate_matrix(const CMatrix& a, double theta);
CMatrix parity_matrix(const CMatrix& a);

}  // namespace quadsuite
