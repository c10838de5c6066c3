#include "quadsuite/fock.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "quadrature_rules.hpp"
#include "quadsuite/errors.hpp"

namespace quadsuite {

namespace {

constexpr double kQuarterLogPi = 0.28618247146235004;  // log(pi) / 4
constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);

constexpr double kPanelWidth = 0.25;
constexpr double kPanelTol = 1e-14;
constexpr int kMaxPanelDepth = 8;

void check_order(int n, int limit, const char* what) {
  if (n < 0 || n > limit) {
    throw DomainError(std::string(what) + ": order must lie in [0, " + std::to_string(limit) + "]");
  }
}

// Accumulates weight * h_n(x) h_m(x) into `acc` over a panel, using the
// rule mapped onto [a, b]. `h` is scratch of length dim.
void accumulate_panel(double a, double b, int dim, RMatrix& acc, std::vector<double>& h) {
  const auto& rule = detail::GL20::get();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Eigen::Map<Eigen::VectorXd> hv(h.data(), dim);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    hermite_functions(mid + half * rule.nodes[k], h);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(hv, half * rule.weights[k]);
  }
}

void adaptive_panel(double a, double b, int dim, RMatrix& acc, std::vector<double>& h,
                    int depth) {
  RMatrix whole = RMatrix::Zero(dim, dim);
  accumulate_panel(a, b, dim, whole, h);
  if (depth >= kMaxPanelDepth) {
    acc += whole;
    return;
  }
  const double mid = 0.5 * (a + b);
  RMatrix halves = RMatrix::Zero(dim, dim);
  accumulate_panel(a, mid, dim, halves, h);
  accumulate_panel(mid, b, dim, halves, h);
  double diff = (whole - halves).triangularView<Eigen::Lower>().toDenseMatrix().cwiseAbs().maxCoeff();
  if (diff <= kPanelTol) {
    acc += halves;
    return;
  }
  adaptive_panel(a, mid, dim, acc, h, depth + 1);
  adaptive_panel(mid, b, dim, acc, h, depth + 1);
}

}  // namespace

double hermite_polynomial(int n, double x) {
  check_order(n, 4000, "hermite_polynomial");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
    if (!std::isfinite(cur)) {
      throw RangeError("hermite_polynomial: H_" + std::to_string(n) + "(" + std::to_string(x) +
                       ") overflows double");
    }
  }
  return cur;
}

void hermite_functions(double x, std::span<double> out) {
  if (out.empty()) return;
  // Scaled recurrence: out[k] = value_k * exp(log_scale).
  double log_scale = -0.5 * x * x - kQuarterLogPi;
  double factor = std::exp(log_scale);
  double prev = 1.0;
  out[0] = prev * factor;
  if (out.size() == 1) return;
  double cur = std::sqrt(2.0) * x;
  out[1] = cur * factor;
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    double next = std::sqrt(2.0 / (kk + 1.0)) * x * cur - std::sqrt(kk / (kk + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      prev /= kRescale;
      cur /= kRescale;
      log_scale += kLogRescale;
      factor = std::exp(log_scale);
    }
    out[k + 1] = cur * factor;
  }
}

std::vector<double> hermite_functions(int count, double x) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  hermite_functions(x, out);
  return out;
}

double hermite_function(int n, double x) {
  check_order(n, 2000, "hermite_function");
  return hermite_functions(n + 1, x).back();
}

double hermite_support(int n_max) { return std::sqrt(2.0 * n_max + 1.0) + 6.0; }

RMatrix overlap_matrix(const IntervalSet& X, int dim) {
  if (dim < 1) throw DomainError("overlap_matrix: dim must be >= 1");
  const double support = hermite_support(dim - 1);
  RMatrix acc = RMatrix::Zero(dim, dim);
  std::vector<double> h(static_cast<std::size_t>(dim));
  const IntervalSet clipped = X.clipped(-support, support);
  for (const auto& iv : clipped.intervals()) {
    const auto edges = detail::panel_edges(iv.lo, iv.hi, kPanelWidth);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      adaptive_panel(edges[k], edges[k + 1], dim, acc, h, 0);
    }
  }
  // Only the lower triangle was accumulated; mirror it so the result is exactly symmetric.
  return acc.selfadjointView<Eigen::Lower>();
}

double overlap(const IntervalSet& X, int n, int m) {
  check_order(n, 2000, "overlap");
  check_order(m, 2000, "overlap");
  return overlap_matrix(X, std::max(n, m) + 1)(n, m);
}

// ---------------------------------------------------------------------------

void validate_density_matrix(const CMatrix& matrix) {
  if (matrix.rows() < 1 || matrix.rows() != matrix.cols()) {
    throw ValidationError("state: matrix must be square with dim >= 1");
  }
  if (!matrix.allFinite()) throw ValidationError("state: matrix has non-finite entries");
  const auto dim = matrix.rows();
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index m = 0; m < dim; ++m) {
      if (std::abs(matrix(n, m) - std::conj(matrix(m, n))) > kHermiticityTol) {
        throw ValidationError("state: not Hermitian (|rho_nm - conj(rho_mn)| > 1e-12)");
      }
    }
  }
  if (std::abs(matrix.trace() - Complex(1.0)) > kTraceTol) {
    throw ValidationError("state: trace differs from 1 by more than 1e-12");
  }
  CMatrix herm = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPositivityTol) {
    throw ValidationError("state: not positive semidefinite (eigenvalue < -1e-10)");
  }
}

TruncatedState TruncatedState::from_matrix(CMatrix matrix) {
  validate_density_matrix(matrix);
  return TruncatedState(std::move(matrix), 0.0);
}

TruncatedState TruncatedState::from_pure(const CVector& coefficients, double leakage) {
  const double norm = coefficients.norm();
  if (coefficients.size() < 1 || !(norm > 0.0) || !std::isfinite(norm)) {
    throw ValidationError("state: pure coefficient vector must be non-zero and finite");
  }
  CVector psi = coefficients / norm;
  CMatrix rho = psi * psi.adjoint();
  // Outer products are Hermitian up to rounding; make it exact.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return TruncatedState(std::move(rho), leakage);
}

TruncatedState TruncatedState::padded(int dim) const {
  if (dim < this->dim()) throw DomainError("padded: target dimension smaller than state");
  CMatrix out = CMatrix::Zero(dim, dim);
  out.topLeftCorner(this->dim(), this->dim()) = matrix_;
  return TruncatedState(std::move(out), leakage_);
}

namespace {

TruncatedState make_from(const NumberSpec& s, int dim) {
  if (s.n < 0 || s.n >= dim) {
    throw ValidationError("state: number state index must lie in [0, dim)");
  }
  CVector c = CVector::Zero(dim);
  c(s.n) = 1.0;
  return TruncatedState::from_pure(c);
}

TruncatedState make_from(const CoherentSpec& s, int dim) {
  CVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(s.alpha));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * s.alpha / std::sqrt(static_cast<double>(n));
  const double leakage = std::max(0.0, 1.0 - c.squaredNorm());
  return TruncatedState::from_pure(c, leakage);
}

TruncatedState make_from(const SqueezedSpec& s, int dim) {
  // c_{2k} = sech(r)^{1/2} (-tanh r)^k sqrt((2k)!) / (2^k k!)
  CVector c = CVector::Zero(dim);
  const double t = -std::tanh(s.r);
  double coeff = 1.0 / std::sqrt(std::cosh(s.r));
  for (int k = 0; 2 * k < dim; ++k) {
    c(2 * k) = coeff;
    const double kk = static_cast<double>(k);
    coeff *= t * std::sqrt((2.0 * kk + 1.0) * (2.0 * kk + 2.0)) / (2.0 * (kk + 1.0));
  }
  const double leakage = std::max(0.0, 1.0 - c.squaredNorm());
  return rotate_state(TruncatedState::from_pure(c, leakage), s.phi);
}

TruncatedState make_from(const PureSpec& s, int dim) {
  if (s.coefficients.size() > dim) {
    throw ValidationError("state: coefficient vector longer than dim");
  }
  CVector c = CVector::Zero(dim);
  c.head(s.coefficients.size()) = s.coefficients;
  return TruncatedState::from_pure(c);
}

TruncatedState make_from(const RawSpec& s, int dim) {
  if (s.matrix.rows() != dim) throw ValidationError("state: raw matrix dimension differs from dim");
  return TruncatedState::from_matrix(s.matrix);
}

}  // namespace

TruncatedState make_state(const StateSpec& spec, int dim) {
  if (dim < 1) throw ValidationError("state: dim must be >= 1");
  return std::visit([dim](const auto& s) { return make_from(s, dim); }, spec);
}

CMatrix rotate_matrix(const CMatrix& a, double theta) {
  CMatrix out(a.rows(), a.cols());
  for (Eigen::Index n = 0; n < a.rows(); ++n) {
    for (Eigen::Index m = 0; m < a.cols(); ++m) {
      out(n, m) = std::polar(1.0, static_cast<double>(n - m) * theta) * a(n, m);
    }
  }
  return out;
}

CMatrix parity_matrix(const CMatrix& a) {
  CMatrix out = a;
  for (Eigen::Index n = 0; n < a.rows(); ++n) {
    for (Eigen::Index m = 0; m < a.cols(); ++m) {
      if ((n + m) % 2 != 0) out(n, m) = -out(n, m);
    }
  }
  return out;
}

TruncatedState rotate_state(const TruncatedState& state, double theta) {
  return TruncatedState(rotate_matrix(state.matrix_, theta), state.leakage_);
}

TruncatedState parity_conjugate(const TruncatedState& state) {
  return TruncatedState(parity_matrix(state.matrix_), state.leakage_);
}

}  // namespace quadsuite
