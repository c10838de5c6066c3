#include "quadsuite/quadrature.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "quadsuite/errors.hpp"

namespace quadsuite {

namespace {

// Real part of rotate(rho, -theta); the imaginary part is antisymmetric and
// drops out of every quadratic form with symmetric real h_n h_m.
RMatrix density_kernel(const TruncatedState& rho, double theta) {
  return rotate_matrix(rho.matrix(), -theta).real();
}

}  // namespace

QuadratureMatrix quadrature_matrix(double theta, int dim) {
  if (dim < 1) throw DomainError("quadrature_matrix: dim must be >= 1");
  CMatrix m = CMatrix::Zero(dim, dim);
  // Q_t = cos t Q + sin t P has (Q_t)_{n,n+1} = sqrt((n+1)/2) (cos t - i sin t).
  const Complex phase(std::cos(theta), -std::sin(theta));
  for (int n = 0; n + 1 < dim; ++n) {
    const double a = std::sqrt(0.5 * (n + 1));
    m(n, n + 1) = a * phase;
    m(n + 1, n) = a * std::conj(phase);
  }
  return {theta, std::move(m)};
}

CMatrix expm_hermitian(const CMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  const auto& vals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  Eigen::VectorXcd phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) phases(k) = std::polar(1.0, t * vals(k));
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

double quadrature_density(const TruncatedState& rho, double theta, double x) {
  const RMatrix s = density_kernel(rho, theta);
  const Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(
      hermite_functions(rho.dim(), x).data(), rho.dim());
  return h.dot(s * h);
}

std::vector<double> quadrature_density(const TruncatedState& rho, double theta,
                                       std::span<const double> xs) {
  const RMatrix s = density_kernel(rho, theta);
  std::vector<double> out(xs.size());
  std::vector<double> buf(static_cast<std::size_t>(rho.dim()));
  Eigen::Map<const Eigen::VectorXd> h(buf.data(), rho.dim());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    hermite_functions(xs[i], buf);
    out[i] = h.dot(s * h);
  }
  return out;
}

double quadrature_probability(const TruncatedState& rho, double theta, const IntervalSet& X) {
  const RMatrix s = density_kernel(rho, theta);
  const RMatrix ov = overlap_matrix(X, rho.dim());
  return std::clamp(s.cwiseProduct(ov).sum(), 0.0, 1.0);
}

std::vector<double> quadrature_moments(const TruncatedState& rho, double theta, int k_max) {
  if (k_max < 0) throw DomainError("quadrature_moment: order must be >= 0");
  if (k_max > kMaxMomentOrder) {
    throw RangeError("quadrature_moment: order " + std::to_string(k_max) + " exceeds " +
                     std::to_string(kMaxMomentOrder));
  }
  const int d = rho.dim();
  const int big = d + k_max;
  const CMatrix q = quadrature_matrix(theta, big).matrix;
  const CMatrix r = rho.padded(big).matrix();
  std::vector<double> out(static_cast<std::size_t>(k_max) + 1);
  // power = Q_t^k restricted to rows < d; the band structure keeps those rows exact.
  CMatrix power = CMatrix::Identity(d, big);
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) power = power * q;
    // tr[rho A] = sum_{ab} rho_{ab} A_{ba}
    out[static_cast<std::size_t>(k)] =
        (r.topLeftCorner(d, d) * power.leftCols(d)).trace().real();
  }
  return out;
}

double quadrature_moment(const TruncatedState& rho, double theta, int k) {
  return quadrature_moments(rho, theta, k).back();
}

CMatrix commutator_matrix(double theta, int dim) {
  const CMatrix q = quadrature_matrix(0.0, dim).matrix;
  const CMatrix qt = quadrature_matrix(theta, dim).matrix;
  return q * qt - qt * q;
}

CMatrix commutator_block(double theta, int dim) {
  if (dim < 4) throw DomainError("commutator_block: dim must be >= 4");
  return commutator_matrix(theta, dim).topLeftCorner(dim - 2, dim - 2);
}

double uncertainty_product(const TruncatedState& rho, double theta) {
  const auto mq = quadrature_moments(rho, 0.0, 2);
  const auto mt = quadrature_moments(rho, theta, 2);
  const double var_q = mq[2] - mq[1] * mq[1];
  const double var_t = mt[2] - mt[1] * mt[1];
  return var_q * var_t;
}

TruncatedState gaussian_with_covariance(double v, double c, int dim) {
  if (!(v > 0.0)) throw DomainError("gaussian_with_covariance: v must be > 0");
  const double w = (0.25 + c * c) / v;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(Eigen::Matrix2d{{v, c}, {c, w}});
  // Smallest eigenvalue e^{-2r}/2 along direction (cos phi, sin phi).
  const double lambda_min = solver.eigenvalues()(0);
  const Eigen::Vector2d dir = solver.eigenvectors().col(0);
  const double r = -0.5 * std::log(2.0 * lambda_min);
  const double phi = std::atan2(dir(1), dir(0));
  return make_state(SqueezedSpec{r, phi}, dim);
}

TruncatedState saturating_gaussian(double theta, double v, int dim) {
  if (std::abs(std::sin(theta)) < 1e-12) {
    throw DomainError("saturating_gaussian: theta must avoid {0, pi}");
  }
  return gaussian_with_covariance(v, -v * std::cos(theta) / std::sin(theta), dim);
}

double trace_pair(const IntervalSet& X, const IntervalSet& Y, double theta, int dim) {
  if (!X.is_bounded() || !Y.is_bounded()) {
    throw DomainError("trace_pair: X and Y must be bounded");
  }
  if (std::abs(std::sin(theta)) < 1e-12) {
    throw DomainError("trace_pair: degenerate pair, theta in {0, pi}");
  }
  if (dim < 1 || dim > 400) throw DomainError("trace_pair: dim must lie in [1, 400]");
  const RMatrix a = overlap_matrix(X, dim);
  const RMatrix b = overlap_matrix(Y, dim);
  // <h_n|Q(X)Q_t(Y)|h_n> summed over n; Q_t(Y)_{mn} = exp(i(m-n)t) b_{mn}.
  // The imaginary parts cancel pairwise because a and b are symmetric.
  double total = 0.0;
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      total += a(n, m) * b(m, n) * std::cos((m - n) * theta);
    }
  }
  return total;
}

double weyl_relation_deviation(double q, double p, int dim) {
  if (dim < 2) throw DomainError("weyl_relation_deviation: dim must be >= 2");
  const CMatrix pos = quadrature_matrix(0.0, dim).matrix;
  const CMatrix mom = quadrature_matrix(M_PI / 2, dim).matrix;
  const CMatrix shift = expm_hermitian(mom, -q);  // exp(-iqP)
  const CMatrix boost = expm_hermitian(pos, p);   // exp(ipQ)
  const CMatrix lhs = shift * boost;
  const CMatrix rhs = std::polar(1.0, -q * p) * boost * shift;
  const int half = dim / 2;
  return (lhs - rhs).topLeftCorner(half, half).cwiseAbs().maxCoeff();
}

}  // namespace quadsuite
