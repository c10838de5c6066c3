#include "quadsuite/tomography.hpp"

#include <cmath>
#include <istream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "quadsuite/dawson.hpp"
#include "quadsuite/errors.hpp"
#include "quadsuite/parallel.hpp"
#include "quadsuite/quadrature.hpp"

namespace quadsuite {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kMaxSeriesTerms = 500;
constexpr double kCancellationUlps = 64.0;
constexpr double kCancellationTol = 1e-8;

double trapezoid(const std::vector<double>& v, double step) {
  if (v.empty()) return 0.0;
  double total = 0.0;
  for (double x : v) total += x;
  total -= 0.5 * (v.front() + v.back());
  return total * step;
}

double kernel_derivative_form(int n, double s) {
  const auto d = dawson_derivatives(s, 2 * n + 1);
  double total = 0.0;
  double binom = 1.0;     // C(n, u)
  double factor = 2.0;    // 2^(1-u) / u!
  for (int u = 0; u <= n; ++u) {
    total += binom * factor * d[static_cast<std::size_t>(2 * u + 1)];
    binom *= static_cast<double>(n - u) / (u + 1.0);
    factor /= 2.0 * (u + 1.0);
  }
  return total;
}

// Terms C(k,n) (-1)^(k-n) k!/(2^k (2k)!) H_2k(s), rewritten with
// P_j = H_j / sqrt(2^j j!) as C(k,n) (-1)^(k-n) r_k P_2k with r_k = k!/sqrt((2k)!).
double kernel_series_form(int n, double s) {
  double p_prev = 1.0;  // P_0
  double p_cur = std::sqrt(2.0) * s;  // P_1
  int j = 1;
  auto advance_to = [&](int target) {
    if (target == 0) return 1.0;
    while (j < target) {
      const double jj = static_cast<double>(j);
      const double next = std::sqrt(2.0 / (jj + 1.0)) * s * p_cur - std::sqrt(jj / (jj + 1.0)) * p_prev;
      p_prev = p_cur;
      p_cur = next;
      ++j;
    }
    return p_cur;
  };

  double r = 1.0;  // r_k
  for (int k = 0; k < n; ++k) r *= (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 2.0));
  double binom = 1.0;  // C(k, n) starting at k = n
  double total = 0.0;
  double running_max = 0.0;
  int quiet = 0;
  for (int k = n; k < n + kMaxSeriesTerms; ++k) {
    const double sign = ((k - n) % 2 == 0) ? 1.0 : -1.0;
    const double term = sign * binom * r * advance_to(2 * k);
    if (!std::isfinite(term)) break;
    total += term;
    running_max = std::max(running_max, std::abs(term));
    quiet = std::abs(term) < 1e-12 * running_max ? quiet + 1 : 0;
    if (quiet >= 5) {
      // Alternating terms far above the sum: rounding in running_max swamps it.
      if (running_max * kCancellationUlps * std::numeric_limits<double>::epsilon() > kCancellationTol) {
        std::ostringstream msg;
        msg << "markov_kernel_number: series form loses precision at s = " << s
            << " (largest term " << running_max << "); use the derivative form";
        throw ConvergenceError(msg.str());
      }
      return total;
    }
    binom *= (k + 1.0) / (k + 1.0 - n);
    r *= (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 2.0));
  }
  std::ostringstream msg;
  msg << "markov_kernel_number: series form did not converge within " << kMaxSeriesTerms
      << " terms at s = " << s;
  throw ConvergenceError(msg.str());
}

}  // namespace

QuadratureDataset::QuadratureDataset(int angles, Axis xs, std::vector<std::vector<double>> values)
    : angles_(angles), xs_(xs), values_(std::move(values)) {
  if (angles_ < 1) throw ValidationError("dataset: angle count must be >= 1");
  if (values_.size() != static_cast<std::size_t>(angles_)) {
    throw ValidationError("dataset: row count differs from angle count");
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const auto& row = values_[j];
    if (row.size() != xs_.size()) throw ValidationError("dataset: row length differs from grid size");
    for (double v : row) {
      if (!(v >= -1e-10)) throw ValidationError("dataset: negative or non-finite density sample");
    }
    const double mass = trapezoid(row, xs_.step);
    if (std::abs(mass - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "dataset: row " << j << " integrates to " << std::setprecision(10) << mass
          << ", not 1 within 1e-6 (grid does not cover the density)";
      throw ValidationError(msg.str());
    }
  }
}

double QuadratureDataset::angle(int j) const { return kTwoPi * j / angles_; }

void QuadratureDataset::write(std::ostream& out) const {
  char buf[64];
  out << "# " << angles_;
  for (double v : {xs_.min, xs_.max, xs_.step}) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    out << buf;
  }
  out << '\n';
  for (const auto& row : values_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? " " : "") << buf;
    }
    out << '\n';
  }
}

QuadratureDataset QuadratureDataset::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("dataset: empty input");
  std::istringstream header(line);
  std::string hash;
  int angles = 0;
  double x_min = 0.0, x_max = 0.0, step = 0.0;
  if (!(header >> hash >> angles >> x_min >> x_max >> step) || hash != "#") {
    throw ValidationError("dataset: header must read '# J x_min x_max step'");
  }
  const Axis xs(x_min, x_max, step);
  std::vector<std::vector<double>> values;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::vector<double> v;
    v.reserve(xs.size());
    double x = 0.0;
    while (row >> x) v.push_back(x);
    if (!row.eof()) throw ValidationError("dataset: non-numeric sample");
    values.push_back(std::move(v));
  }
  return QuadratureDataset(angles, xs, std::move(values));
}

QuadratureDataset generate_dataset(const TruncatedState& rho, int angles, const Axis& xs) {
  if (angles < 1) throw ValidationError("dataset: angle count must be >= 1");
  const auto nodes = xs.nodes();
  std::vector<std::vector<double>> values(static_cast<std::size_t>(angles));
  parallel_for(values.size(), [&](std::size_t j) {
    values[j] = quadrature_density(rho, kTwoPi * static_cast<double>(j) / angles, nodes);
  });
  return QuadratureDataset(angles, xs, std::move(values));
}

double tomography_probability(const TruncatedState& rho, const IntervalSet& angles,
                              const IntervalSet& X) {
  for (const auto& iv : angles.intervals()) {
    if (iv.lo < -1e-12 || iv.hi > kTwoPi + 1e-12) {
      throw DomainError("tomography_probability: angle set must lie in [0, 2pi)");
    }
  }
  const int dim = rho.dim();
  // (1/2pi) int_Theta exp(-i d t) dt for d = n - m.
  std::vector<Complex> weight(static_cast<std::size_t>(2 * dim - 1));
  for (int d = -(dim - 1); d <= dim - 1; ++d) {
    Complex w = 0.0;
    for (const auto& iv : angles.intervals()) {
      if (d == 0) {
        w += iv.hi - iv.lo;
      } else {
        w += (std::polar(1.0, -d * iv.hi) - std::polar(1.0, -d * iv.lo)) / Complex(0.0, -d);
      }
    }
    weight[static_cast<std::size_t>(d + dim - 1)] = w / kTwoPi;
  }
  const RMatrix ov = overlap_matrix(X, dim);
  Complex total = 0.0;
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      total += rho(n, m) * ov(n, m) * weight[static_cast<std::size_t>(n - m + dim - 1)];
    }
  }
  return std::clamp(total.real(), 0.0, 1.0);
}

Reconstruction reconstruct_state(const QuadratureDataset& data, int dim) {
  if (dim < 1) throw ValidationError("reconstruct_state: dim must be >= 1");
  const int J = data.angle_count();
  if (J < 2 * dim - 1) {
    throw UnderdeterminedError("reconstruct_state: need J >= 2 dim - 1 angles, got J = " +
                               std::to_string(J) + " for dim = " + std::to_string(dim));
  }
  const auto xs = data.xs().nodes();
  const auto nx = static_cast<Eigen::Index>(xs.size());
  RMatrix basis(nx, dim);  // basis(i, n) = h_n(x_i)
  {
    std::vector<double> h(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < nx; ++i) {
      hermite_functions(xs[static_cast<std::size_t>(i)], h);
      for (int n = 0; n < dim; ++n) basis(i, n) = h[static_cast<std::size_t>(n)];
    }
  }

  Reconstruction result{TruncatedState::from_pure(CVector::Ones(1))};
  CMatrix rho = CMatrix::Zero(dim, dim);
  for (int d = 0; d < dim; ++d) {
    // Band d of the angular Fourier series: (1/J) sum_j f_j(x) exp(i d t_j).
    Eigen::MatrixXd rhs(nx, 2);
    for (Eigen::Index i = 0; i < nx; ++i) {
      Complex acc = 0.0;
      for (int j = 0; j < J; ++j) {
        acc += data.values()[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
               std::polar(1.0, d * data.angle(j));
      }
      acc /= static_cast<double>(J);
      rhs(i, 0) = acc.real();
      rhs(i, 1) = acc.imag();
    }
    const int cols = dim - d;
    RMatrix design(nx, cols);
    for (int m = 0; m < cols; ++m) design.col(m) = basis.col(m + d).cwiseProduct(basis.col(m));
    Eigen::JacobiSVD<RMatrix> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                 : std::numeric_limits<double>::infinity();
    result.max_condition = std::max(result.max_condition, cond);
    if (cond > kMaxBandCondition) {
      std::ostringstream msg;
      msg << "reconstruct_state: band " << d << " least-squares condition " << cond
          << " exceeds 1e10 (grid does not resolve the basis)";
      throw ConditioningError(msg.str());
    }
    const Eigen::MatrixXd sol = svd.solve(rhs);
    const double resid = (design * sol - rhs).norm() / std::sqrt(static_cast<double>(nx));
    result.max_residual = std::max(result.max_residual, resid);
    for (int m = 0; m < cols; ++m) {
      const Complex v(sol(m, 0), sol(m, 1));
      rho(m + d, m) = v;
      rho(m, m + d) = std::conj(v);
    }
    rho(0, 0) = Complex(rho(0, 0).real(), 0.0);
  }
  for (int n = 0; n < dim; ++n) rho(n, n) = rho(n, n).real();

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
  Eigen::VectorXd vals = solver.eigenvalues();
  result.min_eigenvalue = vals.minCoeff();
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    if (vals(k) < 0.0) {
      result.clipped_weight += -vals(k);
      vals(k) = 0.0;
    }
  }
  const double trace = vals.sum();
  if (!(trace > 0.0)) throw NumericalError("reconstruct_state: no positive spectrum left");
  vals /= trace;
  CMatrix projected = solver.eigenvectors() * vals.cast<Complex>().asDiagonal() *
                      solver.eigenvectors().adjoint();
  projected = (0.5 * (projected + projected.adjoint())).eval();
  projected /= projected.trace().real();
  result.state = TruncatedState::from_matrix(std::move(projected));
  return result;
}

double markov_kernel_number(int n, PhasePoint pt, double theta, double x, KernelForm form) {
  if (n < 0 || n > kMaxKernelIndex) {
    throw DomainError("markov_kernel_number: n must lie in [0, 6]");
  }
  const double s = x - RotatedFrame(theta).to_rotated(pt).q;
  return form == KernelForm::derivative ? kernel_derivative_form(n, s) : kernel_series_form(n, s);
}

double gk_from_quadrature_data(const QuadratureDataset& data, int n, PhasePoint pt) {
  if (data.angle_count() < 32) {
    throw DomainError("gk_from_quadrature_data: need at least 32 angles");
  }
  if (data.xs().step > 0.02 + 1e-12) {
    throw DomainError("gk_from_quadrature_data: x step must be <= 0.02");
  }
  if (n < 0 || n > kMaxKernelIndex) {
    throw DomainError("gk_from_quadrature_data: n must lie in [0, 6]");
  }
  const auto xs = data.xs().nodes();
  const double step = data.xs().step;
  const int J = data.angle_count();
  std::vector<double> per_angle(static_cast<std::size_t>(J));
  parallel_for(per_angle.size(), [&](std::size_t j) {
    const double q_t = RotatedFrame(data.angle(static_cast<int>(j))).to_rotated(pt).q;
    const auto& row = data.values()[j];
    std::vector<double> integrand(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      integrand[i] = row[i] == 0.0 ? 0.0 : kernel_derivative_form(n, xs[i] - q_t) * row[i];
    }
    per_angle[j] = trapezoid(integrand, step);
  });
  double total = 0.0;
  for (double v : per_angle) total += v;
  return total / J;
}

}  // namespace quadsuite
