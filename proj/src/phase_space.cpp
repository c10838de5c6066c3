#include "quadsuite/phase_space.hpp"

#include <cmath>

#include "quadrature_rules.hpp"
#include "quadsuite/errors.hpp"
#include "quadsuite/parallel.hpp"
#include "quadsuite/quadrature.hpp"

namespace quadsuite {

namespace {

void check_same_dim(const TruncatedState& rho, const TruncatedState& K, const char* where) {
  if (rho.dim() != K.dim()) {
    throw ValidationError(std::string(where) + ": rho and K dimensions differ");
  }
}

// Convolution of a kernel density against a fixed state density on a trapezoid grid.
class MarginalConvolver {
 public:
  MarginalConvolver(const TruncatedState& rho, const TruncatedState& K, double theta,
                    const ConvolutionOptions& options)
      : dim_(rho.dim()) {
    check_same_dim(rho, K, "rotated_marginal_density");
    if (!(options.step > 0.0)) throw ValidationError("convolution step must be > 0");
    support_ = hermite_support(dim_ - 1);
    const double half = std::max(options.half_width, support_);
    const auto n = static_cast<std::size_t>(std::ceil(half / options.step));
    xs_.resize(2 * n + 1);
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      xs_[i] = (static_cast<double>(i) - static_cast<double>(n)) * options.step;
    }
    weights_ = quadrature_density(rho, theta, xs_);
    for (auto& w : weights_) w *= options.step;
    weights_.front() *= 0.5;
    weights_.back() *= 0.5;
    kernel_ = rotate_matrix(parity_matrix(K.matrix()), -theta).real();
  }

  double operator()(double t) const {
    std::vector<double> buf(static_cast<std::size_t>(dim_));
    Eigen::Map<const Eigen::VectorXd> h(buf.data(), dim_);
    double total = 0.0;
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      const double y = t - xs_[i];
      if (std::abs(y) > support_ || weights_[i] == 0.0) continue;
      hermite_functions(y, buf);
      total += weights_[i] * h.dot(kernel_ * h);
    }
    return total;
  }

  // Beyond this |t| both factors have no overlapping support.
  double reach() const { return 2.0 * support_; }

 private:
  int dim_;
  double support_ = 0.0;
  std::vector<double> xs_;
  std::vector<double> weights_;
  RMatrix kernel_;
};

// Log factorials log(k!) for k < count.
std::vector<double> log_factorials(int count) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 1)));
  out[0] = 0.0;
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = out[k - 1] + std::log(static_cast<double>(k));
  return out;
}

}  // namespace

CMatrix displacement_matrix(PhasePoint pt, int dim) {
  if (dim < 1) throw DomainError("displacement_matrix: dim must be >= 1");
  const Complex alpha(pt.q / std::sqrt(2.0), pt.p / std::sqrt(2.0));
  const double x = std::norm(alpha);
  if (x == 0.0) return CMatrix::Identity(dim, dim);
  const double log_abs = 0.5 * std::log(x);
  const double arg = std::arg(alpha);
  const auto lf = log_factorials(dim);

  CMatrix out(dim, dim);
  std::vector<double> lag(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    // L_j^(k)(x) for j = 0 .. dim-1-k by the forward three-term recurrence.
    const int count = dim - k;
    lag[0] = 1.0;
    if (count > 1) lag[1] = 1.0 + k - x;
    for (int j = 1; j + 1 < count; ++j) {
      lag[j + 1] = ((2.0 * j + 1.0 + k - x) * lag[j] - (j + k) * lag[j - 1]) / (j + 1.0);
    }
    const Complex below = std::polar(1.0, k * arg);               // alpha^k / |alpha|^k
    const Complex above = std::polar(1.0, k * (M_PI - arg));      // (-conj alpha)^k / |alpha|^k
    for (int j = 0; j < count; ++j) {
      const double log_pref = -0.5 * x + k * log_abs + 0.5 * (lf[j] - lf[j + k]);
      const double mag = std::exp(log_pref) * lag[j];
      out(j + k, j) = mag * below;
      if (k > 0) out(j, j + k) = mag * above;
    }
  }
  return out;
}

CMatrix displacement_matrix_expm(PhasePoint pt, int dim, int work_dim) {
  if (work_dim < dim) throw DomainError("displacement_matrix_expm: work_dim < dim");
  const CMatrix pos = quadrature_matrix(0.0, work_dim).matrix;
  const CMatrix mom = quadrature_matrix(M_PI / 2, work_dim).matrix;
  const CMatrix gen = pt.p * pos - pt.q * mom;
  return expm_hermitian(0.5 * (gen + gen.adjoint()), 1.0).topLeftCorner(dim, dim);
}

double gk_density(const TruncatedState& rho, const TruncatedState& K, PhasePoint pt) {
  check_same_dim(rho, K, "gk_density");
  const CMatrix w = displacement_matrix(pt, rho.dim());
  const CMatrix m = w * K.matrix() * w.adjoint();
  // tr[rho M] = sum_ab rho_ab M_ba
  return rho.matrix().cwiseProduct(m.transpose()).sum().real();
}

GridFunction gk_density_grid(const TruncatedState& rho, const TruncatedState& K,
                             const Axis& q_axis, const Axis& p_axis) {
  check_same_dim(rho, K, "gk_density_grid");
  const std::size_t nq = q_axis.size();
  const std::size_t np = p_axis.size();
  std::vector<double> values(nq * np);
  parallel_for(nq, [&](std::size_t i) {
    for (std::size_t j = 0; j < np; ++j) {
      values[i * np + j] = gk_density(rho, K, {q_axis.at(i), p_axis.at(j)});
    }
  });
  return GridFunction(q_axis, p_axis, std::move(values));
}

std::vector<double> rotated_marginal_density(const TruncatedState& rho, const TruncatedState& K,
                                             double theta, std::span<const double> ts,
                                             const ConvolutionOptions& options) {
  const MarginalConvolver conv(rho, K, theta, options);
  std::vector<double> out(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) { out[i] = conv(ts[i]); });
  return out;
}

double rotated_marginal_density(const TruncatedState& rho, const TruncatedState& K, double theta,
                                double t, const ConvolutionOptions& options) {
  return MarginalConvolver(rho, K, theta, options)(t);
}

double strip_probability(const TruncatedState& rho, const TruncatedState& K, double theta,
                         const IntervalSet& X, const ConvolutionOptions& options) {
  const MarginalConvolver conv(rho, K, theta, options);
  const auto& rule = detail::GL20::get();
  std::vector<double> nodes;
  std::vector<double> weights;
  const IntervalSet clipped = X.clipped(-conv.reach(), conv.reach());
  for (const auto& iv : clipped.intervals()) {
    const auto edges = detail::panel_edges(iv.lo, iv.hi, 0.25);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      const double half = 0.5 * (edges[k + 1] - edges[k]);
      const double mid = 0.5 * (edges[k + 1] + edges[k]);
      for (std::size_t r = 0; r < rule.nodes.size(); ++r) {
        nodes.push_back(mid + half * rule.nodes[r]);
        weights.push_back(half * rule.weights[r]);
      }
    }
  }
  std::vector<double> values(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) { values[i] = conv(nodes[i]); });
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) total += weights[i] * values[i];
  return std::clamp(total, 0.0, 1.0);
}

double cartesian_marginal_density(const TruncatedState& rho, const TruncatedState& K,
                                  MarginalAxis axis, double t,
                                  const ConvolutionOptions& options) {
  const double theta = axis == MarginalAxis::q ? 0.0 : M_PI / 2;
  return rotated_marginal_density(rho, K, theta, t, options);
}

}  // namespace quadsuite
