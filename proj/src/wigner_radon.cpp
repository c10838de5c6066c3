#include "quadsuite/wigner_radon.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "quadsuite/errors.hpp"
#include "quadsuite/parallel.hpp"
#include "quadsuite/quadrature.hpp"

namespace quadsuite {

namespace {

void check_coverage(const GridFunction& f, double tol) {
  if (f.rank() != 2) throw ValidationError("radon: expected a 2D grid function");
  const std::size_t nq = f.axis(0).size();
  const std::size_t np = f.axis(1).size();
  double edge = 0.0;
  for (std::size_t i = 0; i < nq; ++i) {
    edge = std::max({edge, std::abs(f(i, 0)), std::abs(f(i, np - 1))});
  }
  for (std::size_t j = 0; j < np; ++j) {
    edge = std::max({edge, std::abs(f(0, j)), std::abs(f(nq - 1, j))});
  }
  if (edge > tol) {
    std::ostringstream msg;
    msg << "radon: grid coverage insufficient, boundary value " << edge << " exceeds " << tol;
    throw CoverageError(msg.str());
  }
}

// Lagrange weights for nodes base, base+1, ..., base+order-1 at fractional position u
// (measured in grid steps from node 0).
template <int Order>
void lagrange_weights(double u, int base, std::array<double, Order>& w) {
  for (int a = 0; a < Order; ++a) {
    double num = 1.0;
    double den = 1.0;
    for (int b = 0; b < Order; ++b) {
      if (b == a) continue;
      num *= u - (base + b);
      den *= static_cast<double>(a - b);
    }
    w[a] = num / den;
  }
}

template <int Order>
double interpolate(const GridFunction& f, double q, double p) {
  const Axis& ax = f.axis(0);
  const Axis& ay = f.axis(1);
  const double u = (q - ax.min) / ax.step;
  const double v = (p - ay.min) / ay.step;
  const auto nq = static_cast<int>(ax.size());
  const auto np = static_cast<int>(ay.size());
  if (u < 0.0 || v < 0.0 || u > nq - 1 || v > np - 1) return 0.0;
  // Stencil of Order nodes around the cell, shifted inward at the edges.
  int iu = std::clamp(static_cast<int>(std::floor(u)) - (Order / 2 - 1), 0, nq - Order);
  int iv = std::clamp(static_cast<int>(std::floor(v)) - (Order / 2 - 1), 0, np - Order);
  std::array<double, Order> wu{};
  std::array<double, Order> wv{};
  lagrange_weights<Order>(u - iu, 0, wu);
  lagrange_weights<Order>(v - iv, 0, wv);
  double total = 0.0;
  for (int a = 0; a < Order; ++a) {
    double row = 0.0;
    for (int b = 0; b < Order; ++b) row += wv[b] * f(iu + a, iv + b);
    total += wu[a] * row;
  }
  return total;
}

double line_integral(const GridFunction& f, double theta, double t, const RadonOptions& opt) {
  const Axis& ax = f.axis(0);
  const Axis& ay = f.axis(1);
  double half = opt.half_length;
  if (half <= 0.0) {
    half = std::min({-ax.min, ax.max, -ay.min, ay.max});
  }
  const double step = opt.step > 0.0 ? opt.step : std::min(ax.step, ay.step);
  const auto n = static_cast<long>(std::floor(half / step + 1e-9));
  const RotatedFrame frame(theta);
  double total = 0.0;
  for (long k = -n; k <= n; ++k) {
    const double s = static_cast<double>(k) * step;
    const PhasePoint pt = frame.to_cartesian({t, s});
    double value = 0.0;
    switch (opt.interpolation) {
      case Interpolation::bilinear: value = interpolate<2>(f, pt.q, pt.p); break;
      case Interpolation::cubic: value = interpolate<4>(f, pt.q, pt.p); break;
      case Interpolation::quintic: value = interpolate<6>(f, pt.q, pt.p); break;
    }
    total += (k == -n || k == n) ? 0.5 * value : value;
  }
  return total * step;
}

}  // namespace

double wigner(const TruncatedState& rho, PhasePoint pt) {
  const CMatrix d = displacement_matrix({2.0 * pt.q, 2.0 * pt.p}, rho.dim());
  // tr[rho D Pi] = sum_ab rho_ab D_ba (-1)^a
  Complex total = 0.0;
  for (int a = 0; a < rho.dim(); ++a) {
    Complex row = 0.0;
    for (int b = 0; b < rho.dim(); ++b) row += rho(a, b) * d(b, a);
    total += (a % 2 == 0) ? row : -row;
  }
  return total.real() / M_PI;
}

GridFunction wigner_grid(const TruncatedState& rho, const Axis& q_axis, const Axis& p_axis) {
  const std::size_t nq = q_axis.size();
  const std::size_t np = p_axis.size();
  std::vector<double> values(nq * np);
  parallel_for(nq, [&](std::size_t i) {
    for (std::size_t j = 0; j < np; ++j) values[i * np + j] = wigner(rho, {q_axis.at(i), p_axis.at(j)});
  });
  return GridFunction(q_axis, p_axis, std::move(values));
}

double radon(const GridFunction& f, double theta, double t, const RadonOptions& options) {
  check_coverage(f, options.boundary_tol);
  return line_integral(f, theta, t, options);
}

std::vector<double> radon(const GridFunction& f, double theta, std::span<const double> ts,
                          const RadonOptions& options) {
  check_coverage(f, options.boundary_tol);
  std::vector<double> out(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) { out[i] = line_integral(f, theta, ts[i], options); });
  return out;
}

double verify_wigner_radon(const TruncatedState& rho, double theta, const GridFunction& w,
                           const RadonGrid& grid) {
  const auto xs = grid.offsets.nodes();
  const auto lhs = radon(w, theta, xs, grid.radon);
  const auto rhs = quadrature_density(rho, theta, xs);
  double err = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) err = std::max(err, std::abs(lhs[i] - rhs[i]));
  return err;
}

double verify_wigner_radon(const TruncatedState& rho, double theta, const RadonGrid& grid) {
  return verify_wigner_radon(rho, theta, wigner_grid(rho, grid.phase, grid.phase), grid);
}

double verify_gk_radon(const TruncatedState& rho, const TruncatedState& K, double theta,
                       const RadonGrid& grid, const ConvolutionOptions& conv) {
  const GridFunction g = gk_density_grid(rho, K, grid.phase, grid.phase);
  const auto xs = grid.offsets.nodes();
  const auto lhs = radon(g, theta, xs, grid.radon);
  const auto rhs = rotated_marginal_density(rho, K, theta, xs, conv);
  double err = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    err = std::max(err, std::abs(lhs[i] - 2.0 * M_PI * rhs[i]));
  }
  return err;
}

}  // namespace quadsuite
