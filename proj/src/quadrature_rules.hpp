#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace quadsuite::detail {

/// Gauss-Legendre rule on [-1, 1] with N nodes (Newton iteration on P_N).
template <std::size_t N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendre() {
    for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
      double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= N; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(N) * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[N - 1 - i] = x;
      weights[i] = w;
      weights[N - 1 - i] = w;
    }
  }

  static const GaussLegendre& get() {
    static const GaussLegendre rule;
    return rule;
  }
};

using GL20 = GaussLegendre<20>;

/// Splits [a, b] into the fewest equal panels no wider than max_width.
inline std::vector<double> panel_edges(double a, double b, double max_width) {
  auto count = static_cast<std::size_t>(std::ceil((b - a) / max_width - 1e-12));
  if (count == 0) count = 1;
  std::vector<double> edges(count + 1);
  for (std::size_t k = 0; k <= count; ++k) edges[k] = a + (b - a) * static_cast<double>(k) / count;
  edges.back() = b;
  return edges;
}

}  // namespace quadsuite::detail
