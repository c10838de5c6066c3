#pragma once

#include <vector>

namespace quadsuite {

/// Dawson's integral F(t) = exp(-t^2) int_0^t exp(y^2) dy, relative error ~1e-14.
double dawson(double t);

/// F, F', ..., F^(order) at t, from F' = 1 - 2tF and
/// F^(k+1) = -2t F^(k) - 2k F^(k-1).
std::vector<double> dawson_derivatives(double t, int order);

}  // namespace quadsuite
