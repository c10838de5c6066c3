#include "quadsuite/dawson.hpp"

#include <cmath>

#include "quadsuite/errors.hpp"

namespace quadsuite {

namespace {

// Maclaurin series sum (-1)^k 2^k t^(2k+1) / (2k+1)!!, for small |t|.
double dawson_maclaurin(double t) {
  const double t2 = t * t;
  double term = t;
  double sum = t;
  for (int k = 1; k < 60; ++k) {
    term *= -2.0 * t2 / (2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// exp(-t^2) sum_k t^(2k+1) / (k! (2k+1)); all terms positive.
double dawson_positive_series(double t) {
  const double t2 = t * t;
  double power = t;  // t^(2k+1) / k!
  double sum = t;
  for (int k = 1; k < 400; ++k) {
    power *= t2 / k;
    const double term = power / (2.0 * k + 1.0);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(-t2) * sum;
}

// Asymptotic expansion 1/(2t) sum_k (2k-1)!! / (2 t^2)^k, truncated at its smallest term.
double dawson_asymptotic(double t) {
  const double inv = 1.0 / (2.0 * t * t);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * inv;
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / (2.0 * t);
}

}  // namespace

double dawson(double t) {
  if (std::isnan(t)) return t;
  const double a = std::abs(t);
  double value = 0.0;
  if (a < 0.2) {
    value = dawson_maclaurin(a);
  } else if (a < 6.5) {
    value = dawson_positive_series(a);
  } else {
    value = dawson_asymptotic(a);
  }
  return t < 0.0 ? -value : value;
}

std::vector<double> dawson_derivatives(double t, int order) {
  if (order < 0) throw DomainError("dawson_derivatives: order must be >= 0");
  std::vector<double> d(static_cast<std::size_t>(order) + 1);
  d[0] = dawson(t);
  if (order >= 1) d[1] = 1.0 - 2.0 * t * d[0];
  for (int k = 1; k < order; ++k) {
    d[k + 1] = -2.0 * t * d[k] - 2.0 * k * d[k - 1];
  }
  return d;
}

}  // namespace quadsuite
