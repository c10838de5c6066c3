#include "quadsuite/moments.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "quadsuite/errors.hpp"
#include "quadsuite/quadrature.hpp"

namespace quadsuite {

namespace {

// Pascal triangle rows 0..k_max; exact in double for k_max <= 64.
std::vector<std::vector<double>> binomials(int k_max) {
  std::vector<std::vector<double>> c(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    auto& row = c[static_cast<std::size_t>(k)];
    row.assign(static_cast<std::size_t>(k) + 1, 1.0);
    for (int n = 1; n < k; ++n) {
      row[static_cast<std::size_t>(n)] =
          c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n - 1)] +
          c[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n)];
    }
  }
  return c;
}

MomentChannel run_channel(const TruncatedState& rho, double theta, double var, int k_max) {
  MomentChannel ch;
  ch.theta = theta;
  ch.smearing_var = var;
  ch.truth = quadrature_moments(rho, theta, k_max);
  const MomentSequence smear = gaussian_moments(0.0, var, k_max);
  const MomentSequence smeared = convolved_moments(smear, MomentSequence(ch.truth), k_max);
  ch.smeared = smeared.values();
  ch.recovered = invert_moments(smeared, smear).values();
  for (int k = 0; k <= k_max; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double err = std::abs(ch.recovered[i] - ch.truth[i]) / std::max(1.0, std::abs(ch.truth[i]));
    ch.max_relative_error = std::max(ch.max_relative_error, err);
  }
  return ch;
}

}  // namespace

MomentSequence::MomentSequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("moments: sequence is empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("moments: non-finite entry");
  }
  if (std::abs(values_[0] - 1.0) > 1e-12) throw ValidationError("moments: m[0] must equal 1");
  const int half = k_max() / 2;
  Eigen::MatrixXd hankel(half + 1, half + 1);
  for (int i = 0; i <= half; ++i) {
    for (int j = 0; j <= half; ++j) hankel(i, j) = values_[static_cast<std::size_t>(i + j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hankel, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  if (ev.minCoeff() < -1e-9 * std::max(1.0, ev.maxCoeff())) {
    throw ValidationError("moments: Hankel matrix is not positive semidefinite");
  }
}

MomentSequence gaussian_moments(double mean, double var, int k_max) {
  if (!(var >= 0.0)) throw DomainError("gaussian_moments: variance must be >= 0");
  if (k_max < 0) throw DomainError("gaussian_moments: k_max must be >= 0");
  const auto c = binomials(k_max);
  // Central moments of N(0, var): (j-1)!! var^(j/2) for even j.
  std::vector<double> central(static_cast<std::size_t>(k_max) + 1, 0.0);
  central[0] = 1.0;
  for (int j = 2; j <= k_max; j += 2) {
    central[static_cast<std::size_t>(j)] = central[static_cast<std::size_t>(j - 2)] * (j - 1) * var;
  }
  std::vector<double> raw(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    double total = 0.0;
    for (int j = 0; j <= k; j += 2) {
      total += c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] * std::pow(mean, k - j) *
               central[static_cast<std::size_t>(j)];
    }
    raw[static_cast<std::size_t>(k)] = total;
  }
  return MomentSequence(std::move(raw));
}

MomentSequence convolved_moments(const MomentSequence& mu, const MomentSequence& p, int k_max) {
  if (k_max < 0 || mu.k_max() < k_max || p.k_max() < k_max) {
    throw ValidationError("convolved_moments: inputs do not cover k_max = " + std::to_string(k_max));
  }
  const auto c = binomials(k_max);
  std::vector<double> s(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    long double total = 0.0L;
    for (int n = 0; n <= k; ++n) {
      total += static_cast<long double>(c[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]) * mu[k - n] * p[n];
    }
    s[static_cast<std::size_t>(k)] = static_cast<double>(total);
  }
  return MomentSequence(std::move(s));
}

MomentSequence invert_moments(const MomentSequence& s, const MomentSequence& mu) {
  if (s.k_max() != mu.k_max()) throw ValidationError("invert_moments: length mismatch");
  const int k_max = s.k_max();
  const auto c = binomials(k_max);
  // Extended precision keeps the earlier p[n] unrounded while they feed later rows.
  std::vector<long double> p(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    long double total = s[k];
    for (int n = 0; n < k; ++n) {
      total -= static_cast<long double>(c[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]) * mu[k - n] *
               p[static_cast<std::size_t>(n)];
    }
    p[static_cast<std::size_t>(k)] = total;  // mu[0] == 1
  }
  return MomentSequence(std::vector<double>(p.begin(), p.end()));
}

double GaussianPolynomialDensity::operator()(double x) const {
  double poly = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) poly = poly * x + *it;
  return std::exp(-x * x) * poly;
}

GaussianPolynomialDensity density_from_moments(const MomentSequence& moments, int degree) {
  if (degree < 0 || moments.k_max() < degree) {
    throw ValidationError("density_from_moments: need moments up to the polynomial degree");
  }
  // int x^m exp(-x^2) dx = Gamma((m+1)/2) for even m, 0 for odd m.
  auto gauss = [](int m) { return m % 2 ? 0.0 : std::tgamma(0.5 * (m + 1)); };
  Eigen::MatrixXd a(degree + 1, degree + 1);
  Eigen::VectorXd b(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    for (int j = 0; j <= degree; ++j) a(k, j) = gauss(k + j);
    b(k) = moments[k];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  return {std::vector<double>(c.data(), c.data() + c.size())};
}

SequentialReport sequential_demo(const TruncatedState& rho, double theta, double mu_var,
                                 double nu_var, int k_max) {
  if (k_max < 0 || k_max > kMaxDemoMomentOrder) {
    throw RangeError("sequential_demo: k_max must lie in [0, 16]");
  }
  SequentialReport report;
  report.k_max = k_max;
  report.first = run_channel(rho, 0.0, mu_var, k_max);
  report.second = run_channel(rho, theta, nu_var, k_max);
  return report;
}

nlohmann::json to_json(const SequentialReport& report) {
  auto channel = [](const MomentChannel& ch) {
    return nlohmann::json{{"theta", ch.theta},
                          {"smearing_var", ch.smearing_var},
                          {"ground_truth", ch.truth},
                          {"smeared", ch.smeared},
                          {"recovered", ch.recovered},
                          {"max_relative_error", ch.max_relative_error}};
  };
  return {{"k_max", report.k_max}, {"first", channel(report.first)}, {"second", channel(report.second)}};
}

}  // namespace quadsuite
