#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles.hpp"
#include "quadsuite/errors.hpp"
#include "quadsuite/quadrature.hpp"

using namespace quadsuite;

namespace {

double normal_cdf(double x, double mean, double var) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * var));
}

double density_moment(const TruncatedState& rho, double theta, int k, double half = 12.0) {
  return oracle::simpson(
      [&](double x) { return std::pow(x, k) * quadrature_density(rho, theta, x); }, -half, half,
      6000);
}

}  // namespace

TEST_CASE("quadrature matrices are Hermitian and rotate Q into P") {
  auto q = quadrature_matrix(0.0, 10).matrix;
  auto p = quadrature_matrix(M_PI / 2, 10).matrix;
  auto t = quadrature_matrix(0.7, 10).matrix;
  CHECK((q - q.adjoint()).norm() < 1e-15);
  CHECK((p - p.adjoint()).norm() < 1e-15);
  CHECK((t - (std::cos(0.7) * q + std::sin(0.7) * p)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(q(2, 3).real() == doctest::Approx(std::sqrt(1.5)));
}

TEST_CASE("expm_hermitian agrees with a generic matrix exponential") {
  auto h = quadrature_matrix(0.3, 16).matrix;
  CMatrix ref = (Complex(0.0, 0.8) * h).exp();
  CHECK((expm_hermitian(h, 0.8) - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("number-state densities are hermite squares at every angle") {
  for (int n : {0, 1, 4}) {
    auto rho = number_state(n, 8);
    for (double th : {0.0, 0.9, 2.5}) {
      for (double x : {-2.0, -0.3, 0.0, 1.4}) {
        double h = static_cast<double>(oracle::hermite_function_direct(n, x));
        CHECK(quadrature_density(rho, th, x) == doctest::Approx(h * h).epsilon(1e-12).scale(1e-14));
      }
    }
  }
}

TEST_CASE("coherent states give shifted gaussians with the rotated mean") {
  const Complex alpha(0.8, -0.6);
  auto rho = make_state(CoherentSpec{alpha}, 40);
  const double q = std::sqrt(2.0) * alpha.real(), p = std::sqrt(2.0) * alpha.imag();
  for (double th : {0.0, M_PI / 6, 1.2, M_PI / 2, 3.0}) {
    const double mean = q * std::cos(th) + p * std::sin(th);
    for (double x : {-1.0, 0.2, mean, 1.9}) {
      double ref = std::exp(-(x - mean) * (x - mean)) / std::sqrt(M_PI);
      CHECK(quadrature_density(rho, th, x) == doctest::Approx(ref).epsilon(1e-10));
    }
    auto X = IntervalSet::single(-0.5, 1.0);
    double pref = normal_cdf(1.0, mean, 0.5) - normal_cdf(-0.5, mean, 0.5);
    CHECK(quadrature_probability(rho, th, X) == doctest::Approx(pref).epsilon(1e-10));
    CHECK(quadrature_moment(rho, th, 1) == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("squeezed vacuum quadrature variances") {
  const double r = 0.5;
  auto rho = make_state(SqueezedSpec{r, 0.0}, 80);
  CHECK(quadrature_moment(rho, 0.0, 2) == doctest::Approx(std::exp(-2 * r) / 2).epsilon(1e-10));
  CHECK(quadrature_moment(rho, M_PI / 2, 2) == doctest::Approx(std::exp(2 * r) / 2).epsilon(1e-10));
}

TEST_CASE("densities are covariant under rotations") {
  std::mt19937_64 rng(3);
  auto rho = oracle::random_mixed(rng, 9);
  for (double th : {0.4, 2.2, 5.0}) {
    auto turned = rotate_state(rho, -th);
    for (double x : {-1.7, 0.1, 2.3}) {
      CHECK(quadrature_density(rho, th, x) ==
            doctest::Approx(quadrature_density(turned, 0.0, x)).epsilon(1e-12).scale(1e-14));
    }
  }
}

TEST_CASE("densities are normalised and non-negative; probabilities are additive") {
  std::mt19937_64 rng(5);
  auto rho = oracle::random_mixed(rng, 10);
  for (double th : {0.0, 1.1, 4.0}) {
    CHECK(density_moment(rho, th, 0) == doctest::Approx(1.0).epsilon(1e-10));
    for (double x = -7.0; x <= 7.0; x += 0.37) CHECK(quadrature_density(rho, th, x) >= -1e-14);
    CHECK(quadrature_probability(rho, th, IntervalSet::real_line()) == doctest::Approx(1.0));
    double left = quadrature_probability(rho, th, IntervalSet::at_most(0.3));
    double right = quadrature_probability(rho, th, IntervalSet::at_least(0.3));
    CHECK(left + right == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("moments from the operator agree with moments of the density") {
  std::mt19937_64 rng(9);
  auto rho = oracle::random_pure(rng, 5, 6);
  auto ms = quadrature_moments(rho, 0.8, 6);
  REQUIRE(ms.size() == 7);
  CHECK(ms[0] == doctest::Approx(1.0));
  for (int k = 1; k <= 6; ++k) {
    CHECK(ms[k] == doctest::Approx(density_moment(rho, 0.8, k)).epsilon(1e-9).scale(1e-12));
  }
  CHECK_THROWS_AS(quadrature_moment(rho, 0.0, kMaxMomentOrder + 1), RangeError);
}

TEST_CASE("canonical commutator on the untouched block") {
  for (double th : {M_PI / 6, M_PI / 2, 2.0}) {
    auto block = commutator_block(th, 40);
    CMatrix expect = Complex(0.0, std::sin(th)) * CMatrix::Identity(38, 38);
    CHECK((block - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
  // The corner shows the truncation artifact.
  auto full = commutator_matrix(M_PI / 2, 10);
  CHECK(std::abs(full(9, 9) - Complex(0.0, 1.0)) > 1.0);
}

TEST_CASE("uncertainty bound holds for random states and is attained by the gaussian family") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    auto rho = i % 2 ? oracle::random_mixed(rng, 12) : oracle::random_pure(rng, 12, 12);
    for (double th : {0.3, M_PI / 2, 2.4}) {
      CHECK(uncertainty_product(rho, th) >= std::pow(std::sin(th), 2) / 4 - 1e-9);
    }
  }
  for (double th : {M_PI / 6, M_PI / 4, M_PI / 2}) {
    auto g = saturating_gaussian(th, 0.5, 60);
    CHECK(uncertainty_product(g, th) == doctest::Approx(std::pow(std::sin(th), 2) / 4).epsilon(1e-6));
  }
}

TEST_CASE("gaussian family reproduces the requested covariance") {
  auto g = gaussian_with_covariance(0.8, 0.3, 70);
  CHECK(quadrature_moment(g, 0.0, 2) == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(quadrature_moment(g, M_PI / 2, 2) == doctest::Approx((0.25 + 0.09) / 0.8).epsilon(1e-9));
  // Var(Q_{pi/4}) = (vq + vp)/2 + c
  double expect = 0.5 * (0.8 + 0.34 / 0.8) + 0.3;
  CHECK(quadrature_moment(g, M_PI / 4, 2) == doctest::Approx(expect).epsilon(1e-9));
  CHECK_THROWS_AS(gaussian_with_covariance(-1.0, 0.0, 10), DomainError);
}

TEST_CASE("trace pair") {
  auto I = IntervalSet::single(0.0, 1.0);
  // Independent evaluation: tr over the truncation of O_X U O_Y U^*.
  const int dim = 30;
  const double th = 1.0;
  RMatrix o = overlap_matrix(I, dim);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) u(n, n) = std::polar(1.0, -n * th);
  CMatrix prod = o.cast<Complex>() * u * o.cast<Complex>() * u.adjoint();
  CHECK(trace_pair(I, I, th, dim) == doctest::Approx(prod.trace().real()).epsilon(1e-12));

  double d100 = trace_pair(I, I, M_PI / 2, 100);
  double d200 = trace_pair(I, I, M_PI / 2, 200);
  CHECK(d200 < d100);
  CHECK(d200 == doctest::Approx(1.0 / (2 * M_PI)).epsilon(0.02));
  CHECK_THROWS_AS(trace_pair(IntervalSet::at_least(0.0), I, 1.0, 10), DomainError);
  CHECK_THROWS_AS(trace_pair(I, I, 0.0, 10), DomainError);
}

TEST_CASE("weyl relation on the central block") {
  for (double q : {-0.5, 0.0, 0.5}) {
    for (double p : {-0.5, 0.25, 0.5}) CHECK(weyl_relation_deviation(q, p, 80) <= 1e-6);
  }
}
