#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "quadsuite/errors.hpp"
#include "quadsuite/moments.hpp"
#include "quadsuite/quadrature.hpp"

using namespace quadsuite;

TEST_CASE("gaussian moments") {
  auto g = gaussian_moments(0.0, 1.0, 8);
  const double ref[] = {1, 0, 1, 0, 3, 0, 15, 0, 105};
  for (int k = 0; k <= 8; ++k) CHECK(g[k] == doctest::Approx(ref[k]));
  auto s = gaussian_moments(1.5, 0.2, 3);
  CHECK(s[2] == doctest::Approx(2.25 + 0.2));
  CHECK(s[3] == doctest::Approx(1.5 * 1.5 * 1.5 + 3 * 1.5 * 0.2));
}

TEST_CASE("moment sequences are validated") {
  CHECK_THROWS_AS(MomentSequence({0.9, 0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(MomentSequence({1.0, 2.0, 1.0}), ValidationError);  // variance < 0
  CHECK_THROWS_AS(MomentSequence({}), ValidationError);
  CHECK_NOTHROW(MomentSequence({1.0, 0.3, 0.09}));  // point mass
}

TEST_CASE("convolution of gaussians adds means and variances") {
  auto a = gaussian_moments(0.5, 0.3, 10);
  auto b = gaussian_moments(-0.2, 0.9, 10);
  auto c = convolved_moments(a, b, 10);
  auto ref = gaussian_moments(0.3, 1.2, 10);
  for (int k = 0; k <= 10; ++k) CHECK(c[k] == doctest::Approx(ref[k]).epsilon(1e-13));
}

TEST_CASE("inversion undoes convolution") {
  std::mt19937_64 rng(61);
  auto rho = oracle::random_pure(rng, 3, 4);
  MomentSequence p(quadrature_moments(rho, 0.4, 12));
  for (double var : {0.1, 0.5, 2.0}) {
    auto mu = gaussian_moments(0.0, var, 12);
    auto back = invert_moments(convolved_moments(mu, p, 12), mu);
    for (int k = 0; k <= 12; ++k) {
      CHECK(std::abs(back[k] - p[k]) <= 1e-12 * std::max(1.0, std::abs(p[k])));
    }
  }
}

TEST_CASE("densities from moments") {
  auto vac = vacuum(3);
  auto d = density_from_moments(MomentSequence(quadrature_moments(vac, 0.0, 2)), 2);
  for (double x : {-1.0, 0.0, 0.6}) CHECK(d(x) == doctest::Approx(std::exp(-x * x) / std::sqrt(M_PI)));

  std::mt19937_64 rng(67);
  auto rho = oracle::random_pure(rng, 3, 3);
  auto fit = density_from_moments(MomentSequence(quadrature_moments(rho, 1.2, 4)), 4);
  for (double x : {-1.4, 0.2, 0.9}) {
    CHECK(fit(x) == doctest::Approx(quadrature_density(rho, 1.2, x)).epsilon(1e-9).scale(1e-12));
  }
}

TEST_CASE("sequential demo recovers both channels") {
  std::mt19937_64 rng(71);
  for (const auto& rho : {vacuum(4), number_state(1, 4), oracle::random_pure(rng, 3, 4)}) {
    for (double var : {0.1, 0.5, 2.0}) {
      auto rep = sequential_demo(rho, M_PI / 3, var, var, 12);
      CHECK(rep.first.max_relative_error <= 1e-9);
      CHECK(rep.second.max_relative_error <= 1e-9);
    }
  }
  auto j = to_json(sequential_demo(vacuum(2), 1.0, 0.5, 0.5, 4));
  CHECK(j.contains("first"));
  CHECK_THROWS_AS(sequential_demo(vacuum(2), 1.0, 0.5, 0.5, kMaxDemoMomentOrder + 1), RangeError);
  CHECK_THROWS_AS(sequential_demo(vacuum(2), 1.0, -0.5, 0.5, 4), DomainError);
}
