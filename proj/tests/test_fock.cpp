#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "quadsuite/errors.hpp"
#include "quadsuite/fock.hpp"
#include "quadsuite/grid.hpp"
#include "quadsuite/interval_set.hpp"

using namespace quadsuite;

TEST_CASE("interval sets validate and measure") {
  auto s = IntervalSet({{2.0, 3.0}, {-1.0, 0.5}});
  CHECK(s.intervals().front().lo == -1.0);
  CHECK(s.lebesgue() == doctest::Approx(2.5));
  CHECK(s.contains(2.5));
  CHECK_FALSE(s.contains(1.0));
  CHECK(s.is_bounded());
  CHECK(IntervalSet::real_line().is_real_line());
  CHECK(std::isinf(IntervalSet::at_least(0.0).lebesgue()));
  CHECK_THROWS_AS(IntervalSet({{0.0, 2.0}, {1.0, 3.0}}), ValidationError);
  CHECK_THROWS_AS(IntervalSet::single(1.0, 1.0), ValidationError);
  CHECK_NOTHROW(IntervalSet({{0.0, 1.0}, {1.0, 2.0}}));

  auto p = IntervalSet::parse("-inf:0.5");
  CHECK(std::isinf(p.intervals()[0].lo));
  CHECK(p.intervals()[0].hi == 0.5);
  CHECK_THROWS_AS(IntervalSet::parse("1:x"), ValidationError);

  auto c = s.shifted(1.0).clipped(0.0, 3.5);
  CHECK(c.lebesgue() == doctest::Approx(2.0));
}

TEST_CASE("axes snap to the lattice") {
  Axis a(-1.0, 1.0, 0.25);
  CHECK(a.size() == 9);
  CHECK(a.at(8) == doctest::Approx(1.0));
  auto b = Axis::parse("-6:6:0.02");
  CHECK(b.size() == 601);
  CHECK_THROWS_AS(Axis(0.0, 1.0, -0.1), ValidationError);
  CHECK_THROWS_AS(Axis::parse("0:1"), ValidationError);
  CHECK_THROWS_AS(GridFunction(a, std::vector<double>(3)), ValidationError);
}

TEST_CASE("hermite functions match high-precision reference values") {
  CHECK(hermite_function(10, 0.5) == doctest::Approx(0.24565730461572117697).epsilon(1e-13));
  CHECK(hermite_function(5, 1.3) == doctest::Approx(-0.39939146281375076567).epsilon(1e-13));
  CHECK(hermite_function(12, -2.1) == doctest::Approx(-0.27054871982395711085).epsilon(1e-13));
  CHECK(std::abs(hermite_function(7, 0.0)) < 1e-300);
  CHECK(hermite_function(30, 3.0) == doctest::Approx(0.19565843913223881146).epsilon(1e-12));
}

TEST_CASE("hermite functions agree with the direct formula") {
  for (int n : {0, 1, 2, 5, 9, 17, 25}) {
    for (double x : {-4.0, -1.3, 0.0, 0.7, 2.2, 5.1}) {
      double ref = static_cast<double>(oracle::hermite_function_direct(n, x));
      CHECK(hermite_function(n, x) == doctest::Approx(ref).epsilon(1e-11).scale(1e-14));
    }
  }
  auto batch = hermite_functions(20, 1.1);
  for (int n = 0; n < 20; ++n) CHECK(batch[n] == doctest::Approx(hermite_function(n, 1.1)));
}

TEST_CASE("hermite functions stay finite far out and for large index") {
  auto v = hermite_functions(1500, 40.0);
  for (double h : v) CHECK(std::isfinite(h));
  CHECK(std::abs(v[0]) < 1e-300);
  CHECK(std::isfinite(hermite_function(2000, 10.0)));
  CHECK_THROWS_AS(hermite_polynomial(4000, 1e3), RangeError);
  CHECK(hermite_polynomial(3, 2.0) == doctest::Approx(40.0));
}

TEST_CASE("overlaps form the identity on the line and match a reference integral") {
  auto full = overlap_matrix(IntervalSet::real_line(), 12);
  CHECK((full - RMatrix::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-12);

  auto unit = IntervalSet::single(-1.0, 1.0);
  // int_{-1}^{1} h_1^2 = int 2 x^2 e^{-x^2} / sqrt(pi)
  CHECK(overlap(unit, 1, 1) == doctest::Approx(0.427593295529120166).epsilon(1e-13));

  auto X = IntervalSet({{-2.0, -0.5}, {0.3, 1.7}});
  auto M = overlap_matrix(X, 8);
  CHECK(M == M.transpose());
  for (int n : {0, 3, 7}) {
    for (int m : {1, 3, 6}) {
      auto f = [&](double x) {
        return static_cast<double>(oracle::hermite_function_direct(n, x) *
                                   oracle::hermite_function_direct(m, x));
      };
      double ref = oracle::simpson(f, -2.0, -0.5) + oracle::simpson(f, 0.3, 1.7);
      CHECK(M(n, m) == doctest::Approx(ref).epsilon(1e-10).scale(1e-12));
    }
  }
}

TEST_CASE("truncated states enforce density-matrix invariants") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  CHECK_NOTHROW(TruncatedState::from_matrix(m));
  m(0, 1) = 0.1;
  CHECK_THROWS_AS(TruncatedState::from_matrix(m), ValidationError);  // not Hermitian
  m(1, 0) = 0.1;
  m(0, 0) = 0.6;
  CHECK_THROWS_AS(TruncatedState::from_matrix(m), ValidationError);  // trace
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(TruncatedState::from_matrix(neg), ValidationError);  // not positive
}

TEST_CASE("state families") {
  auto n3 = number_state(3, 6);
  CHECK(n3(3, 3).real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(number_state(6, 6), ValidationError);

  auto coh = make_state(CoherentSpec{{1.0, 0.5}}, 30);
  CHECK(coh.leakage() < 1e-12);
  CHECK_FALSE(coh.leaky());
  // Poisson photon statistics with mean |alpha|^2.
  double mean = 0.0;
  for (int n = 0; n < 30; ++n) mean += n * coh(n, n).real();
  CHECK(mean == doctest::Approx(1.25).epsilon(1e-10));

  auto cut = make_state(CoherentSpec{{3.0, 0.0}}, 8);
  CHECK(cut.leaky());
  CHECK(cut.matrix().trace().real() == doctest::Approx(1.0));

  auto sq = make_state(SqueezedSpec{0.4, 0.0}, 60);
  CHECK(sq.leakage() < 1e-10);
  for (int n = 1; n < 60; n += 2) CHECK(std::abs(sq(n, n)) < 1e-15);
  // <N> = sinh^2 r
  double nbar = 0.0;
  for (int n = 0; n < 60; ++n) nbar += n * sq(n, n).real();
  CHECK(nbar == doctest::Approx(std::pow(std::sinh(0.4), 2)).epsilon(1e-10));
}

TEST_CASE("rotation and parity are group actions") {
  std::mt19937_64 rng(11);
  auto rho = oracle::random_mixed(rng, 7);
  auto a = rotate_state(rotate_state(rho, 0.4), 0.9);
  auto b = rotate_state(rho, 1.3);
  CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() < 1e-14);
  auto full = rotate_state(rho, 2 * M_PI);
  CHECK((full.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-13);
  // Rotation by pi is the parity operator.
  auto pi = rotate_state(rho, M_PI);
  CHECK((pi.matrix() - parity_conjugate(rho).matrix()).cwiseAbs().maxCoeff() < 1e-13);
  auto twice = parity_conjugate(parity_conjugate(rho));
  CHECK((twice.matrix() - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("padding keeps the state") {
  auto rho = number_state(2, 4).padded(9);
  CHECK(rho.dim() == 9);
  CHECK(rho(2, 2).real() == 1.0);
  CHECK_THROWS_AS(number_state(2, 4).padded(3), DomainError);
}
