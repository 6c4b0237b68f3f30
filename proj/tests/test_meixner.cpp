#include <doctest.h>

#include <cmath>

#include "qou/meixner.hpp"

using namespace qou;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("closed-form evaluations of L_k") {
  // L_0 = 1
  for (long long n : {0LL, 1LL, 5LL, 100LL})
    CHECK(eval_L(0, n, 1.3, PrecisionMode::Double) == doctest::Approx(1.0));

  // beta = ln 2: L_1(n) = (1/2)(1 - n)
  CHECK(eval_L(1, 0, kLn2, PrecisionMode::Double) == doctest::Approx(0.5));
  CHECK(eval_L(1, 3, kLn2, PrecisionMode::Double) == doctest::Approx(-1.0));

  // L_k(0) = e^{-k beta}
  for (int k : {1, 2, 5, 12})
    CHECK(eval_L(k, 0, 0.8, PrecisionMode::Double) ==
          doctest::Approx(std::exp(-0.8 * k)));

  CHECK_THROWS_AS(eval_L(13, 5, 1.0, PrecisionMode::Double), domain_error);
  CHECK_THROWS_AS(eval_L(-1, 5, 1.0, PrecisionMode::Double), domain_error);
}

TEST_CASE("extended precision agrees with double for small degrees") {
  for (int k : {0, 3, 7, 12})
    for (long long n : {0LL, 4LL, 37LL, 150LL})
      for (double beta : {0.5, 1.0, 2.0}) {
        const double d = eval_L(k, n, beta, PrecisionMode::Double);
        const double x = eval_L(k, n, beta, PrecisionMode::Extended);
        CHECK(std::abs(d - x) <=
              1e-10 * std::max({std::abs(d), std::abs(x), 1e-30}));
      }
  // extended mode handles k > 12
  CHECK(std::isfinite(eval_L(20, 200, 2.0, PrecisionMode::Extended)));
}

TEST_CASE("orthogonality sums in closed form at beta = ln 2") {
  CHECK(orthogonality_sum(0, 0, kLn2, 1e-11) == doctest::Approx(2.0));
  CHECK(std::abs(orthogonality_sum(1, 0, kLn2, 1e-11)) < 1e-10);
  CHECK(orthogonality_sum(1, 1, kLn2, 1e-11) == doctest::Approx(1.0));
}

TEST_CASE("orthogonality across the grid") {
  for (double beta : {0.5, 1.0, 2.0}) {
    const double q = std::exp(-beta);
    for (int m = 0; m <= 6; ++m)
      for (int l = 0; l <= 6; ++l) {
        const double sum = orthogonality_sum(m, l, beta, 1e-11);
        const double target = (m == l) ? std::exp(-m * beta) / (1.0 - q) : 0.0;
        const double scale = std::exp(-m * beta) / (1.0 - q);
        CHECK(std::abs(sum - target) <= 1e-8 * scale);
      }
  }
}

TEST_CASE("weighted power sums") {
  CHECK(weighted_power_sum(0.0, kLn2, 1e-13) == doctest::Approx(2.0));
  CHECK(weighted_power_sum(1.0, kLn2, 1e-13) == doctest::Approx(2.0));
  // closed forms q/(1-q)^2 and q(1+q)/(1-q)^3
  for (double beta : {0.5, 1.0, 2.0}) {
    const double q = std::exp(-beta);
    CHECK(weighted_power_sum(1.0, beta, 1e-13) ==
          doctest::Approx(q / ((1 - q) * (1 - q))).epsilon(1e-12));
    CHECK(weighted_power_sum(2.0, beta, 1e-13) ==
          doctest::Approx(q * (1 + q) / std::pow(1 - q, 3)).epsilon(1e-12));
  }
  // s = 1, beta = 1: e/(e-1)^2
  const double e = std::exp(1.0);
  CHECK(weighted_power_sum(1.0, 1.0, 1e-13) ==
        doctest::Approx(e / ((e - 1) * (e - 1))).epsilon(1e-12));
}

TEST_CASE("Gamma sandwich: strict inside, boundary flagged at s = 1") {
  BoundGrid grid;
  grid.s = {1.0, 1.0 + 1e-6, 1.5, 2.0, 10.0, 50.0};
  auto rep = verify_bounds(BoundKind::GammaSandwich, grid);
  // s = 1 hits the upper bound exactly and is flagged, not failed
  CHECK(rep.grid[0].boundary);
  for (size_t i = 1; i < rep.grid.size(); ++i) {
    CHECK(!rep.grid[i].boundary);
    CHECK(rep.grid[i].slack > 0.0);
  }
  CHECK(rep.passed);
  // lower bound value at s = 1: sqrt(2 pi)/e < 1
  CHECK(std::exp(rep.grid[0].lower) == doctest::Approx(0.92213700).epsilon(1e-7));

  BoundGrid bad;
  bad.s = {0.5};
  CHECK_THROWS_AS(verify_bounds(BoundKind::GammaSandwich, bad), domain_error);
}

TEST_CASE("power-sum sandwich example values at s = 1, beta = 1") {
  BoundGrid grid;
  grid.s = {1.0};
  grid.beta = {1.0};
  auto rep = verify_bounds(BoundKind::PowerSumSandwich, grid);
  REQUIRE(rep.grid.size() == 1);
  const auto& pt = rep.grid[0];
  CHECK(std::exp(pt.lower) == doctest::Approx(0.169610).epsilon(1e-4));
  CHECK(std::exp(pt.value) == doctest::Approx(0.920673).epsilon(1e-5));
  CHECK(std::exp(pt.upper) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.passed);
}

TEST_CASE("pointwise bound example and grid") {
  // |L_1(5)| = 2 <= max(5, 1) = 5 at beta = ln 2
  CHECK(std::abs(eval_L(1, 5, kLn2, PrecisionMode::Double)) ==
        doctest::Approx(2.0));
  BoundGrid grid;
  grid.k_max = 14;  // crosses into the Extended regime
  grid.n_max = 60;
  grid.beta = {0.5, 2.0};
  auto rep = verify_bounds(BoundKind::MeixnerPointwise, grid);
  CHECK(rep.passed);
}

TEST_CASE("leading-order ratio of L_k at large n") {
  // L_k(n)/n^k -> (-1)^k (e^beta - 1)^k e^{-k beta}/k!
  for (double beta : {0.5, 1.0}) {
    for (int k = 1; k <= 6; ++k) {
      const long long n = 10000;
      double lim = std::pow(-(std::expm1(beta)), k) * std::exp(-k * beta);
      for (int t = 2; t <= k; ++t) lim /= t;
      const double ratio = eval_L(k, n, beta, PrecisionMode::Double) /
                           std::pow(double(n), k);
      CHECK(std::abs(ratio - lim) <= 0.01 * std::abs(lim));
    }
  }
}
