#include <doctest.h>

#include <cmath>

#include "qou/linalg.hpp"
#include "qou/rng.hpp"
#include "qou/schatten.hpp"
#include "qou/sequences.hpp"

using namespace qou;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("schatten norms of simple operators") {
  const int dim = 6;
  Mat id = Mat::Identity(dim, dim);
  for (double p : {1.0, 2.0, 3.0, 8.0})
    CHECK(schatten_norm(id, p) ==
          doctest::Approx(std::pow(double(dim), 1.0 / p)).epsilon(1e-13));
  CHECK(schatten_norm(id, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0));

  // rho at beta = ln 2, D = 4, p = 1: trace 15/16
  GibbsSpec spec{kLn2, 4, false};
  CHECK(schatten_norm(build_rho(spec), 1.0) ==
        doctest::Approx(15.0 / 16.0).epsilon(1e-14));

  // p = 2 equals the Frobenius norm
  Rng rng(21);
  Mat x(12, 12);
  for (int j = 0; j < 12; ++j)
    for (int i = 0; i < 12; ++i) x(i, j) = rng.cnormal();
  CHECK(schatten_norm(x, 2.0) == doctest::Approx(x.norm()).epsilon(1e-12));

  CHECK_THROWS_AS(schatten_norm(x, 0.5), domain_error);
}

TEST_CASE("unitary invariance and Hoelder monotonicity") {
  Rng rng(33);
  const int dim = 24;
  Mat x(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) x(i, j) = rng.cnormal();
  Mat u = random_unitary(dim, rng);
  Mat v = random_unitary(dim, rng);
  for (double p : {1.0, 2.5, 4.0}) {
    const double a = schatten_norm(x, p);
    const double b = schatten_norm(Mat(u * x * v), p);
    CHECK(std::abs(a - b) <= 1e-10 * a);
  }
  // ||x||_p nonincreasing in p
  double prev = schatten_norm(x, 1.0);
  for (double p : {1.5, 2.0, 3.0, 8.0, 64.0}) {
    const double cur = schatten_norm(x, p);
    CHECK(cur <= prev * (1 + 1e-12));
    prev = cur;
  }
}

TEST_CASE("kosaki norms") {
  // x = I, p = 1, renormalized: trace of rho = 1
  GibbsSpec spec{kLn2, 16, true};
  CHECK(kosaki_norm(Mat(Mat::Identity(16, 16)), 1.0, spec) ==
        doctest::Approx(1.0).epsilon(1e-13));

  // p = 2 equals the direct trace sqrt(Tr(rho^{1/2} x* rho^{1/2} x)) for
  // Hermitian x
  GibbsSpec s2{0.8, 24, false};
  Rng rng(5);
  Mat g(24, 24);
  for (int j = 0; j < 24; ++j)
    for (int i = 0; i < 24; ++i) g(i, j) = rng.cnormal();
  Mat x = 0.5 * (g + g.adjoint());
  RVec rhalf = rho_diag_pow(s2, 0.5);
  Mat inner = rhalf.asDiagonal() * x.adjoint() * rhalf.asDiagonal() * x;
  CHECK(kosaki_norm(x, 2.0, s2) ==
        doctest::Approx(std::sqrt(inner.trace().real())).epsilon(1e-12));

  // x = e0 (x) e0 at beta = ln 2, D = 4, p = 2: (1/2)^{1/2}
  GibbsSpec s4{kLn2, 4, false};
  Mat e00 = Mat::Zero(4, 4);
  e00(0, 0) = 1.0;
  CHECK(kosaki_norm(e00, 2.0, s4) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

  CHECK_THROWS_AS(kosaki_norm(e00, 2.0, s2), domain_error);
}

TEST_CASE("off-diagonal sandwich examples") {
  {
    auto res = sandwich_check({1.0, 0.0, 0.0}, 3.0);
    CHECK(res.mid == doctest::Approx(std::pow(2.0, 1.0 / 3.0)).epsilon(1e-12));
    CHECK(res.lower ==
          doctest::Approx(std::pow(2.0, 1.0 / 3.0) / 3.0).epsilon(1e-12));
    CHECK(res.upper == doctest::Approx(2.0));
    CHECK(res.passed);
  }
  {
    std::vector<double> ones(10, 1.0);
    auto res = sandwich_check(ones, 2.0);
    CHECK(res.mid == doctest::Approx(std::sqrt(20.0)).epsilon(1e-12));
    CHECK(res.upper == doctest::Approx(2.0 * std::sqrt(10.0)).epsilon(1e-12));
    CHECK(res.lower ==
          doctest::Approx(std::sqrt(2.0) * std::sqrt(10.0) / 3.0)
              .epsilon(1e-12));
    CHECK(res.passed);
  }
  {
    auto res = sandwich_check({0.0}, 2.0);
    CHECK(res.mid == 0.0);
    CHECK(res.passed);
  }
}

TEST_CASE("cross-module norm oracle at small scale") {
  const int dim = 64;
  for (double beta : {1.0, 2.0}) {
    GibbsSpec spec{beta, dim, false};
    auto [a, ad] = build_ladder(dim);
    Mat xi0 = Mat::Zero(dim, dim);
    RVec d = rho_diag_pow(spec, 0.5);
    for (int n = 0; n < dim; ++n) xi0(n, n) = d(n);
    Rng rng(91);
    for (int k : {1, 3}) {
      for (int m : {-k, 0, k}) {
        OffDiagonalCoeffs fam;
        fam.k = k;
        fam.m = m;
        Mat x = Mat::Zero(dim, dim);
        for (int i = std::max(0, -m); 2 * i + m <= k; ++i) {
          cxd c = rng.cnormal();
          fam.c[i] = c;
          Mat word = Mat::Identity(dim, dim);
          for (int t = 0; t < i; ++t) word = word * ad.entries;
          for (int t = 0; t < i + m; ++t) word = word * a.entries;
          x += c * (word * xi0);
        }
        for (double p : {2.0, 3.0}) {
          RVec w = rho_diag_pow(spec, 1.0 / (2.0 * p) - 0.25);
          const double svd_route =
              schatten_norm(Mat(w.asDiagonal() * x * w.asDiagonal()), p);
          const double formula =
              std::pow(1.0 - spec.q(), 1.0 / p) *
              std::exp(-m * beta * (1.0 / (2.0 * p) + 0.25)) *
              weighted_lp_norm(fam, p, beta, 1e-12);
          CHECK(std::abs(svd_route - formula) <= 1e-9 * formula);
        }
      }
    }
  }
}

TEST_CASE("Ball-Carlen-Lieb convexity") {
  GibbsSpec spec{1.0, 32, true};
  // y = I: equality
  {
    auto res = bcl_check({Mat(Mat::Identity(32, 32)), OpLabel::General}, 3.0,
                         spec);
    CHECK(res.lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.rhs == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.passed);
  }
  // y = N
  {
    GibbsSpec s64{1.0, 64, true};
    auto res = bcl_check(build_number(64), 2.0, s64);
    CHECK(res.passed);
  }
  // random Hermitian
  Rng rng(3);
  for (int rep = 0; rep < 25; ++rep) {
    Mat g(32, 32);
    for (int j = 0; j < 32; ++j)
      for (int i = 0; i < 32; ++i) g(i, j) = rng.cnormal();
    FockOperator y{Mat(0.5 * (g + g.adjoint())), OpLabel::General};
    for (double p : {2.0, 3.0, 4.0}) CHECK(bcl_check(y, p, spec).passed);
  }
  GibbsSpec unnorm{1.0, 32, false};
  CHECK_THROWS_AS(
      bcl_check({Mat(Mat::Identity(32, 32)), OpLabel::General}, 2.0, unnorm),
      domain_error);
}
