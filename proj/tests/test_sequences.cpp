#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qou/rng.hpp"
#include "qou/sequences.hpp"

using namespace qou;

namespace {
const double kLn2 = std::log(2.0);

OffDiagonalCoeffs single(int k, int m, int i, cxd c = cxd(1, 0)) {
  OffDiagonalCoeffs out;
  out.k = k;
  out.m = m;
  out.set(i, c);
  return out;
}
}  // namespace

TEST_CASE("d coefficients") {
  CHECK(d_coeff(0, 0) == 1.0);
  CHECK(d_coeff(7, 0) == 1.0);
  CHECK(d_coeff(3, 2) == doctest::Approx(std::sqrt(6.0)));
  // log-domain vs exact product across the switchover
  CHECK(d_coeff(100, 3) ==
        doctest::Approx(std::sqrt(100.0 * 99.0 * 98.0)).epsilon(1e-12));
  CHECK(d_coeff(59, 13) ==
        doctest::Approx(std::exp(0.5 * (std::lgamma(60.0) - std::lgamma(47.0))))
            .epsilon(1e-12));
  CHECK_THROWS_AS(d_coeff(3, 4), domain_error);
}

TEST_CASE("index-set admission") {
  OffDiagonalCoeffs c;
  c.k = 4;
  c.m = 2;
  c.set(0, cxd(1, 0));
  c.set(1, cxd(2, 0));          // 2*1+2 = 4 <= 4 admissible
  CHECK_THROWS_AS(c.set(2, cxd(1, 0)), domain_error);  // 2*2+2 > 4
  OffDiagonalCoeffs neg;
  neg.k = 3;
  neg.m = -2;
  CHECK_THROWS_AS(neg.set(1, cxd(1, 0)), domain_error);  // i+m < 0
  neg.set(2, cxd(1, 0));
  neg.validate();
}

TEST_CASE("f evaluations in closed form") {
  // k=1, m=0, c00 = 1: f = 1
  auto f1 = eval_f(single(1, 0, 0), 40);
  for (auto v : f1.values) CHECK(std::abs(v - cxd(1, 0)) < 1e-14);

  // k=2, m=0, c11 = 1: f(n) = n
  auto f2 = eval_f(single(2, 0, 1), 40);
  for (int n = 0; n <= 40; ++n)
    CHECK(std::abs(f2.values[n] - cxd(double(n), 0)) < 1e-12);

  // k=1, m=1, c01 = 1: f(n) = sqrt(n+1)
  auto f3 = eval_f(single(1, 1, 0), 40);
  for (int n = 0; n <= 40; ++n)
    CHECK(std::abs(f3.values[n] - cxd(std::sqrt(n + 1.0), 0)) < 1e-12);

  // n+m < 0 convention
  auto f4 = eval_f(single(2, -1, 1), 10);
  CHECK(f4.values[0] == cxd(0, 0));
}

TEST_CASE("structure maps") {
  // FactorOut on k=1, m=1: g in F_{0,0} with g = 1
  auto g = transform(single(1, 1, 0), FMode::FactorOut);
  CHECK(g.k == 0);
  CHECK(g.m == 0);
  for (int n = 0; n <= 20; ++n) {
    CHECK(std::abs(eval_f_at(g, n) - cxd(1, 0)) < 1e-14);
    CHECK(std::abs(eval_f_at(single(1, 1, 0), n) -
                   std::sqrt(n + 1.0) * eval_f_at(g, n)) < 1e-12);
  }

  // NegativeMirror on k=2, m=-1, c_{1,0} = 1
  auto fam = single(2, -1, 1);
  auto mir = transform(fam, FMode::NegativeMirror);
  CHECK(mir.m == 1);
  CHECK(std::abs(eval_f_at(fam, 0)) == 0.0);
  for (int n = 1; n <= 30; ++n)
    CHECK(std::abs(eval_f_at(fam, n) - eval_f_at(mir, n - 1)) < 1e-11);

  // ShiftUp identity with random coefficients, n <= 100
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    OffDiagonalCoeffs fam2;
    fam2.k = 2 + int(rng.uniform_int(8));
    fam2.m = 1 + int(rng.uniform_int(fam2.k));
    for (int i = 0; 2 * i + fam2.m <= fam2.k; ++i) fam2.c[i] = rng.cnormal();
    auto up = transform(fam2, FMode::ShiftUp);
    CHECK(std::abs(eval_f_at(up, 0)) == 0.0);
    for (int n = 0; n <= 100; ++n) {
      const cxd lhs = std::sqrt(n + 1.0) * eval_f_at(fam2, n);
      const cxd rhs = eval_f_at(up, n + 1);
      CHECK(std::abs(lhs - rhs) <=
            1e-12 * std::max(1.0, std::max(std::abs(lhs), std::abs(rhs))));
    }
  }

  CHECK_THROWS_AS(transform(single(2, 0, 1), FMode::FactorOut), domain_error);
  CHECK_THROWS_AS(transform(single(2, 0, 1), FMode::NegativeMirror),
                  domain_error);
}

TEST_CASE("weighted lp norms in closed form") {
  // f = 1: norm = (1/(1-e^{-beta}))^{1/p}
  for (double beta : {0.5, kLn2, 2.0})
    for (double p : {1.0, 2.0, 3.5, 16.0}) {
      const double target = std::pow(1.0 / (1.0 - std::exp(-beta)), 1.0 / p);
      CHECK(weighted_lp_norm(single(1, 0, 0), p, beta) ==
            doctest::Approx(target).epsilon(1e-11));
    }
  // f = 1, beta = ln 2, p = 2: sqrt(2)
  CHECK(weighted_lp_norm(single(1, 0, 0), 2.0, kLn2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // f(n) = n, beta = 1, p = 2: sqrt(q(1+q)/(1-q)^3)
  const double q = std::exp(-1.0);
  CHECK(weighted_lp_norm(single(2, 0, 1), 2.0, 1.0) ==
        doctest::Approx(std::sqrt(q * (1 + q) / std::pow(1 - q, 3)))
            .epsilon(1e-11));
}

TEST_CASE("constant chain") {
  const double e = std::numbers::e;
  {
    auto cc = constants(1.0);
    // C2 = (1/(1-1/e) + 2e)(e+1)
    CHECK(cc.C2 ==
          doctest::Approx((1.0 / (1.0 - 1.0 / e) + 2.0 * e) * (e + 1.0))
              .epsilon(1e-14));
    CHECK(cc.C1 == doctest::Approx(std::exp(0.5) * cc.C2).epsilon(1e-14));
    CHECK(cc.c_tilde == doctest::Approx(1.0 / (36.0 * e)).epsilon(1e-14));
  }
  for (double beta : {0.5, 1.0, 2.0}) {
    auto cc = constants(beta);
    CHECK(cc.C_tilde / cc.C_of_beta ==
          doctest::Approx(24.0 / (1.0 - std::exp(-beta))).epsilon(1e-13));
    CHECK(cc.C5 ==
          doctest::Approx(std::pow(4.0 * cc.C1, 2) * (cc.C4 + 3.0))
              .epsilon(1e-13));
    CHECK(cc.C3 == doctest::Approx(cc.C1 * cc.C5).epsilon(1e-13));
    CHECK(cc.C_of_beta ==
          doctest::Approx(4.0 * std::exp(1.5 * beta) * cc.C3).epsilon(1e-13));
    // c_p = sqrt(3) (1-e^{-beta})^{-1/2} C_p
    CHECK(cc.cp(4.0) ==
          doctest::Approx(std::sqrt(3.0 / (1.0 - std::exp(-beta))) *
                          std::sqrt(cc.C_of_beta * 4.0))
              .epsilon(1e-13));
  }
}

TEST_CASE("weighted-norm inequality spot checks") {
  // k=2, m=0, c11: p=2 reduces to rhs/lhs = (C(beta) 2)^{k/2} >= 1
  {
    auto chk = main_lemma_check(single(2, 0, 1), 2.0, 1.0);
    CHECK(chk.passed);
    const auto cc = constants(1.0);
    CHECK(chk.rhs / chk.lhs ==
          doctest::Approx(cc.C_of_beta * 2.0).epsilon(1e-10));
  }
  // k=1, m=1, p=4, beta=1 passes with slack > 10
  {
    auto chk = main_lemma_check(single(1, 1, 0), 4.0, 1.0);
    CHECK(chk.passed);
    CHECK(chk.rhs / chk.lhs > 10.0);
  }
  // random families, all admissible m, several p and beta
  Rng rng(7);
  for (int rep = 0; rep < 60; ++rep) {
    OffDiagonalCoeffs fam;
    fam.k = 1 + int(rng.uniform_int(10));
    fam.m = -fam.k + int(rng.uniform_int(2 * fam.k + 1));
    for (int i = std::max(0, -fam.m); 2 * i + fam.m <= fam.k; ++i)
      fam.c[i] = rng.cnormal();
    for (double beta : {0.5, 2.0})
      for (double p : {2.0, 4.0, 16.0}) {
        CHECK(main_lemma_check(fam, p, beta).passed);
        if (fam.m >= 0) CHECK(band_lemma_check(fam, p, beta).passed);
      }
  }
}

TEST_CASE("polynomial lemma checks") {
  // p0 = 1, Plain: lhs = (1/(1-q))^{1/p} <= rhs = (1/(1-q))^{1/2}
  {
    auto chk = poly_lemma_check({cxd(1, 0)}, 4.0, 1.0, PolyLemmaMode::Plain);
    const double q = std::exp(-1.0);
    CHECK(chk.lhs == doctest::Approx(std::pow(1 / (1 - q), 0.25)).epsilon(1e-11));
    CHECK(chk.rhs == doctest::Approx(std::pow(1 / (1 - q), 0.5)).epsilon(1e-11));
    CHECK(chk.passed);
  }
  // p1(n) = n, Plain, p=4, beta=ln2
  CHECK(poly_lemma_check({cxd(0, 0), cxd(1, 0)}, 4.0, kLn2,
                         PolyLemmaMode::Plain)
            .passed);
  // SqrtWeighted, p0 = 1, p=4, beta=1
  CHECK(poly_lemma_check({cxd(1, 0)}, 4.0, 1.0, PolyLemmaMode::SqrtWeighted)
            .passed);
  // random polynomials
  Rng rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<cxd> poly(1 + rng.uniform_int(6));
    for (auto& c : poly) c = rng.cnormal();
    for (double p : {2.0, 4.0, 8.0}) {
      CHECK(poly_lemma_check(poly, p, 1.0, PolyLemmaMode::Plain).passed);
      CHECK(poly_lemma_check(poly, p, 1.0, PolyLemmaMode::SqrtWeighted).passed);
    }
  }
}
