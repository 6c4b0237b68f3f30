#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qou/fock.hpp"
#include "qou/hyper.hpp"
#include "qou/rng.hpp"
#include "qou/schatten.hpp"
#include "qou/semigroup.hpp"
#include "qou/sequences.hpp"

using namespace qou;

namespace {

struct Setup {
  GibbsSpec spec;
  OUParams params;
  EigenBasis basis;
};

Setup make_setup(double beta, int dim, int cap) {
  GibbsSpec spec{beta, dim, false};
  auto params = solve_params(beta, ParamBranch::CanonicalCFL);
  auto basis = build_eigenbasis(spec, params, cap);
  return {spec, params, std::move(basis)};
}

}  // namespace

TEST_CASE("zero-mean projection") {
  auto s = make_setup(1.0, 48, 3);
  const int i0 = s.basis.find(0, 0);
  // xi_{0,0} -> 0
  HSVector out = zero_mean_project(s.basis.vectors[i0], s.basis);
  CHECK(out.norm() < 1e-12);
  // xi_{1,0} unchanged
  const int i1 = s.basis.find(1, 0);
  HSVector out1 = zero_mean_project(s.basis.vectors[i1], s.basis);
  CHECK((out1.mat - s.basis.vectors[i1].mat).norm() < 1e-8);
  // random x: exactly orthogonal to xi_0 afterwards
  Rng rng(4);
  Mat x(48, 48);
  for (int j = 0; j < 48; ++j)
    for (int i = 0; i < 48; ++i) x(i, j) = rng.cnormal();
  HSVector pr = zero_mean_project({x}, s.basis);
  CHECK(std::abs(hs_inner(s.basis.vectors[i0], pr)) < 1e-12 * pr.norm());
}

TEST_CASE("contraction ratio basics") {
  auto s = make_setup(1.0, 64, 4);
  Rng rng(12);
  Vec c = Vec::Zero(s.basis.size());
  for (int a = 1; a < s.basis.size(); ++a) c(a) = rng.cnormal();
  Mat x = Mat::Zero(64, 64);
  for (int a = 0; a < s.basis.size(); ++a)
    x += c(a) * s.basis.vectors[a].mat;

  // p = 2, t = 0: ratio 1 for any x in the span
  CHECK(contraction_ratio(0.0, 2.0, {x}, s.spec, s.basis) ==
        doctest::Approx(1.0).epsilon(1e-9));

  // x = xi_{1,0}, p = 2: e^{-tau1 t}
  const int i1 = s.basis.find(1, 0);
  for (double t : {0.3, 1.0})
    CHECK(contraction_ratio(t, 2.0, s.basis.vectors[i1], s.spec, s.basis) ==
          doctest::Approx(std::exp(-s.params.tau1 * t)).epsilon(1e-8));

  // nonincreasing in t
  for (double p : {3.0, 4.0}) {
    double prev = contraction_ratio(0.0, p, {x}, s.spec, s.basis);
    for (double t : {0.2, 0.5, 1.0, 2.0, 4.0}) {
      double cur = contraction_ratio(t, p, {x}, s.spec, s.basis);
      CHECK(cur <= prev * (1 + 1e-9));
      prev = cur;
    }
  }

  CHECK_THROWS_AS(
      contraction_ratio(0.0, 2.0, {Mat(Mat::Zero(64, 64))}, s.spec, s.basis),
      domain_error);
}

TEST_CASE("evaluator matches the dense Kosaki route") {
  auto s = make_setup(1.0, 96, 4);
  Rng rng(42);
  Vec c = Vec::Zero(s.basis.size());
  for (int a = 1; a < s.basis.size(); ++a) c(a) = rng.cnormal();
  c /= c.norm();
  Mat x = Mat::Zero(96, 96);
  for (int a = 0; a < s.basis.size(); ++a)
    x += c(a) * s.basis.vectors[a].mat;
  for (double p : {2.0, 3.0, 8.0}) {
    RatioEvaluator ev(s.basis, p, 1e-9);
    RVec w = rho_diag_pow(s.spec, 1.0 / (2.0 * p) - 0.25);
    const double dense =
        schatten_norm(Mat(w.asDiagonal() * x * w.asDiagonal()), p);
    CHECK(ev.numerator_norm(c, 0.0) ==
          doctest::Approx(dense).epsilon(1e-10));
  }
}

TEST_CASE("witness matrix norm: three routes agree") {
  const double beta = 1.0;
  auto s = make_setup(beta, 96, 4);
  Vec c = Vec::Zero(s.basis.size());
  c(s.basis.find(1, 0)) = 1.0;
  for (double p : {2.0, 3.0, 4.0, 8.0}) {
    const double closed = witness_matrix_norm(p, beta);
    RatioEvaluator ev(s.basis, p, 1e-9);
    CHECK(ev.ratio(c, 0.0) == doctest::Approx(closed).epsilon(1e-8));
    // dense Kosaki sandwich of the ladder-built xi_{1,0}
    RVec w = rho_diag_pow(s.spec, 1.0 / (2.0 * p) - 0.25);
    const double dense = schatten_norm(
        Mat(w.asDiagonal() * s.basis.vectors[s.basis.find(1, 0)].mat *
            w.asDiagonal()),
        p);
    CHECK(dense == doctest::Approx(closed).epsilon(1e-8));
  }
  // at p = 2 the sandwich is the identity map: norm exactly 1
  CHECK(witness_matrix_norm(2.0, beta) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("witness display identity at beta = ln 2") {
  // the cited band sequence (2 sinh(beta/2))^{1/2-1/p}/sqrt(2) sqrt(n+1)
  // e^{-n beta/p} has sum of squares 2 at p = 2, beta = ln 2; the operator
  // norm of the true sandwich at p = 2 is exactly 1
  const double beta = std::log(2.0);
  double sum = 0.0;
  for (int n = 0; n < 200; ++n)
    sum += 0.5 * (n + 1.0) * std::exp(-n * beta);
  CHECK(sum == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(witness_matrix_norm(2.0, beta) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("witness lower bound against the sqrt-p scale") {
  for (double beta : {0.5, 1.0, 2.0}) {
    auto par = solve_params(beta, ParamBranch::CanonicalCFL);
    for (double p : {2.0, 4.0, 8.0, 16.0}) {
      const double tw = witness_lower_bound(p, beta, par);
      const double bound = std::min(1.0 / beta, 1.0 / std::sqrt(beta)) *
                           std::sqrt(p) /
                           (6.0 * std::sqrt(std::numbers::e));
      CHECK(std::exp(par.tau * tw) >= bound);
    }
    // p = 2: the sandwich is an isometry on the witness, t_w = 0
    CHECK(witness_lower_bound(2.0, beta, par) < 1e-12);
  }
}

TEST_CASE("theory bounds") {
  for (double beta : {0.5, 1.0, 2.0}) {
    const auto cc = constants(beta);
    for (double p : {3.0, 4.0, 8.0, 16.0}) {
      auto [lo, hi] = theory_bounds(p, beta, TimeKind::ZeroMean);
      CHECK(lo == doctest::Approx(cc.c_tilde * (p - 1)));
      CHECK(hi == doctest::Approx(cc.C_tilde * (p - 1)));
      // chain consistency: 6 (1-q)^{-1} C(beta) p <= C~ (p-1) for p >= 2
      const double chain =
          6.0 / (1.0 - std::exp(-beta)) * cc.C_of_beta * p;
      CHECK(chain <= hi * (1 + 1e-12));
      // general kind ceiling p c_p^2 and floor c~ (p-1)
      auto [glo, ghi] = theory_bounds(p, beta, TimeKind::General);
      CHECK(glo == doctest::Approx(cc.c_tilde * (p - 1)));
      CHECK(ghi == doctest::Approx(p * cc.cp(p) * cc.cp(p)));
      // squared witness consistency: c~ p >= c~ (p-1)
      CHECK(cc.c_tilde * p >= glo);
    }
  }
  // lower bound at p = 4, beta = 1: 3 c~ = 1/(12 e)
  auto [lo4, hi4] = theory_bounds(4.0, 1.0, TimeKind::ZeroMean);
  (void)hi4;
  CHECK(lo4 == doctest::Approx(1.0 / (12.0 * std::numbers::e)).epsilon(1e-13));
  CHECK_THROWS_AS(theory_bounds(2.0, 1.0, TimeKind::ZeroMean), domain_error);
}

TEST_CASE("sup ratio certificates at one grid point") {
  auto s = make_setup(1.0, 64, 4);
  const double p = 4.0;
  const auto cc = constants(1.0);
  const double tau = s.params.tau;
  const double t_star = std::log(2.0 * cc.cp(p) * cc.cp(p)) / (2.0 * tau);

  // contraction certificate (theory-implied for any sampled class)
  auto rep = sup_ratio_report(t_star, p, s.spec, s.basis, 64, 7, 10);
  CHECK(rep.passed);
  CHECK(rep.worst_ratio <= 1.0);

  // hypercontractivity fails at t = 0 (witness direction is sampled first)
  CHECK(sup_ratio(0.0, p, s.spec, s.basis, 8, 7, 4) > 1.0);

  // failure certificate just below the witness time
  const double tw = witness_lower_bound(p, 1.0, s.params);
  CHECK(sup_ratio(tw - 0.05 / tau, p, s.spec, s.basis, 32, 7, 6) > 1.0);

  // monotone nonincreasing on a t-grid (same seed, same sample family)
  double prev = sup_ratio(0.0, p, s.spec, s.basis, 32, 7, 6);
  for (double t : {0.3, 0.8, 1.6, 3.0}) {
    double cur = sup_ratio(t, p, s.spec, s.basis, 32, 7, 6);
    CHECK(cur <= prev * (1 + 1e-6));
    prev = cur;
  }

  // p = 2: L2 -> L2 contraction holds at t = 0
  auto est2 = optimal_time_estimate(2.0, s.spec, s.basis, 16, 7, 1e-3,
                                    TimeKind::ZeroMean, 4);
  CHECK(est2.t_hat == 0.0);
}

TEST_CASE("optimal time bracket and budget monotonicity") {
  auto s = make_setup(1.0, 64, 3);
  const double p = 3.0;
  auto est1 = optimal_time_estimate(p, s.spec, s.basis, 16, 11, 1e-3,
                                    TimeKind::ZeroMean, 4);
  CHECK(est1.bracket_ok);
  CHECK(est1.witness_lower <= est1.t_hat + 1e-3 + 2e-3);
  CHECK(est1.t_hat <= est1.theory_upper + 1e-3 + 2e-3);
  auto est2 = optimal_time_estimate(p, s.spec, s.basis, 32, 11, 1e-3,
                                    TimeKind::ZeroMean, 4);
  // nested sample family: doubling the budget never decreases t_hat
  CHECK(est2.t_hat >= est1.t_hat - 2e-3);
  // general kind: no zero-mean restriction, bracket against p c_p^2
  auto estg = optimal_time_estimate(p, s.spec, s.basis, 16, 11, 1e-3,
                                    TimeKind::General, 4);
  CHECK(estg.bracket_ok);
  CHECK(estg.t_hat >= est1.t_hat - 2e-3);
}
