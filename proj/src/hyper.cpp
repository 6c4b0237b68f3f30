#include "qou/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qou/linalg.hpp"
#include "qou/rng.hpp"
#include "qou/schatten.hpp"
#include "qou/sequences.hpp"

namespace qou {

HSVector zero_mean_project(const HSVector& x, const EigenBasis& basis) {
  require(x.dim() == basis.spec.dim, "zero_mean_project: dimension mismatch");
  const int i0 = basis.find(0, 0);
  const cxd c0 = hs_inner(basis.vectors[i0], x);
  return {x.mat - c0 * basis.vectors[i0].mat};
}

RatioEvaluator::RatioEvaluator(const EigenBasis& basis, double p,
                               double tail_tol)
    : basis_(basis), p_(p), beta_(basis.spec.beta), cap_(basis.degree_cap) {
  require(p >= 2.0, "RatioEvaluator: p must be >= 2");
  const int nb = basis.size();
  const int nw = 2 * cap_ + 1;
  const double q = std::exp(-beta_);

  // per-band majorant S_w for unit coefficient vectors:
  // |f_w(n)| <= S_w (n+|w|)^{cap/2}
  std::vector<double> s_w(nw, 0.0);
  for (int w = -cap_; w <= cap_; ++w) {
    double s = 0.0;
    for (int i = std::max(0, -w); 2 * i + w <= cap_; ++i) {
      double b2 = 0.0;
      for (int a = 0; a < nb; ++a) {
        cxd wc = basis.words[a].get(i, i + w);
        b2 += std::norm(wc);
      }
      s += std::sqrt(b2);
    }
    s_w[w + cap_] = s;
  }

  pref_.assign(nw, 0.0);
  for (int w = -cap_; w <= cap_; ++w)
    pref_[w + cap_] = std::pow(1.0 - q, 1.0 / p) *
                      std::exp(-w * beta_ * (1.0 / (2.0 * p) + 0.25));

  // certified truncation: per band, the tail of sum_n e^{-n beta} *
  // (pref S_w)^p (n+|w|)^{p cap/2} below (tail_tol/(2K+1))^p; log domain.
  const double log_target = p * std::log(tail_tol / double(nw));
  const double r = p * cap_ / 2.0;
  int n_needed = 4;
  for (int w = -cap_; w <= cap_; ++w) {
    if (s_w[w + cap_] == 0.0) continue;
    const double log_a =
        p * (std::log(s_w[w + cap_]) + std::log(pref_[w + cap_]));
    for (int n = std::max(4, int(r / beta_) + 1);; ++n) {
      double rho = std::exp(-beta_) *
                   std::pow((double(n) + 2.0 + std::abs(w)) /
                                (double(n) + 1.0 + std::abs(w)),
                            r);
      if (rho >= 1.0) continue;
      double log_tail = log_a + r * std::log(double(n) + 1.0 + std::abs(w)) -
                        beta_ * (double(n) + 1.0) - std::log1p(-rho);
      if (log_tail <= log_target) {
        n_needed = std::max(n_needed, n + 1);
        break;
      }
      if (n > 4'000'000)
        throw computation_error("RatioEvaluator: tail did not certify");
    }
  }
  n_len_ = n_needed + cap_;

  weight_p_.resize(n_len_);
  for (int n = 0; n < n_len_; ++n)
    weight_p_[n] = std::exp(-double(n) * beta_ / p);

  band_f_.assign(nw, std::vector<std::vector<cxd>>(
                         nb, std::vector<cxd>(n_len_, cxd(0, 0))));
  for (int w = -cap_; w <= cap_; ++w)
    for (int a = 0; a < nb; ++a) {
      OffDiagonalCoeffs od;
      od.k = cap_;
      od.m = w;
      bool any = false;
      for (int i = std::max(0, -w); 2 * i + w <= cap_; ++i) {
        cxd wc = basis.words[a].get(i, i + w);
        if (wc != cxd(0, 0)) {
          od.c[i] = wc;
          any = true;
        }
      }
      if (!any) continue;
      for (int n = 0; n < n_len_; ++n)
        band_f_[w + cap_][a][n] = eval_f_at(od, n);
    }
}

double RatioEvaluator::numerator_norm(const Vec& coeffs, double t) const {
  const int nb = basis_.size();
  require(coeffs.size() == nb, "RatioEvaluator: coefficient size mismatch");
  Vec damped(nb);
  for (int a = 0; a < nb; ++a)
    damped(a) = coeffs(a) * std::exp(-t * basis_.eigenvalue(a));

  BandMatrix band(n_len_, -cap_, cap_);
  for (int w = -cap_; w <= cap_; ++w) {
    auto& diag = band.diags[w + cap_];
    const auto& fw = band_f_[w + cap_];
    const double pw = pref_[w + cap_];
    for (int a = 0; a < nb; ++a) {
      const cxd ca = damped(a);
      if (ca == cxd(0, 0)) continue;
      const auto& fa = fw[a];
      for (int n = std::max(0, -w); n < n_len_ - std::max(0, w); ++n)
        diag[n] += ca * fa[n];
    }
    for (int n = std::max(0, -w); n < n_len_ - std::max(0, w); ++n)
      diag[n] *= pw * weight_p_[n];
  }
  // even p: sum sigma^p = tr((M* M)^{p/2}) by banded products, no eigensolve
  const int pi = static_cast<int>(std::lround(p_));
  if (p_ == double(pi) && pi % 2 == 0) {
    const int q = pi / 2;
    if (q == 1 || q == 2 || q == 4 || q == 8) {
      const double s = band_schatten_pth_power_even(band, pi);
      return std::pow(std::max(0.0, s), 1.0 / p_);
    }
  }
  auto sigma = band_singular_values(band);
  return schatten_norm_from_spectrum({sigma, n_len_}, p_);
}

double RatioEvaluator::ratio(const Vec& coeffs, double t) const {
  const double den = coeffs.norm();
  require(den > 0.0, "RatioEvaluator: zero input");
  return numerator_norm(coeffs, t) / den;
}

double contraction_ratio(double t, double p, const HSVector& x,
                         const GibbsSpec& spec, const EigenBasis& basis) {
  require(t >= 0.0, "contraction_ratio: t must be nonnegative");
  require(x.dim() == spec.dim, "contraction_ratio: dimension mismatch");
  const double xnorm = x.norm();
  require(xnorm > 0.0, "contraction_ratio: zero input");
  auto [c, resid] = expand_in_basis(x, basis);
  if (resid > 1e-6 * xnorm)
    throw computation_error(
        "contraction_ratio: span insufficient, expansion residual " +
        std::to_string(resid / xnorm));
  RatioEvaluator eval(basis, p);
  return eval.numerator_norm(c, t) / xnorm;
}

namespace {

struct SampleSpace {
  std::vector<int> active;  // basis indices that may carry coefficients
  int zero_idx = -1;        // position of (0,0) in the basis
};

SampleSpace make_sample_space(const EigenBasis& basis, TimeKind kind) {
  SampleSpace s;
  s.zero_idx = basis.find(0, 0);
  for (int a = 0; a < basis.size(); ++a)
    if (kind == TimeKind::General || a != s.zero_idx) s.active.push_back(a);
  return s;
}

// sample index -> starting coefficient vector; the first samples are the
// pure basis directions, the rest seeded Gaussian draws
Vec start_vector(const SampleSpace& space, const EigenBasis& basis,
                 uint64_t seed, int sample) {
  Vec c = Vec::Zero(basis.size());
  const int nd = static_cast<int>(space.active.size());
  if (sample < nd) {
    c(space.active[sample]) = 1.0;
    return c;
  }
  Rng rng = Rng::derive(seed, static_cast<uint64_t>(sample));
  for (int a : space.active) c(a) = rng.cnormal();
  double nr = c.norm();
  if (nr == 0.0) c(space.active[0]) = 1.0, nr = 1.0;
  c /= nr;
  return c;
}

double refine_by_ascent(const RatioEvaluator& eval, const SampleSpace& space,
                        Vec c, double t, uint64_t seed, int sample,
                        int steps) {
  Rng rng = Rng::derive(seed ^ 0xA5C3ULL, static_cast<uint64_t>(sample));
  double best = eval.ratio(c, t);
  for (int it = 0; it < steps; ++it) {
    const int coord =
        space.active[rng.uniform_int(space.active.size())];
    Vec trial = c;
    trial(coord) += 0.3 * c.norm() * rng.cnormal();
    if (trial.norm() == 0.0) continue;
    trial /= trial.norm();
    const double r = eval.ratio(trial, t);
    if (r > best) {
      best = r;
      c = trial;
    }
  }
  return best;
}

}  // namespace

HCReport sup_ratio_report(double t, double p, const GibbsSpec& spec,
                          const EigenBasis& basis, int budget, uint64_t seed,
                          int ascent_steps, TimeKind kind, int jobs) {
  require(budget >= 1, "sup_ratio: budget must be >= 1");
  require(t >= 0.0, "sup_ratio: t must be nonnegative");
  require(spec.dim == basis.spec.dim, "sup_ratio: spec mismatch");
  const SampleSpace space = make_sample_space(basis, kind);
  // certified to 3e-4 relative, ample for the +-5e-2 certificate margins
  const RatioEvaluator eval(basis, p, 3e-4);

  std::vector<double> results(budget, 0.0);
  int nthreads = jobs > 0 ? jobs
                          : static_cast<int>(
                                std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, budget));
  auto worker = [&](int t0) {
    for (int sidx = t0; sidx < budget; sidx += nthreads) {
      Vec c = start_vector(space, basis, seed, sidx);
      results[sidx] =
          refine_by_ascent(eval, space, std::move(c), t, seed, sidx,
                           ascent_steps);
    }
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }
  HCReport rep;
  rep.p = p;
  rep.beta = spec.beta;
  rep.t = t;
  rep.sample_size = budget;
  rep.seed = seed;
  rep.worst_ratio = *std::max_element(results.begin(), results.end());
  rep.passed = rep.worst_ratio <= 1.0 + 1e-10;
  return rep;
}

double sup_ratio(double t, double p, const GibbsSpec& spec,
                 const EigenBasis& basis, int budget, uint64_t seed,
                 int ascent_steps, TimeKind kind, int jobs) {
  return sup_ratio_report(t, p, spec, basis, budget, seed, ascent_steps, kind,
                          jobs)
      .worst_ratio;
}

double witness_matrix_norm(double p, double beta, double rel_tol) {
  require(p >= 2.0, "witness_matrix_norm: p must be >= 2");
  require(beta > 0.0, "witness_matrix_norm: beta must be positive");
  // entries of rho^{1/(2p)-1/4} A_1^* xi_0 rho^{1/(2p)-1/4}; at p = 2 the
  // sandwich is the identity map and the norm is exactly ||xi_{1,0}|| = 1
  const double c0 = std::pow(2.0 * std::sinh(beta / 2.0), 0.5 + 1.0 / p) *
                    std::exp(-beta / p) / std::sqrt(2.0);
  auto a_entry = [&](long long n) {
    return c0 * std::sqrt(double(n) + 1.0) * std::exp(-double(n) * beta / p);
  };
  // |a_n|^p = c0^p (n+1)^{p/2} e^{-n beta}: choose N with the two-band tail
  // below rel_tol of the accumulated p-mass
  std::vector<double> a;
  {
    CompensatedSum psum;
    const double r = p / 2.0;
    for (long long n = 0;; ++n) {
      const double an = a_entry(n);
      a.push_back(an);
      psum.add(std::pow(an, p));
      if (n < 2 * (long long)(r / beta) + 8) continue;
      double rho = std::exp(-beta) *
                   std::pow((double(n) + 2.0) / (double(n) + 1.0), r);
      if (rho >= 1.0) continue;
      double t1 = std::pow(c0, p) * std::pow(double(n) + 2.0, r) *
                  std::exp(-beta * double(n + 1));
      double tail = t1 / (1.0 - rho);
      // ||A - A_N||_p <= 2 tail^{1/p}
      if (2.0 * std::pow(tail, 1.0 / p) <=
          rel_tol * std::pow(psum.value(), 1.0 / p))
        break;
      if (n > 2'000'000)
        throw computation_error("witness_lower_bound: tail did not certify");
    }
  }
  const int dim = static_cast<int>(a.size()) + 1;
  Mat z0 = Mat::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    z0(n, n + 1) = a[n];
    z0(n + 1, n) = a[n];
  }
  return schatten_norm(z0, p);
}

double witness_lower_bound(double p, double beta, const OUParams& params,
                           double rel_tol) {
  const double norm_p = witness_matrix_norm(p, beta, rel_tol);
  if (norm_p <= 1.0) return 0.0;
  return std::log(norm_p) / params.tau;
}

std::pair<double, double> theory_bounds(double p, double beta, TimeKind kind) {
  require(beta > 0.0, "theory_bounds: beta must be positive");
  const ConstantChain cc = constants(beta);
  if (kind == TimeKind::ZeroMean) {
    require(p > 2.0, "theory_bounds: ZeroMean bounds require p > 2");
    return {cc.c_tilde * (p - 1.0), cc.C_tilde * (p - 1.0)};
  }
  require(p >= 2.0, "theory_bounds: p must be >= 2");
  const double cp2 = cc.cp(p) * cc.cp(p);
  return {cc.c_tilde * (p - 1.0), p * cp2};
}

TimeEstimate optimal_time_estimate(double p, const GibbsSpec& spec,
                                   const EigenBasis& basis, int budget,
                                   uint64_t seed, double tol, TimeKind kind,
                                   int ascent_steps, int jobs) {
  require(p >= 2.0, "optimal_time_estimate: p must be >= 2");
  require(tol > 0.0, "optimal_time_estimate: tol must be positive");
  const double beta = spec.beta;
  const ConstantChain cc = constants(beta);
  const double tau = basis.params.tau;
  const double cp2 = cc.cp(p) * cc.cp(p);
  const double ceiling = (kind == TimeKind::ZeroMean ? 2.0 * cp2 : p * cp2);

  TimeEstimate est;
  est.p = p;
  est.beta = beta;
  est.kind = kind;
  est.budget = budget;
  est.seed = seed;
  est.tol = tol;
  est.witness_lower = witness_lower_bound(p, beta, basis.params);
  if (p > 2.0) {
    auto [lo, hi] = theory_bounds(p, beta, kind);
    est.theory_lower = std::max(0.0, std::log(lo) / (2.0 * tau));
    est.theory_upper = std::max(0.0, std::log(hi) / (2.0 * tau));
  } else {
    est.theory_lower = 0.0;
    est.theory_upper = std::max(0.0, std::log(ceiling) / (2.0 * tau));
  }

  const double t_hi0 = std::log(ceiling) / (2.0 * tau) + 0.5 / tau;
  auto ratio_at = [&](double t) {
    return sup_ratio(t, p, spec, basis, budget, seed, ascent_steps, kind,
                     jobs);
  };
  double lo = 0.0, hi = t_hi0;
  const double r_hi = ratio_at(hi);
  if (r_hi > 1.0)
    throw computation_error(
        "optimal_time_estimate: bisection bracket failure, sup_ratio(" +
        std::to_string(hi) + ") = " + std::to_string(r_hi));
  if (ratio_at(0.0) <= 1.0) {
    est.t_hat = 0.0;
  } else {
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (ratio_at(mid) <= 1.0)
        hi = mid;
      else
        lo = mid;
    }
    est.t_hat = hi;
  }
  // slack covers the bisection tolerance plus the 3e-4 norm certification
  est.bracket_ok =
      est.witness_lower <= est.t_hat + tol + 2e-3 &&
      est.t_hat <= est.theory_upper + tol + 2e-3;
  return est;
}

}  // namespace qou
