#include "qou/meixner.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qou/linalg.hpp"
#include "qou/tails.hpp"

namespace qou {

namespace {

constexpr int kDoubleModeMaxDegree = 12;
constexpr mpfr_prec_t kExtendedBits = 256;  // ~77 decimal digits

// C(n, j) exactly in uint64 (valid for n <= 60), per the integer path.
double binom_exact(long long n, int j) {
  if (j < 0 || j > n) return 0.0;
  unsigned long long acc = 1;
  for (int t = 0; t < j; ++t) {
    acc = acc * static_cast<unsigned long long>(n - t);
    acc /= static_cast<unsigned long long>(t + 1);
  }
  return static_cast<double>(acc);
}

double binom(long long n, int j) {
  if (j < 0 || j > n) return 0.0;
  if (j == 0) return 1.0;
  if (n <= 60) return binom_exact(n, j);
  return std::exp(log_factorial(n) - log_factorial(n - j) - log_factorial(j));
}

double eval_L_double(int k, long long n, double beta) {
  const double em1 = std::expm1(beta);
  double power = 1.0;  // (e^beta - 1)^j
  CompensatedSum acc;
  const int jmax = static_cast<int>(std::min<long long>(k, n));
  for (int j = 0; j <= jmax; ++j) {
    double term = power * binom(k, j) * binom(n, j);
    acc.add((j % 2 == 0) ? term : -term);
    power *= em1;
  }
  return std::exp(-double(k) * beta) * acc.value();
}

double eval_L_extended(int k, long long n, double beta) {
  mpfr_t em1, power, term, acc, tmp;
  mpfr_inits2(kExtendedBits, em1, power, term, acc, tmp, (mpfr_ptr) nullptr);
  mpz_t bk, bn;
  mpz_inits(bk, bn, nullptr);

  mpfr_set_d(tmp, beta, MPFR_RNDN);
  mpfr_expm1(em1, tmp, MPFR_RNDN);
  mpfr_set_ui(power, 1, MPFR_RNDN);
  mpfr_set_ui(acc, 0, MPFR_RNDN);

  const int jmax = static_cast<int>(std::min<long long>(k, n));
  for (int j = 0; j <= jmax; ++j) {
    mpz_bin_uiui(bk, static_cast<unsigned long>(k),
                 static_cast<unsigned long>(j));
    mpz_bin_uiui(bn, static_cast<unsigned long>(n),
                 static_cast<unsigned long>(j));
    mpfr_mul_z(term, power, bk, MPFR_RNDN);
    mpfr_mul_z(term, term, bn, MPFR_RNDN);
    if (j % 2 == 0)
      mpfr_add(acc, acc, term, MPFR_RNDN);
    else
      mpfr_sub(acc, acc, term, MPFR_RNDN);
    mpfr_mul(power, power, em1, MPFR_RNDN);
  }
  mpfr_set_d(tmp, -double(k) * beta, MPFR_RNDN);
  mpfr_exp(tmp, tmp, MPFR_RNDN);
  mpfr_mul(acc, acc, tmp, MPFR_RNDN);
  double out = mpfr_get_d(acc, MPFR_RNDN);

  mpz_clears(bk, bn, nullptr);
  mpfr_clears(em1, power, term, acc, tmp, (mpfr_ptr) nullptr);
  return out;
}

}  // namespace

double eval_L(int k, long long n, double beta, PrecisionMode mode) {
  require(k >= 0, "eval_L: degree must be nonnegative");
  require(n >= 0, "eval_L: argument must be nonnegative");
  require(beta > 0.0, "eval_L: beta must be positive");
  if (mode == PrecisionMode::Double) {
    require(k <= kDoubleModeMaxDegree,
            "eval_L: precision-mode error, Double mode requires k <= 12");
    return eval_L_double(k, n, beta);
  }
  return eval_L_extended(k, n, beta);
}

double orthogonality_sum(int m, int l, double beta, double rel_tol) {
  require(m >= 0 && l >= 0, "orthogonality_sum: indices must be nonnegative");
  require(beta > 0.0, "orthogonality_sum: beta must be positive");
  require(rel_tol > 0.0, "orthogonality_sum: rel_tol must be positive");
  const PrecisionMode mode = (std::max(m, l) <= kDoubleModeMaxDegree)
                                 ? PrecisionMode::Double
                                 : PrecisionMode::Extended;
  // |L_m(n) L_l(n)| <= n^{m+l}/(m! l!) once n >= max(m, l)
  const double major_a = std::exp(-log_factorial(m) - log_factorial(l));
  // absolute floor tied to the smaller diagonal normalization, the
  // strictest scale the orthogonality checks compare against
  const double scale =
      std::exp(-double(std::max(m, l)) * beta) / (1.0 - std::exp(-beta));
  auto g = [&](long long n) {
    return eval_L(m, n, beta, mode) * eval_L(l, n, beta, mode);
  };
  auto res =
      weighted_sum_certified(g, beta, double(m + l), major_a, 0.0, rel_tol,
                             rel_tol * scale, std::max({m, l, 1}));
  return res.value;
}

double weighted_power_sum(double s, double beta, double rel_tol) {
  require(s >= 0.0, "weighted_power_sum: s must be nonnegative");
  require(beta > 0.0, "weighted_power_sum: beta must be positive");
  require(rel_tol > 0.0, "weighted_power_sum: rel_tol must be positive");
  // collect terms, then compensated accumulation in descending magnitude
  std::vector<double> terms;
  auto g = [&](long long n) {
    double t = (n == 0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(double(n), s);
    terms.push_back(std::exp(-beta * double(n)) * t);
    return t;
  };
  weighted_sum_certified(g, beta, s, 1.0, 0.0, rel_tol, 0.0, 1);
  std::sort(terms.begin(), terms.end(), std::greater<double>());
  CompensatedSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

namespace {

constexpr double kBoundaryEps = 1e-12;

void finish_report(BoundReport& rep) {
  double worst = std::numeric_limits<double>::infinity();
  bool ok = true;
  bool any_regular = false;
  for (const auto& pt : rep.grid) {
    if (pt.boundary) continue;
    any_regular = true;
    worst = std::min(worst, pt.slack);
    if (pt.slack <= 0.0) ok = false;
  }
  rep.worst_slack = any_regular ? worst : 0.0;
  rep.passed = ok;
}

}  // namespace

BoundReport verify_bounds(BoundKind kind, const BoundGrid& grid) {
  BoundReport rep;
  rep.kind = kind;
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);

  switch (kind) {
    case BoundKind::GammaSandwich: {
      require(!grid.s.empty(), "verify_bounds: empty grid");
      for (double s : grid.s) {
        require(s >= 1.0, "verify_bounds: GammaSandwich requires s >= 1");
        BoundPoint pt;
        pt.s = s;
        pt.value = std::lgamma(1.0 + s);
        pt.lower = half_log_2pi + 0.5 * std::log(s) + s * (std::log(s) - 1.0);
        pt.upper = 1.0 + 0.5 * std::log(s) + s * (std::log(s) - 1.0);
        pt.slack = std::min(pt.value - pt.lower, pt.upper - pt.value);
        pt.boundary = std::abs(pt.slack) <= kBoundaryEps;
        rep.grid.push_back(pt);
      }
      break;
    }
    case BoundKind::PowerSumSandwich: {
      require(!grid.s.empty() && !grid.beta.empty(),
              "verify_bounds: empty grid");
      for (double beta : grid.beta) {
        require(beta > 0.0, "verify_bounds: beta must be positive");
        for (double s : grid.s) {
          require(s >= 1.0, "verify_bounds: PowerSumSandwich requires s >= 1");
          BoundPoint pt;
          pt.s = s;
          pt.beta = beta;
          pt.value = std::log(weighted_power_sum(s, beta, 1e-13));
          const double common =
              -(s + 1.0) * std::log(beta) + s * (std::log(s) - 1.0);
          pt.lower = -beta + common +
                     0.5 * std::log(std::numbers::pi * s / 2.0);
          pt.upper = 1.0 + std::log1p(beta) + common + 0.5 * std::log(s);
          pt.slack = std::min(pt.value - pt.lower, pt.upper - pt.value);
          pt.boundary = std::abs(pt.slack) <= kBoundaryEps;
          rep.grid.push_back(pt);
        }
      }
      break;
    }
    case BoundKind::MeixnerPointwise: {
      require(grid.k_max >= 0 && grid.n_max >= 0 && !grid.beta.empty(),
              "verify_bounds: empty grid");
      for (double beta : grid.beta) {
        require(beta > 0.0, "verify_bounds: beta must be positive");
        for (int k = 0; k <= grid.k_max; ++k) {
          const PrecisionMode mode = (k <= kDoubleModeMaxDegree)
                                         ? PrecisionMode::Double
                                         : PrecisionMode::Extended;
          for (long long n = 0; n <= grid.n_max; ++n) {
            BoundPoint pt;
            pt.beta = beta;
            pt.k = k;
            pt.n = n;
            pt.value = std::abs(eval_L(k, n, beta, mode));
            double log_nk = (k == 0) ? 0.0
                            : (n == 0)
                                ? -std::numeric_limits<double>::infinity()
                                : double(k) * std::log(double(n));
            double log_kk = (k == 0) ? 0.0 : double(k) * std::log(double(k));
            double log_bound = std::max(log_nk, log_kk) - log_factorial(k);
            pt.lower = 0.0;
            pt.upper = std::exp(log_bound);
            pt.slack =
                (pt.value > 0.0)
                    ? 1.0 - std::exp(std::log(pt.value) - log_bound)
                    : 1.0;
            pt.boundary = std::abs(pt.slack) <= kBoundaryEps;
            rep.grid.push_back(pt);
          }
        }
      }
      break;
    }
  }
  finish_report(rep);
  return rep;
}

}  // namespace qou
