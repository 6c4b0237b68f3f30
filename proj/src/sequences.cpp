#include "qou/sequences.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qou/linalg.hpp"
#include "qou/tails.hpp"

namespace qou {

void OffDiagonalCoeffs::set(int i, cxd value) {
  require(index_admissible(k, m, i),
          "OffDiagonalCoeffs: index outside the admissible set");
  c[i] = value;
}

cxd OffDiagonalCoeffs::get(int i) const {
  auto it = c.find(i);
  return it == c.end() ? cxd(0, 0) : it->second;
}

void OffDiagonalCoeffs::validate() const {
  // k = 0 (the constants F_{0,0}) arises as a FactorOut image
  require(k >= 0, "OffDiagonalCoeffs: k must be >= 0");
  require(-k <= m && m <= k, "OffDiagonalCoeffs: need -k <= m <= k");
  for (const auto& [i, v] : c) {
    (void)v;
    require(index_admissible(k, m, i),
            "OffDiagonalCoeffs: index outside the admissible set");
  }
}

double OffDiagonalCoeffs::abs_coeff_sum() const {
  double s = 0.0;
  for (const auto& [i, v] : c) {
    (void)i;
    s += std::abs(v);
  }
  return s;
}

double d_coeff(long long n, long long i) {
  require(i >= 0 && i <= n, "d_coeff: need 0 <= i <= n");
  if (n <= 60) {
    double prod = 1.0;
    for (long long t = 0; t < i; ++t) prod *= double(n - t);
    return std::sqrt(prod);
  }
  return std::exp(0.5 * (log_factorial(n) - log_factorial(n - i)));
}

cxd eval_f_at(const OffDiagonalCoeffs& coeffs, long long n) {
  if (n + coeffs.m < 0) return cxd(0, 0);
  cxd acc(0, 0);
  for (const auto& [i, cval] : coeffs.c) {
    if (i > n) continue;
    acc += cval * d_coeff(n, i) * d_coeff(n + coeffs.m, i + coeffs.m);
  }
  return acc;
}

SequenceF eval_f(const OffDiagonalCoeffs& coeffs, int n_max) {
  coeffs.validate();
  SequenceF seq;
  seq.coeffs = coeffs;
  seq.values.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) seq.values[n] = eval_f_at(coeffs, n);
  return seq;
}

OffDiagonalCoeffs transform(const OffDiagonalCoeffs& coeffs, FMode mode) {
  coeffs.validate();
  OffDiagonalCoeffs out;
  switch (mode) {
    case FMode::FactorOut:
      require(coeffs.m >= 1, "transform: FactorOut requires m >= 1");
      out.k = coeffs.k - 1;
      out.m = coeffs.m - 1;
      for (const auto& [i, v] : coeffs.c) out.c[i] = v;
      break;
    case FMode::ShiftUp:
      require(coeffs.m >= 1, "transform: ShiftUp requires m >= 1");
      out.k = coeffs.k + 1;
      out.m = coeffs.m - 1;
      for (const auto& [i, v] : coeffs.c) out.c[i + 1] = v;
      break;
    case FMode::NegativeMirror:
      require(coeffs.m < 0, "transform: NegativeMirror requires m < 0");
      out.k = coeffs.k;
      out.m = -coeffs.m;
      for (const auto& [i, v] : coeffs.c) out.c[i + coeffs.m] = v;
      break;
  }
  out.validate();
  return out;
}

namespace {

// (sum_n e^{-n beta} g(n)^p)^{1/p} with log-scaled accumulation, so large p
// neither overflows nor underflows. Certified by g(n) <= A (n+c)^{r_g} via
// a geometric ratio bound on the tail, all in the log domain.
template <class G>
double lp_sum_certified(G&& g, double p, double beta, double r_g,
                        double log_a_g, double c, double rel_tol) {
  const double r = p * r_g;
  const double log_a = p * log_a_g;
  double ln_scale = -std::numeric_limits<double>::infinity();
  double s = 0.0;
  const long long hard_cap = 4'000'000;
  for (long long n = 0;; ++n) {
    if (n > hard_cap)
      throw computation_error("lp_sum_certified: tail did not certify");
    const double v = g(n);
    if (v > 0.0) {
      const double lnw = p * std::log(v) - beta * double(n);
      if (lnw > ln_scale) {
        s = (s > 0.0) ? s * std::exp(ln_scale - lnw) : 0.0;
        ln_scale = lnw;
      }
      s += std::exp(lnw - ln_scale);
    }
    if (ln_scale == -std::numeric_limits<double>::infinity()) continue;
    const double rho =
        std::exp(-beta) *
        std::pow((double(n) + 2.0 + c) / (double(n) + 1.0 + c), r);
    if (rho >= 1.0) continue;
    const double log_tail = log_a + r * std::log(double(n) + 1.0 + c) -
                            beta * (double(n) + 1.0) - std::log1p(-rho);
    if (log_tail <= p * std::log(rel_tol) + std::log(s) + ln_scale)
      return std::exp((ln_scale + std::log(s)) / p);
  }
}

}  // namespace

double weighted_lp_norm(const OffDiagonalCoeffs& coeffs, double p, double beta,
                        double rel_tol) {
  coeffs.validate();
  require(p >= 1.0, "weighted_lp_norm: p must be >= 1");
  require(beta > 0.0, "weighted_lp_norm: beta must be positive");
  // |f(n)| <= (sum |c|) (n + |m|)^{k/2}
  const double a_sum = coeffs.abs_coeff_sum();
  if (a_sum == 0.0) return 0.0;
  auto g = [&](long long n) { return std::abs(eval_f_at(coeffs, n)); };
  return lp_sum_certified(g, p, beta, coeffs.k / 2.0, std::log(a_sum),
                          double(std::abs(coeffs.m)), rel_tol);
}

double weighted_lp_norm(const SequenceF& seq, double p, double beta,
                        double rel_tol) {
  return weighted_lp_norm(seq.coeffs, p, beta, rel_tol);
}

ConstantChain constants(double beta) {
  require(beta > 0.0, "constants: beta must be positive");
  ConstantChain cc;
  cc.beta = beta;
  const double emb = std::exp(-beta);
  cc.C2 = (1.0 / (1.0 - emb) + std::numbers::e * (1.0 + 1.0 / beta)) *
          (std::numbers::e + 1.0 / beta);
  cc.C1 = std::exp(beta / 2.0) * cc.C2;
  cc.C4 = 2.0 * std::exp(2.0 * beta + 2.0) / (1.0 - emb) +
          16.0 * std::exp(2.0 * beta + 2.0) *
              (std::pow(beta, -3.0) + std::pow(beta, -2.0)) *
              std::max(1.0, std::pow(beta, -2.0));
  cc.C5 = std::pow(4.0 * cc.C1, 2.0) * (cc.C4 + 3.0);
  cc.C3 = cc.C1 * cc.C5;
  cc.C_of_beta = 4.0 * std::exp(1.5 * beta) * cc.C3;
  cc.c_tilde = std::min(std::pow(beta, -2.0), std::pow(beta, -1.0)) /
               (36.0 * std::numbers::e);
  cc.C_tilde = 24.0 / (1.0 - emb) * cc.C_of_beta;
  return cc;
}

LemmaCheck main_lemma_check(const OffDiagonalCoeffs& coeffs, double p,
                            double beta) {
  require(p >= 2.0, "main_lemma_check: p must be >= 2");
  const ConstantChain cc = constants(beta);
  LemmaCheck out;
  out.lhs = weighted_lp_norm(coeffs, p, beta);
  const double pref =
      std::exp(coeffs.m * beta * (1.0 / (2.0 * p) - 0.25)) *
      std::pow(cc.C_of_beta * p, coeffs.k / 2.0);
  out.rhs = pref * weighted_lp_norm(coeffs, 2.0, beta);
  out.passed = out.lhs <= out.rhs;
  return out;
}

LemmaCheck band_lemma_check(const OffDiagonalCoeffs& coeffs, double p,
                            double beta) {
  require(p >= 2.0, "band_lemma_check: p must be >= 2");
  require(coeffs.m >= 0, "band_lemma_check: requires m >= 0");
  const ConstantChain cc = constants(beta);
  LemmaCheck out;
  out.lhs = weighted_lp_norm(coeffs, p, beta);
  const double pref = std::pow(2.0 * std::exp(beta / 2.0), coeffs.m) *
                      std::pow(cc.C3 * p, coeffs.k / 2.0);
  out.rhs = pref * weighted_lp_norm(coeffs, 2.0, beta);
  out.passed = out.lhs <= out.rhs;
  return out;
}

namespace {

// certified weighted p-norm of n -> |w(n) poly(n)| with w = 1 or sqrt(n+1)
double poly_weighted_norm(const std::vector<cxd>& poly, double p, double beta,
                          bool sqrt_weight) {
  const int deg = static_cast<int>(poly.size()) - 1;
  double coeff_sum = 0.0;
  for (const auto& c : poly) coeff_sum += std::abs(c);
  if (coeff_sum == 0.0) return 0.0;
  // |poly(n)| <= coeff_sum (n+1)^deg, |w(n)| <= (n+1)^{1/2}
  auto g = [&](long long n) {
    cxd v(0, 0);
    double x = 1.0;
    for (const auto& c : poly) {
      v += c * x;
      x *= double(n);
    }
    double av = std::abs(v);
    if (sqrt_weight) av *= std::sqrt(double(n) + 1.0);
    return av;
  };
  return lp_sum_certified(g, p, beta, deg + (sqrt_weight ? 0.5 : 0.0),
                          std::log(coeff_sum), 1.0, 1e-12);
}

}  // namespace

LemmaCheck poly_lemma_check(const std::vector<cxd>& poly, double p,
                            double beta, PolyLemmaMode mode) {
  require(!poly.empty(), "poly_lemma_check: empty polynomial");
  require(p >= 2.0, "poly_lemma_check: p must be >= 2");
  const int k = static_cast<int>(poly.size()) - 1;
  const ConstantChain cc = constants(beta);
  const bool sqrtw = (mode == PolyLemmaMode::SqrtWeighted);
  LemmaCheck out;
  out.lhs = poly_weighted_norm(poly, p, beta, sqrtw);
  const double factor =
      sqrtw ? std::pow(cc.C3 * p, (2.0 * k + 1.0) / 2.0)
            : std::pow(cc.C1 * p, double(k));
  out.rhs = factor * poly_weighted_norm(poly, 2.0, beta, sqrtw);
  out.passed = out.lhs <= out.rhs;
  return out;
}

}  // namespace qou
