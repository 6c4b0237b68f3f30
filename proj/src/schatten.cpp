#include "qou/schatten.hpp"

#include <cmath>
#include <limits>

#include "qou/linalg.hpp"

namespace qou {

SingularSpectrum singular_spectrum(const Mat& x) {
  return {singular_values(x), static_cast<int>(x.rows())};
}

double schatten_norm_from_spectrum(const SingularSpectrum& s, double p) {
  require(p >= 1.0, "schatten_norm: p must be >= 1 (quasi-norms out of scope)");
  if (s.values.empty()) return 0.0;
  if (std::isinf(p)) return s.values.front();
  if (p == 1.0) {
    CompensatedSum acc;
    for (double v : s.values) acc.add(v);
    return acc.value();
  }
  // scale out sigma_max to keep the powers in range
  const double smax = s.values.front();
  if (smax == 0.0) return 0.0;
  CompensatedSum acc;
  for (double v : s.values) acc.add(std::pow(v / smax, p));
  return smax * std::pow(acc.value(), 1.0 / p);
}

double schatten_norm(const Mat& x, double p) {
  return schatten_norm_from_spectrum(singular_spectrum(x), p);
}

double schatten_norm(const FockOperator& x, double p) {
  return schatten_norm(x.entries, p);
}

double kosaki_norm(const Mat& x, double p, const GibbsSpec& spec) {
  require(static_cast<int>(x.rows()) == spec.dim,
          "kosaki_norm: dimension mismatch");
  require(p >= 1.0, "kosaki_norm: p must be >= 1");
  RVec w = rho_diag_pow(spec, 1.0 / (2.0 * p));
  Mat sandwiched = w.asDiagonal() * x * w.asDiagonal();
  return schatten_norm(sandwiched, p);
}

double kosaki_norm(const FockOperator& x, double p, const GibbsSpec& spec) {
  return kosaki_norm(x.entries, p, spec);
}

namespace {

double sequence_lp(const std::vector<double>& a_seq, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : a_seq) m = std::max(m, std::abs(v));
    return m;
  }
  double amax = 0.0;
  for (double v : a_seq) amax = std::max(amax, std::abs(v));
  if (amax == 0.0) return 0.0;
  CompensatedSum acc;
  for (double v : a_seq) acc.add(std::pow(std::abs(v) / amax, p));
  return amax * std::pow(acc.value(), 1.0 / p);
}

SandwichResult sandwich_from_spectrum(const SingularSpectrum& spec,
                                      const std::vector<double>& a_seq,
                                      double p) {
  SandwichResult out;
  out.mid = schatten_norm_from_spectrum(spec, p);
  const double seq_norm = sequence_lp(a_seq, p);
  out.lower = std::pow(2.0, std::isinf(p) ? 0.0 : 1.0 / p) / 3.0 * seq_norm;
  out.upper = 2.0 * seq_norm;
  const double eps = 1e-12 * std::max(1.0, seq_norm);
  out.passed = (out.lower <= out.mid + eps) && (out.mid <= out.upper + eps);
  return out;
}

SingularSpectrum sandwich_spectrum(const std::vector<double>& a_seq) {
  const int len = static_cast<int>(a_seq.size());
  const int dim = len + 1;
  Mat a = Mat::Zero(dim, dim);
  for (int n = 0; n < len; ++n) {
    a(n, n + 1) = a_seq[n];
    a(n + 1, n) = a_seq[n];
  }
  return singular_spectrum(a);
}

}  // namespace

SandwichResult sandwich_check(const std::vector<double>& a_seq, double p) {
  require(p >= 1.0, "sandwich_check: p must be >= 1");
  return sandwich_from_spectrum(sandwich_spectrum(a_seq), a_seq, p);
}

std::vector<SandwichResult> sandwich_check(
    const std::vector<double>& a_seq, const std::vector<double>& p_grid) {
  for (double p : p_grid) require(p >= 1.0, "sandwich_check: p must be >= 1");
  const SingularSpectrum spec = sandwich_spectrum(a_seq);
  std::vector<SandwichResult> out;
  out.reserve(p_grid.size());
  for (double p : p_grid)
    out.push_back(sandwich_from_spectrum(spec, a_seq, p));
  return out;
}

BclResult bcl_check(const FockOperator& y, double p, const GibbsSpec& spec) {
  require(p >= 2.0, "bcl_check: p must be >= 2");
  require(spec.renormalize, "bcl_check: omega must be a state (renormalize)");
  require(y.dim() == spec.dim, "bcl_check: dimension mismatch");
  const cxd mean = expect(y, spec);
  Mat centered =
      y.entries - mean * Mat::Identity(spec.dim, spec.dim);
  BclResult out;
  const double lp = kosaki_norm(y.entries, p, spec);
  const double lpc = kosaki_norm(centered, p, spec);
  out.lhs = lp * lp;
  out.rhs = std::norm(mean) + (p - 1.0) * lpc * lpc;
  out.passed = out.lhs <= out.rhs + 1e-10;
  return out;
}

}  // namespace qou
