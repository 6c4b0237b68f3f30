#include "qou/semigroup.hpp"

#include <cmath>

#include "qou/linalg.hpp"
#include "qou/rng.hpp"

namespace qou {

namespace {

double sinh_half(double beta) { return std::sinh(beta / 2.0); }
double cosh_half(double beta) { return std::cosh(beta / 2.0); }

OUParams finalize_params(double beta, double a1, double a2, double a3) {
  OUParams p;
  p.beta = beta;
  p.alpha1 = a1;
  p.alpha2 = a2;
  p.alpha3 = a3;
  p.gamma = 1.0 / (1.0 + a2 * a2);
  p.tau1 = -2.0 * p.gamma * a1;
  p.tau2 = 2.0 * p.gamma * a2 * a3;
  p.tau = std::min(p.tau1, p.tau2);
  return p;
}

}  // namespace

std::array<double, 2> OUParams::constraint_residuals() const {
  const double sh = sinh_half(beta), ch = cosh_half(beta);
  return {0.5 * (1.0 + alpha2 * alpha2) * sh + alpha1 * ch,
          0.5 * (alpha1 * alpha1 + alpha3 * alpha3) * sh -
              alpha2 * alpha3 * ch};
}

OUParams solve_params(double beta, ParamBranch branch, double alpha2,
                      double alpha3) {
  require(beta > 0.0, "solve_params: beta must be positive");
  if (branch == ParamBranch::CanonicalCFL) {
    const double t = std::tanh(beta / 2.0);
    const double a2 = (1.0 - 1.0 / cosh_half(beta)) / t;
    OUParams p = finalize_params(beta, -a2, a2, 1.0);
    return p;
  }
  // General: constraint 2 is a quadratic for alpha1,
  //   alpha1^2 = 2 alpha2 alpha3 coth(beta/2) - alpha3^2;
  // take the negative root (tau1 > 0) and validate constraint 1.
  const double t = std::tanh(beta / 2.0);
  const double disc = 2.0 * alpha2 * alpha3 / t - alpha3 * alpha3;
  if (disc < 0.0)
    throw computation_error(
        "solve_params: infeasible parameters, no real root for alpha1");
  const double a1 = -std::sqrt(disc);
  OUParams p = finalize_params(beta, a1, alpha2, alpha3);
  auto res = p.constraint_residuals();
  if (std::abs(res[0]) > 1e-12 || std::abs(res[1]) > 1e-12)
    throw computation_error(
        "solve_params: infeasible parameters, constraints not satisfied "
        "(residuals " +
        std::to_string(res[0]) + ", " + std::to_string(res[1]) + ")");
  if (!(p.tau > 0.0))
    throw computation_error("solve_params: infeasible parameters, tau <= 0");
  return p;
}

cxd hs_inner(const HSVector& x, const HSVector& y) {
  require(x.dim() == y.dim(), "hs_inner: dimension mismatch");
  return (x.mat.adjoint() * y.mat).trace();
}

HSVector apply_superop(SuperOp which, const HSVector& v,
                       const OUParams& params) {
  const int dim = v.dim();
  require(dim >= 2, "apply_superop: dimension too small");
  auto [a, ad] = build_ladder(dim);
  const double b = params.beta;
  const double s = 1.0 / std::sqrt(2.0 * sinh_half(b));
  const double ep = std::exp(b / 4.0), em = std::exp(-b / 4.0);
  const Mat& m = v.mat;
  auto d1 = [&]() { return s * (ep * (a.entries * m) - em * (m * a.entries)); };
  auto d2 = [&]() {
    return s * (em * (ad.entries * m) - ep * (m * ad.entries));
  };
  auto d1a = [&]() {
    return s * (ep * (ad.entries * m) - em * (m * ad.entries));
  };
  auto d2a = [&]() { return s * (em * (a.entries * m) - ep * (m * a.entries)); };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (which) {
    case SuperOp::D1: return {d1()};
    case SuperOp::D2: return {d2()};
    case SuperOp::D1adj: return {d1a()};
    case SuperOp::D2adj: return {d2a()};
    case SuperOp::A1: return {inv_sqrt2 * (d1() - d2())};
    case SuperOp::A2: return {inv_sqrt2 * (d1() + d2())};
    case SuperOp::A1adj: return {inv_sqrt2 * (d1a() - d2a())};
    case SuperOp::A2adj: return {inv_sqrt2 * (d1a() + d2a())};
  }
  throw domain_error("apply_superop: unknown superoperator");
}

namespace {

// exact ladder action on word coefficients; a2 flips the sign of the
// (i, j+1) contribution and of the (i-1, j) contribution
WordCoeffs word_raise(const WordCoeffs& x, double beta, bool second) {
  WordCoeffs out(x.cap + 1);
  const double s = 1.0 / std::sqrt(2.0 * std::sinh(beta / 2.0));
  const double f = s / std::sqrt(2.0);
  const double up = f * (std::exp(beta / 4.0) - std::exp(-0.75 * beta));
  const double vp = f * (std::exp(0.75 * beta) - std::exp(-beta / 4.0));
  const double low_i = f * std::exp(-beta / 4.0);
  const double low_j = f * std::exp(-0.75 * beta);
  for (int k = 0; k <= x.cap; ++k) {
    for (int i = 0; i <= k; ++i) {
      const int j = k - i;
      const cxd c = x.get(i, j);
      if (c == cxd(0, 0)) continue;
      out.add(i + 1, j, up * c);
      out.add(i, j + 1, (second ? -vp : vp) * c);
      if (i >= 1) out.add(i - 1, j, (second ? low_i : -low_i) * double(i) * c);
      if (j >= 1) out.add(i, j - 1, -low_j * double(j) * c);
    }
  }
  return out;
}

}  // namespace

WordCoeffs word_raise_a1(const WordCoeffs& x, double beta) {
  return word_raise(x, beta, false);
}

WordCoeffs word_raise_a2(const WordCoeffs& x, double beta) {
  return word_raise(x, beta, true);
}

int EigenBasis::find(int m, int n) const {
  for (int i = 0; i < size(); ++i)
    if (index[i].first == m && index[i].second == n) return i;
  throw domain_error("EigenBasis: index (m,n) not present");
}

EigenBasis build_eigenbasis(const GibbsSpec& spec, const OUParams& params,
                            int degree_cap) {
  spec.validate();
  require(degree_cap >= 0, "build_eigenbasis: degree_cap must be >= 0");
  if (degree_cap > spec.dim / 4)
    throw computation_error(
        "build_eigenbasis: truncation too small for requested degree cap");
  EigenBasis basis;
  basis.spec = spec;
  basis.params = params;
  basis.degree_cap = degree_cap;

  // xi_0 = rho^{1/2} with the untruncated normalization (1-q)^{1/2}
  GibbsSpec plain = spec;
  plain.renormalize = false;
  Mat xi0 = Mat::Zero(spec.dim, spec.dim);
  {
    RVec d = rho_diag_pow(plain, 0.5);
    for (int n = 0; n < spec.dim; ++n) xi0(n, n) = d(n);
  }

  // ladder order: fill (m, n) by total degree; vectors renormalized at each
  // step, words carry the exact 1/sqrt(m! n!)
  const int cap = degree_cap;
  std::vector<HSVector> vec_by_idx;
  std::vector<WordCoeffs> word_by_idx;
  std::vector<double> ratio_by_idx;
  for (int k = 0; k <= cap; ++k) {
    for (int m = k; m >= 0; --m) {
      const int n = k - m;
      basis.index.emplace_back(m, n);
      if (k == 0) {
        HSVector v{xi0};
        const double nrm = v.norm();
        v.mat /= nrm;
        vec_by_idx.push_back(v);
        WordCoeffs w(0);
        w.add(0, 0, cxd(1, 0));
        word_by_idx.push_back(w);
        ratio_by_idx.push_back(nrm);  // vs sqrt(0! 0!) = 1... see below
        continue;
      }
      // predecessor: lower m if possible (apply A1adj), else lower n
      int pm = m, pn = n;
      SuperOp op;
      bool via_a1;
      if (m > 0) {
        pm = m - 1;
        op = SuperOp::A1adj;
        via_a1 = true;
      } else {
        pn = n - 1;
        op = SuperOp::A2adj;
        via_a1 = false;
      }
      int pidx = -1;
      for (size_t t = 0; t < basis.index.size(); ++t)
        if (basis.index[t] == std::make_pair(pm, pn)) pidx = static_cast<int>(t);
      HSVector raised = apply_superop(op, vec_by_idx[pidx], params);
      const double nrm = raised.norm();
      raised.mat /= nrm;
      vec_by_idx.push_back(raised);
      // achieved norm of the unnormalized ladder vector relative to
      // sqrt(m! n!): multiply the step ratio ||A* v||/sqrt(step index)
      const double step = via_a1 ? double(m) : double(n);
      ratio_by_idx.push_back(ratio_by_idx[pidx] * nrm / std::sqrt(step));
      WordCoeffs wr = via_a1 ? word_raise_a1(word_by_idx[pidx], params.beta)
                             : word_raise_a2(word_by_idx[pidx], params.beta);
      for (auto& c : wr.w) c /= std::sqrt(step);
      word_by_idx.push_back(wr);
    }
  }
  // normalize the (0,0) ratio: prenorm of xi_0 is ||rho^{1/2}||, target 1
  basis.vectors = std::move(vec_by_idx);
  basis.words = std::move(word_by_idx);
  basis.prenorm_ratio = std::move(ratio_by_idx);

  const int sz = basis.size();
  basis.gram.resize(sz, sz);
  double defect = 0.0;
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) {
      basis.gram(i, j) = hs_inner(basis.vectors[i], basis.vectors[j]);
      const double dev =
          std::abs(basis.gram(i, j) - (i == j ? cxd(1, 0) : cxd(0, 0)));
      defect = std::max(defect, dev);
    }
  basis.gram_defect = defect;
  return basis;
}

XiResult build_xi(int m, int n, const GibbsSpec& spec, const OUParams& params) {
  require(m >= 0 && n >= 0, "build_xi: indices must be nonnegative");
  if (m + n > spec.dim / 4)
    throw computation_error(
        "build_xi: truncation too small for band support of (m, n)");
  spec.validate();
  GibbsSpec plain = spec;
  plain.renormalize = false;
  Mat xi0 = Mat::Zero(spec.dim, spec.dim);
  {
    RVec d = rho_diag_pow(plain, 0.5);
    for (int t = 0; t < spec.dim; ++t) xi0(t, t) = d(t);
  }
  HSVector v{xi0};
  for (int t = 0; t < n; ++t) v = apply_superop(SuperOp::A2adj, v, params);
  for (int t = 0; t < m; ++t) v = apply_superop(SuperOp::A1adj, v, params);
  XiResult out;
  out.prenorm = v.norm();
  out.prenorm_target =
      std::exp(0.5 * (log_factorial(m) + log_factorial(n)));
  v.mat /= out.prenorm;
  out.xi = v;
  return out;
}

HSVector generator_apply(const HSVector& v, const GibbsSpec& spec,
                         const OUParams& params) {
  require(v.dim() == spec.dim, "generator_apply: dimension mismatch");
  const int dim = spec.dim;
  const Mat q = build_position(dim).entries;
  const Mat p = build_momentum(dim).entries;
  const Mat& x = v.mat;
  const double g = params.gamma;
  const cxd i1(0, 1);

  Mat comm_p = p * x - x * p;
  Mat comm_q = q * x - x * q;
  Mat term1 = 0.5 * g * (1.0 + params.alpha2 * params.alpha2) *
              (p * comm_p - comm_p * p);
  Mat term2 =
      0.5 * g * (params.alpha1 * params.alpha1 + params.alpha3 * params.alpha3) *
      (q * comm_q - comm_q * q);
  Mat term3 = -i1 * g * params.alpha1 * (q * comm_p + comm_p * q);
  Mat term4 = -i1 * g * params.alpha2 * params.alpha3 * (p * comm_q + comm_q * p);
  return {term1 + term2 + term3 + term4};
}

namespace {

Mat quarter_sandwich(const Mat& x, const GibbsSpec& spec, double sign) {
  GibbsSpec plain = spec;
  plain.renormalize = false;
  RVec d = rho_diag_pow(plain, sign * 0.25);
  return d.asDiagonal() * x * d.asDiagonal();
}

// conjugated raising operators C^{-1} A_i^* C with C = rho^{1/4} . rho^{1/4};
// they generate y_{m,n} = rho^{-1/4} xi_{m,n} rho^{-1/4} from y_0 = I with
// polynomially bounded entries.
Mat conj_raise(const Mat& y, const OUParams& params,
               bool second) {
  const int dim = static_cast<int>(y.rows());
  auto [a, ad] = build_ladder(dim);
  const double b = params.beta;
  const double s = 1.0 / std::sqrt(2.0 * std::sinh(b / 2.0));
  const double f = s / std::sqrt(2.0);
  const double eph = std::exp(b / 2.0), emh = std::exp(-b / 2.0);
  Mat left = eph * (ad.entries * y) - emh * (y * ad.entries);
  Mat right = emh * (a.entries * y) - eph * (y * a.entries);
  return second ? Mat(f * (left + right)) : Mat(f * (left - right));
}

}  // namespace

HSVector generator_hs_apply(const HSVector& v, const GibbsSpec& spec,
                            const OUParams& params) {
  require(v.dim() == spec.dim, "generator_hs_apply: dimension mismatch");
  Mat y = quarter_sandwich(v.mat, spec, -1.0);
  HSVector gy = generator_apply({y}, spec, params);
  return {quarter_sandwich(gy.mat, spec, +1.0)};
}

namespace {

double eigen_residual_from_y(const Mat& y_in, int m, int n,
                             const GibbsSpec& spec, const OUParams& params) {
  Mat xi = quarter_sandwich(y_in, spec, +1.0);
  const double nrm = xi.norm();
  xi /= nrm;
  Mat y = y_in / nrm;
  Mat gy = generator_apply({y}, spec, params).mat;
  Mat g2xi = quarter_sandwich(gy, spec, +1.0);
  const double lambda = m * params.tau1 + n * params.tau2;
  return (g2xi - lambda * xi).norm() / std::max(1.0, lambda);
}

}  // namespace

double eigen_residual(int m, int n, const GibbsSpec& spec,
                      const OUParams& params) {
  require(m >= 0 && n >= 0, "eigen_residual: indices must be nonnegative");
  if (m + n > spec.dim / 4)
    throw computation_error("eigen_residual: truncation too small");
  const int dim = spec.dim;
  Mat y = Mat::Identity(dim, dim);
  for (int t = 0; t < n; ++t) y = conj_raise(y, params, true);
  for (int t = 0; t < m; ++t) y = conj_raise(y, params, false);
  return eigen_residual_from_y(y, m, n, spec, params);
}

std::vector<EigenResidualEntry> eigen_residuals_up_to(const GibbsSpec& spec,
                                                      const OUParams& params,
                                                      int cap) {
  require(cap >= 0, "eigen_residuals_up_to: cap must be nonnegative");
  if (cap > spec.dim / 4)
    throw computation_error("eigen_residuals_up_to: truncation too small");
  const int dim = spec.dim;
  std::vector<EigenResidualEntry> out;
  // column n = 0: raise with A1; higher n reuse the previous column
  std::vector<Mat> col;  // y_{m,0..}: col[m] for current n
  col.push_back(Mat::Identity(dim, dim));
  for (int m = 1; m <= cap; ++m)
    col.push_back(conj_raise(col[m - 1], params, false));
  for (int n = 0; n <= cap; ++n) {
    for (int m = 0; m + n <= cap; ++m)
      out.push_back({m, n, eigen_residual_from_y(col[m], m, n, spec, params)});
    if (n < cap) {
      // col[0] holds (A2*)^n applied to the identity; advance it and re-raise
      Mat base = conj_raise(col[0], params, true);
      col.clear();
      col.push_back(base);
      for (int m = 1; m + n + 1 <= cap; ++m)
        col.push_back(conj_raise(col[m - 1], params, false));
    }
  }
  return out;
}

std::pair<Vec, double> expand_in_basis(const HSVector& x,
                                       const EigenBasis& basis) {
  require(x.dim() == basis.spec.dim, "expand_in_basis: dimension mismatch");
  const int sz = basis.size();
  Vec b(sz);
  for (int i = 0; i < sz; ++i) b(i) = hs_inner(basis.vectors[i], x);
  Vec c;
  if (basis.gram_defect > 1e-10)
    c = basis.gram.ldlt().solve(b);  // Gram-corrected least squares
  else
    c = b;
  Mat recon = Mat::Zero(basis.spec.dim, basis.spec.dim);
  for (int i = 0; i < sz; ++i) recon += c(i) * basis.vectors[i].mat;
  const double resid = (x.mat - recon).norm();
  return {c, resid};
}

SemigroupResult semigroup_apply(double t, const HSVector& x,
                                const EigenBasis& basis,
                                double residual_threshold) {
  require(t >= 0.0, "semigroup_apply: t must be nonnegative");
  auto [c, resid] = expand_in_basis(x, basis);
  if (resid > residual_threshold * std::max(1.0, x.norm()))
    throw computation_error(
        "semigroup_apply: span insufficient, expansion residual " +
        std::to_string(resid));
  Mat out = Mat::Zero(basis.spec.dim, basis.spec.dim);
  for (int i = 0; i < basis.size(); ++i)
    out += c(i) * std::exp(-t * basis.eigenvalue(i)) * basis.vectors[i].mat;
  return {{out}, resid};
}

double ccr_residual(const GibbsSpec& spec, const OUParams& params,
                    int buffer) {
  spec.validate();
  require(buffer > 0 && buffer < spec.dim / 2,
          "ccr_residual: need 0 < buffer < dim/2");
  const int dim = spec.dim;
  const int top = dim - buffer;  // probes supported on indices < top

  std::vector<HSVector> probes;
  std::vector<int> marks = {0, 1, top / 2, top - 2, top - 1};
  for (int r : marks)
    for (int s : marks) {
      if (r < 0 || s < 0 || r >= top || s >= top) continue;
      Mat e = Mat::Zero(dim, dim);
      e(r, s) = 1.0;
      probes.push_back({e});
    }
  Rng rng(0xCC1DULL);
  for (int rep = 0; rep < 2; ++rep) {
    Mat dense = Mat::Zero(dim, dim);
    for (int r = 0; r < top; ++r)
      for (int s = 0; s < top; ++s) dense(r, s) = rng.cnormal();
    dense /= dense.norm();
    probes.push_back({dense});
  }

  auto comm = [&](SuperOp f, SuperOp g, const HSVector& v) {
    HSVector fg = apply_superop(f, apply_superop(g, v, params), params);
    HSVector gf = apply_superop(g, apply_superop(f, v, params), params);
    return HSVector{fg.mat - gf.mat};
  };

  const SuperOp ann[] = {SuperOp::D1, SuperOp::D2, SuperOp::A1, SuperOp::A2};
  const SuperOp cre[] = {SuperOp::D1adj, SuperOp::D2adj, SuperOp::A1adj,
                         SuperOp::A2adj};
  double worst = 0.0;
  for (const auto& v : probes) {
    const double nv = v.norm();
    for (int fam = 0; fam < 2; ++fam) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const int ii = 2 * fam + i, jj = 2 * fam + j;
          HSVector cc = comm(ann[ii], cre[jj], v);
          Mat dev = cc.mat - (i == j ? 1.0 : 0.0) * v.mat;
          worst = std::max(worst, dev.norm() / nv);
          HSVector zz = comm(ann[ii], ann[jj], v);
          worst = std::max(worst, zz.mat.norm() / nv);
        }
    }
  }
  return worst;
}

}  // namespace qou
