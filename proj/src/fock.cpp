#include "qou/fock.hpp"

#include <cmath>

#include "qou/linalg.hpp"

namespace qou {

void GibbsSpec::validate() const {
  require(beta > 0.0, "GibbsSpec: beta must be positive");
  require(dim >= 2, "GibbsSpec: dim must be at least 2");
}

std::pair<FockOperator, FockOperator> build_ladder(int dim) {
  require(dim >= 2, "build_ladder: invalid dimension, need dim >= 2");
  Mat a = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  FockOperator lower{a, OpLabel::Annihilation};
  FockOperator raise{a.adjoint(), OpLabel::Creation};
  return {lower, raise};
}

FockOperator build_number(int dim) {
  require(dim >= 2, "build_number: invalid dimension");
  Mat nmat = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) nmat(n, n) = double(n);
  return {nmat, OpLabel::Number};
}

FockOperator build_position(int dim) {
  auto [a, ad] = build_ladder(dim);
  return {(a.entries + ad.entries) / std::sqrt(2.0), OpLabel::Position};
}

FockOperator build_momentum(int dim) {
  auto [a, ad] = build_ladder(dim);
  return {(a.entries - ad.entries) / (std::sqrt(2.0) * cxd(0, 1)),
          OpLabel::Momentum};
}

FockOperator build_rho(const GibbsSpec& spec) {
  spec.validate();
  Mat rho = Mat::Zero(spec.dim, spec.dim);
  const double q = spec.q();
  for (int n = 0; n < spec.dim; ++n)
    rho(n, n) = (1.0 - q) * std::exp(-spec.beta * n);
  if (spec.renormalize) rho /= (1.0 - spec.trace_deficit());
  return {rho, OpLabel::Density};
}

RVec rho_diag_pow(const GibbsSpec& spec, double s) {
  spec.validate();
  RVec d(spec.dim);
  const double lognorm =
      std::log1p(-spec.q()) -
      (spec.renormalize ? std::log1p(-spec.trace_deficit()) : 0.0);
  for (int n = 0; n < spec.dim; ++n)
    d(n) = std::exp(s * (lognorm - spec.beta * n));
  return d;
}

WeylResult weyl(cxd z, const GibbsSpec& spec) {
  spec.validate();
  auto [a, ad] = build_ladder(spec.dim);
  Mat x = (cxd(0, 1) / std::sqrt(2.0)) *
          (z * ad.entries + std::conj(z) * a.entries);
  Mat w = expm(x);
  double defect =
      (w.adjoint() * w - Mat::Identity(spec.dim, spec.dim)).norm();
  return {FockOperator{w, OpLabel::Weyl}, defect};
}

cxd expect(const FockOperator& x, const GibbsSpec& spec) {
  spec.validate();
  require(x.dim() == spec.dim, "expect: dimension mismatch");
  RVec rho = rho_diag_pow(spec, 1.0);
  cxd acc(0, 0);
  for (int n = 0; n < spec.dim; ++n) acc += rho(n) * x.entries(n, n);
  return acc;
}

}  // namespace qou
