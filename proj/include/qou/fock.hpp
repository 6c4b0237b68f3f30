#ifndef QOU_FOCK_HPP
#define QOU_FOCK_HPP

#include <utility>

#include "qou/common.hpp"

namespace qou {

// Inverse temperature and truncation of the Gibbs setup. q = e^{-beta} is
// derived, never stored. With renormalize=false the truncated density keeps
// the untruncated normalization (1-q), so its trace is 1 - q^dim; the deficit
// is reported, not hidden.
struct GibbsSpec {
  double beta = 1.0;
  int dim = 64;
  bool renormalize = false;

  double q() const { return std::exp(-beta); }
  double trace_deficit() const { return std::pow(q(), dim); }
  void validate() const;
};

enum class OpLabel {
  Annihilation,
  Creation,
  Number,
  Position,
  Momentum,
  Density,
  Weyl,
  General
};

struct FockOperator {
  Mat entries;
  OpLabel label = OpLabel::General;

  int dim() const { return static_cast<int>(entries.rows()); }
};

// a and a^dagger on the D-dimensional corner: a(n-1, n) = sqrt(n).
std::pair<FockOperator, FockOperator> build_ladder(int dim);

FockOperator build_number(int dim);

// Q = (a + a^dagger)/sqrt(2), P = (a - a^dagger)/(sqrt(2) i)
FockOperator build_position(int dim);
FockOperator build_momentum(int dim);

FockOperator build_rho(const GibbsSpec& spec);

// diagonal of rho^s, entrywise (1-q)^s q^{n s}; independent of renormalize
// unless it is set, in which case the renormalized diagonal is raised to s.
RVec rho_diag_pow(const GibbsSpec& spec, double s);

struct WeylResult {
  FockOperator op;
  double unitarity_defect;  // ||W^* W - I||_F
};

// W(z) = exp(i/sqrt(2) (z a^dagger + conj(z) a))
WeylResult weyl(cxd z, const GibbsSpec& spec);

// omega(x) = Tr(rho x)
cxd expect(const FockOperator& x, const GibbsSpec& spec);

}  // namespace qou

#endif
