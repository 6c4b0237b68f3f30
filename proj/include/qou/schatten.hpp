#ifndef QOU_SCHATTEN_HPP
#define QOU_SCHATTEN_HPP

#include <vector>

#include "qou/common.hpp"
#include "qou/fock.hpp"

namespace qou {

struct SingularSpectrum {
  std::vector<double> values;  // descending
  int source_dim = 0;
};

SingularSpectrum singular_spectrum(const Mat& x);

// (sum sigma_i^p)^{1/p}; p = infinity gives sigma_max. p < 1 is rejected.
double schatten_norm_from_spectrum(const SingularSpectrum& s, double p);
double schatten_norm(const Mat& x, double p);
double schatten_norm(const FockOperator& x, double p);

// || rho^{1/(2p)} x rho^{1/(2p)} ||_p against the diagonal Gibbs density.
double kosaki_norm(const Mat& x, double p, const GibbsSpec& spec);
double kosaki_norm(const FockOperator& x, double p, const GibbsSpec& spec);

struct SandwichResult {
  double lower = 0.0;
  double mid = 0.0;
  double upper = 0.0;
  bool passed = false;
};

// A = sum a_n (e_n ox e_{n+1} + e_{n+1} ox e_n) on dimension len+1;
// checks (2^{1/p}/3) ||a||_p <= ||A||_p <= 2 ||a||_p. The grid overload
// shares one singular spectrum across all p.
SandwichResult sandwich_check(const std::vector<double>& a_seq, double p);
std::vector<SandwichResult> sandwich_check(const std::vector<double>& a_seq,
                                           const std::vector<double>& p_grid);

struct BclResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = false;
};

// ||rho^{1/2} y rho^{1/2}||_{L_p}^2 <= |omega(y)|^2 +
//   (p-1) ||rho^{1/2}(y - omega(y)) rho^{1/2}||_{L_p}^2
BclResult bcl_check(const FockOperator& y, double p, const GibbsSpec& spec);

}  // namespace qou

#endif
