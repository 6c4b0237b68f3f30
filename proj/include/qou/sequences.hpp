#ifndef QOU_SEQUENCES_HPP
#define QOU_SEQUENCES_HPP

#include <map>
#include <vector>

#include "qou/common.hpp"

namespace qou {

// Coefficient family {c_{i,i+m}} of an element of F_{k,m}. The index set is
// exactly {i : 2i+m <= k, i >= 0, i+m >= 0}; inserting any other index is
// rejected.
struct OffDiagonalCoeffs {
  int k = 1;
  int m = 0;
  std::map<int, cxd> c;  // i -> c_{i, i+m}

  static bool index_admissible(int k, int m, int i) {
    return i >= 0 && i + m >= 0 && 2 * i + m <= k;
  }
  void set(int i, cxd value);
  cxd get(int i) const;
  void validate() const;
  double abs_coeff_sum() const;
};

// d_{n,i} = sqrt(n!/(n-i)!); exact product for n <= 60, log domain above.
double d_coeff(long long n, long long i);

// f_{k,n,m} = sum_{2i+m<=k, i+m>=0, 0<=i<=n} c_{i,i+m} d_{n,i} d_{n+m,i+m},
// with f = 0 whenever n+m < 0.
cxd eval_f_at(const OffDiagonalCoeffs& coeffs, long long n);

struct SequenceF {
  OffDiagonalCoeffs coeffs;  // kept so norms can extend the truncation
  std::vector<cxd> values;   // f at n = 0 .. values.size()-1
};

SequenceF eval_f(const OffDiagonalCoeffs& coeffs, int n_max);

enum class FMode { FactorOut, ShiftUp, NegativeMirror };

// Structure maps between the F_{k,m} spaces:
//   FactorOut  (m >= 1):  F_{k,m} -> F_{k-1,m-1},  f(n) = sqrt(n+m) g(n)
//   ShiftUp    (m >= 1):  F_{k,m} -> F_{k+1,m-1},  sqrt(n+1) f(n) = g(n+1),
//                         g(0) = 0
//   NegativeMirror (m<0): F_{k,m} -> F_{k,-m},     f(n) = g(n+m) for n >= -m
OffDiagonalCoeffs transform(const OffDiagonalCoeffs& coeffs, FMode mode);

// (sum_n e^{-n beta} |f(n)|^p)^{1/p} with certified polynomial-geometric
// tail below rel_tol relative.
double weighted_lp_norm(const SequenceF& seq, double p, double beta,
                        double rel_tol = 1e-12);
double weighted_lp_norm(const OffDiagonalCoeffs& coeffs, double p, double beta,
                        double rel_tol = 1e-12);

// The explicit constant chain of the weighted-norm theorem, computed exactly
// as the proofs define it.
struct ConstantChain {
  double beta;
  double C1, C2, C3, C4, C5;
  double C_of_beta;  // C(beta) = 4 e^{3 beta/2} C3
  double c_tilde;    // min(beta^-2, beta^-1) / (36 e)
  double C_tilde;    // 24 (1 - e^-beta)^-1 C(beta)

  double Cp(double p) const { return std::sqrt(C_of_beta * p); }
  double cp(double p) const {
    return std::sqrt(3.0 / (1.0 - std::exp(-beta))) * Cp(p);
  }
};

ConstantChain constants(double beta);

struct LemmaCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = false;
};

// ||f||_{p,w} <= e^{m beta (1/(2p) - 1/4)} (C(beta) p)^{k/2} ||f||_{2,w}
LemmaCheck main_lemma_check(const OffDiagonalCoeffs& coeffs, double p,
                            double beta);

// The m >= 0 induction form with constant (2 e^{beta/2})^m (C3 p)^{k/2}.
LemmaCheck band_lemma_check(const OffDiagonalCoeffs& coeffs, double p,
                            double beta);

enum class PolyLemmaMode { Plain, SqrtWeighted };

// Plain:        ||p_k||_{p,w} <= (C1 p)^k ||p_k||_{2,w}
// SqrtWeighted: ||sqrt(n+1) p_k||_{p,w} <= (C3 p)^{(2k+1)/2} ||.||_{2,w}
// poly holds the coefficients of p_k in the monomial basis, degree = size-1.
LemmaCheck poly_lemma_check(const std::vector<cxd>& poly, double p,
                            double beta, PolyLemmaMode mode);

}  // namespace qou

#endif
