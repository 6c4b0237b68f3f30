#ifndef QOU_LINALG_HPP
#define QOU_LINALG_HPP

#include <vector>

#include "qou/common.hpp"
#include "qou/rng.hpp"

namespace qou {

// Singular values of a dense complex matrix, descending (LAPACK zgesvd,
// values only).
std::vector<double> singular_values(const Mat& a);

// Eigenvalues of a real symmetric tridiagonal matrix, ascending
// (LAPACK dsterf). diag has length n, offdiag length n-1.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                            std::vector<double> offdiag);

// Complex Hermitian band matrix in lower band storage:
// band[d][j] = H(j+d, j) for 0 <= d <= kd, j+d < n.
struct HermitianBand {
  int n = 0;
  int kd = 0;
  std::vector<std::vector<cxd>> band;

  HermitianBand(int n_, int kd_)
      : n(n_), kd(kd_), band(kd_ + 1, std::vector<cxd>(n_, cxd(0, 0))) {}
};

// Eigenvalues of a Hermitian band matrix, ascending (zhbtrd + dsterf).
std::vector<double> banded_eigenvalues(const HermitianBand& h);

// General complex band matrix: diagonals with offsets lo..hi,
// diag(w)[n] = B(n, n+w) for max(0,-w) <= n < n_rows - max(0,w).
struct BandMatrix {
  int n = 0;
  int w_lo = 0;
  int w_hi = 0;
  // diags[w - w_lo][n] stores B(n, n+w); entries outside range are unused.
  std::vector<std::vector<cxd>> diags;

  BandMatrix(int n_, int lo_, int hi_)
      : n(n_), w_lo(lo_), w_hi(hi_),
        diags(hi_ - lo_ + 1, std::vector<cxd>(n_, cxd(0, 0))) {}

  Mat to_dense() const;
};

// Singular values of a band matrix, descending, via the banded Hermitian
// eigenproblem for B^* B. Accurate in absolute terms ~ ulp * sigma_max^2 /
// sigma, which is sufficient for Schatten p-norms with p >= 1.
std::vector<double> band_singular_values(const BandMatrix& b);

// adjoint and product of band matrices (same dimension)
BandMatrix band_adjoint(const BandMatrix& a);
BandMatrix band_mult(const BandMatrix& a, const BandMatrix& b);
// tr(a b), summed over the overlapping bands
cxd band_trace_prod(const BandMatrix& a, const BandMatrix& b);
cxd band_trace(const BandMatrix& a);

// sum_i sigma_i(b)^p for even p with p/2 in {1, 2, 4, 8}, computed as
// tr((b^* b)^{p/2}) by banded products; no eigensolve involved.
double band_schatten_pth_power_even(const BandMatrix& b, int p);

// Matrix exponential, scaling-and-squaring with Pade [13/13].
Mat expm(const Mat& a);

// Haar-ish random unitary: QR of a complex Ginibre matrix with the
// R-diagonal phases absorbed.
Mat random_unitary(int dim, Rng& rng);

// sum with Neumaier compensation
struct CompensatedSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

// log Gamma(n+1) with cached table
double log_factorial(long long n);

}  // namespace qou

#endif
