#include "qou/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qou {

std::vector<double> singular_values(const Mat& a) {
  lapack_int m = static_cast<lapack_int>(a.rows());
  lapack_int n = static_cast<lapack_int>(a.cols());
  if (m == 0 || n == 0) return {};
  Mat work = a;  // zgesvd destroys the input
  std::vector<double> s(std::min(m, n));
  std::vector<double> superb(std::max<lapack_int>(1, std::min(m, n) - 1));
  lapack_int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, 'N', 'N', m, n, work.data(), m, s.data(), nullptr, 1,
      nullptr, 1, superb.data());
  if (info != 0)
    throw computation_error("zgesvd failed to converge, info=" +
                            std::to_string(info));
  return s;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag,
                                            std::vector<double> offdiag) {
  lapack_int n = static_cast<lapack_int>(diag.size());
  if (n == 0) return {};
  if (offdiag.size() + 1 != diag.size())
    throw domain_error("tridiagonal_eigenvalues: offdiag size mismatch");
  if (n > 1) {
    lapack_int info = LAPACKE_dsterf(n, diag.data(), offdiag.data());
    if (info != 0)
      throw computation_error("dsterf failed, info=" + std::to_string(info));
  }
  return diag;
}

std::vector<double> banded_eigenvalues(const HermitianBand& h) {
  lapack_int n = h.n;
  if (n == 0) return {};
  lapack_int kd = std::min(h.kd, h.n - 1);
  lapack_int ldab = kd + 1;
  std::vector<cxd> ab(static_cast<size_t>(ldab) * n, cxd(0, 0));
  for (int d = 0; d <= kd; ++d)
    for (int j = 0; j + d < n; ++j) ab[static_cast<size_t>(j) * ldab + d] = h.band[d][j];
  std::vector<double> diag(n), off(std::max<lapack_int>(1, n - 1));
  cxd qdummy;
  lapack_int info =
      LAPACKE_zhbtrd(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab.data(), ldab,
                     diag.data(), off.data(), &qdummy, 1);
  if (info != 0)
    throw computation_error("zhbtrd failed, info=" + std::to_string(info));
  off.resize(n > 1 ? n - 1 : 0);
  return tridiagonal_eigenvalues(std::move(diag), std::move(off));
}

Mat BandMatrix::to_dense() const {
  Mat a = Mat::Zero(n, n);
  for (int w = w_lo; w <= w_hi; ++w)
    for (int i = std::max(0, -w); i < n - std::max(0, w); ++i)
      a(i, i + w) = diags[w - w_lo][i];
  return a;
}

std::vector<double> band_singular_values(const BandMatrix& b) {
  // H = B^* B has half-bandwidth (w_hi - w_lo).
  int kd = b.w_hi - b.w_lo;
  HermitianBand h(b.n, std::min(kd, b.n - 1));
  auto entry = [&](int i, int j) -> cxd {
    if (j < 0 || j >= b.n) return cxd(0, 0);
    int w = j - i;
    if (i < 0 || i >= b.n || w < b.w_lo || w > b.w_hi) return cxd(0, 0);
    return b.diags[w - b.w_lo][i];
  };
  for (int j = 0; j < b.n; ++j) {
    for (int d = 0; d <= h.kd && j + d < b.n; ++d) {
      // H(j+d, j) = sum_r conj(B(r, j+d)) B(r, j)
      cxd acc(0, 0);
      int r_lo = std::max({0, j + d - b.w_hi, j - b.w_hi});
      int r_hi = std::min({b.n - 1, j + d - b.w_lo, j - b.w_lo});
      for (int r = r_lo; r <= r_hi; ++r)
        acc += std::conj(entry(r, j + d)) * entry(r, j);
      h.band[d][j] = acc;
    }
  }
  auto lam = banded_eigenvalues(h);
  std::vector<double> s(lam.size());
  for (size_t i = 0; i < lam.size(); ++i)
    s[i] = std::sqrt(std::max(0.0, lam[lam.size() - 1 - i]));
  return s;
}

BandMatrix band_adjoint(const BandMatrix& a) {
  BandMatrix out(a.n, -a.w_hi, -a.w_lo);
  for (int w = a.w_lo; w <= a.w_hi; ++w)
    for (int i = std::max(0, -w); i < a.n - std::max(0, w); ++i)
      out.diags[-w - out.w_lo][i + w] = std::conj(a.diags[w - a.w_lo][i]);
  return out;
}

BandMatrix band_mult(const BandMatrix& a, const BandMatrix& b) {
  if (a.n != b.n) throw domain_error("band_mult: dimension mismatch");
  BandMatrix out(a.n, a.w_lo + b.w_lo, a.w_hi + b.w_hi);
  for (int w = out.w_lo; w <= out.w_hi; ++w) {
    auto& dst = out.diags[w - out.w_lo];
    for (int v = a.w_lo; v <= a.w_hi; ++v) {
      const int u = w - v;  // C(i, i+w) += A(i, i+v) B(i+v, i+v+u)
      if (u < b.w_lo || u > b.w_hi) continue;
      const auto& da = a.diags[v - a.w_lo];
      const auto& db = b.diags[u - b.w_lo];
      const int i_lo = std::max({0, -w, -v});
      const int i_hi = a.n - std::max({0, w, v});
      for (int i = i_lo; i < i_hi; ++i) dst[i] += da[i] * db[i + v];
    }
  }
  return out;
}

cxd band_trace_prod(const BandMatrix& a, const BandMatrix& b) {
  if (a.n != b.n) throw domain_error("band_trace_prod: dimension mismatch");
  cxd acc(0, 0);
  for (int v = a.w_lo; v <= a.w_hi; ++v) {
    const int u = -v;
    if (u < b.w_lo || u > b.w_hi) continue;
    const auto& da = a.diags[v - a.w_lo];
    const auto& db = b.diags[u - b.w_lo];
    for (int i = std::max(0, -v); i < a.n - std::max(0, v); ++i)
      acc += da[i] * db[i + v];
  }
  return acc;
}

cxd band_trace(const BandMatrix& a) {
  cxd acc(0, 0);
  if (a.w_lo <= 0 && 0 <= a.w_hi) {
    const auto& d = a.diags[-a.w_lo];
    for (int i = 0; i < a.n; ++i) acc += d[i];
  }
  return acc;
}

double band_schatten_pth_power_even(const BandMatrix& b, int p) {
  const int q = p / 2;
  if (p != 2 * q || (q != 1 && q != 2 && q != 4 && q != 8))
    throw domain_error("band_schatten_pth_power_even: p/2 must be 1,2,4,8");
  BandMatrix h = band_mult(band_adjoint(b), b);
  if (q == 1) return band_trace(h).real();
  if (q == 2) return band_trace_prod(h, h).real();
  BandMatrix h2 = band_mult(h, h);
  if (q == 4) return band_trace_prod(h2, h2).real();
  BandMatrix h4 = band_mult(h2, h2);
  return band_trace_prod(h4, h4).real();
}

Mat expm(const Mat& a) {
  // Higham scaling-and-squaring with the [13/13] Pade approximant.
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const int n = static_cast<int>(a.rows());
  double norm1 = 0.0;
  for (int j = 0; j < n; ++j) norm1 = std::max(norm1, a.col(j).cwiseAbs().sum());
  int squarings = 0;
  const double theta13 = 5.371920351148152;
  if (norm1 > theta13)
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  Mat as = a / std::pow(2.0, squarings);

  Mat a2 = as * as;
  Mat a4 = a2 * a2;
  Mat a6 = a2 * a4;
  Mat id = Mat::Identity(n, n);
  Mat u = as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                b[5] * a4 + b[3] * a2 + b[1] * id);
  Mat v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
          b[2] * a2 + b[0] * id;
  Mat f = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) f = f * f;
  return f;
}

Mat random_unitary(int dim, Rng& rng) {
  Mat g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = rng.cnormal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    cxd d = r(j, j);
    double ad = std::abs(d);
    q.col(j) *= (ad > 0 ? d / ad : cxd(1, 0));
  }
  return q;
}

double log_factorial(long long n) {
  static std::vector<double> table;
  static std::once_flag flag;
  std::call_once(flag, [] {
    // per-entry lgamma, not a running sum, so errors do not accumulate
    table.resize(1 << 15);
    for (size_t i = 0; i < table.size(); ++i)
      table[i] = std::lgamma(double(i) + 1.0);
  });
  if (n < 0) throw domain_error("log_factorial: negative argument");
  if (n < static_cast<long long>(table.size())) return table[n];
  return std::lgamma(double(n) + 1.0);
}

}  // namespace qou
