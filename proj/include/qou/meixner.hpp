#ifndef QOU_MEIXNER_HPP
#define QOU_MEIXNER_HPP

#include <vector>

#include "qou/common.hpp"

namespace qou {

enum class PrecisionMode { Double, Extended };

// Geometric-weight Meixner polynomial
//   L_k(n) = e^{-k beta} sum_{j=0}^k (-1)^j (e^beta - 1)^j C(k,j) C(n,j),
// evaluated by the direct alternating sum. Double mode is allowed only for
// k <= 12 (cancellation guard); Extended mode evaluates with 256-bit
// mantissas (~77 decimal digits) and rounds.
double eval_L(int k, long long n, double beta, PrecisionMode mode);

// sum_{n>=0} e^{-n beta} L_m(n) L_l(n), truncated with a certified tail
// below rel_tol relative (or below rel_tol times the geometric-mean scale
// e^{-(m+l)beta/2}/(1-e^{-beta}) when the sum itself is near zero).
double orthogonality_sum(int m, int l, double beta, double rel_tol);

// sum_{n>=0} e^{-n beta} n^s with certified geometric tail.
double weighted_power_sum(double s, double beta, double rel_tol);

enum class BoundKind { GammaSandwich, PowerSumSandwich, MeixnerPointwise };

struct BoundPoint {
  double s = 0.0;      // GammaSandwich / PowerSumSandwich
  double beta = 0.0;   // PowerSumSandwich / MeixnerPointwise
  int k = 0;           // MeixnerPointwise
  long long n = 0;     // MeixnerPointwise
  double value = 0.0;  // the quantity being sandwiched (log scale for the
                       // two sandwich kinds)
  double lower = 0.0;
  double upper = 0.0;
  double slack = 0.0;
  bool boundary = false;  // flagged when a strict bound is met with equality
};

struct BoundGrid {
  std::vector<double> s;
  std::vector<double> beta;
  int k_max = 0;
  long long n_max = 0;
};

struct BoundReport {
  BoundKind kind;
  std::vector<BoundPoint> grid;
  double worst_slack = 0.0;
  bool passed = false;
};

// Evaluates the cited bounds on the grid. Slack convention: log-gap for the
// two sandwich kinds, relative gap (bound - |L|)/bound for the pointwise
// bound. A point with |slack| <= 1e-12 on a strict bound is flagged as
// boundary rather than failed.
BoundReport verify_bounds(BoundKind kind, const BoundGrid& grid);

}  // namespace qou

#endif
