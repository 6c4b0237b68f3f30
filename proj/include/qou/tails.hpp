#ifndef QOU_TAILS_HPP
#define QOU_TAILS_HPP

#include <cmath>

#include "qou/common.hpp"
#include "qou/linalg.hpp"

namespace qou {

struct TailSumResult {
  double value = 0.0;
  double tail_bound = 0.0;
  long long n_used = 0;
};

// Certified truncation of  sum_{n >= 0} e^{-n beta} g(n)  where the terms
// satisfy |g(n)| <= A (n+c)^r for n >= n_major. The loop stops once the
// geometric-ratio bound on the remaining tail is below
// rel_tol * |partial| + abs_floor.
template <class G>
TailSumResult weighted_sum_certified(G&& g, double beta, double r, double A,
                                     double c, double rel_tol,
                                     double abs_floor = 0.0,
                                     long long n_major = 0) {
  require(beta > 0.0, "weighted_sum_certified: beta must be positive");
  require(rel_tol > 0.0 || abs_floor > 0.0,
          "weighted_sum_certified: need a stopping tolerance");
  CompensatedSum acc;
  const long long hard_cap = 4'000'000;
  for (long long n = 0;; ++n) {
    if (n > hard_cap)
      throw computation_error("weighted_sum_certified: tail did not certify");
    acc.add(std::exp(-beta * double(n)) * g(n));
    if (n + 1 < n_major) continue;
    // next-term majorant and a ratio bound valid for the whole tail
    double t1 = A * std::pow(double(n) + 1.0 + c, r) *
                std::exp(-beta * (double(n) + 1.0));
    double rho = std::exp(-beta) *
                 std::pow((double(n) + 2.0 + c) / (double(n) + 1.0 + c), r);
    if (rho >= 1.0) continue;
    double tail = t1 / (1.0 - rho);
    if (tail <= rel_tol * std::abs(acc.value()) + abs_floor)
      return {acc.value(), tail, n + 1};
  }
}

}  // namespace qou

#endif
