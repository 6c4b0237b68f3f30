#ifndef QOU_COMMON_HPP
#define QOU_COMMON_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qou {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Contract violations (bad dimensions, inadmissible parameters, out-of-range
// indices) throw domain_error; numerical failures that depend on the data
// (truncation too small, expansion residual too large, no admissible root)
// throw computation_error.
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct computation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw domain_error(msg);
}

}  // namespace qou

#endif
