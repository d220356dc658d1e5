#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sense {

using cd = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;
using MatD = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cd kJ{0.0, 1.0};

/// Error thrown when an operation's preconditions are violated. Carries a
/// short machine-checkable code ("band-overflow", "coset-out-of-range", ...)
/// in addition to the human-readable message.
class SenseError : public std::runtime_error {
 public:
  SenseError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline void require(bool cond, const std::string& code, const std::string& msg) {
  if (!cond) throw SenseError(code, msg);
}

}  // namespace sense
