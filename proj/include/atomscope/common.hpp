#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace atomscope {

// Invalid argument / precondition violation.
class param_error : public std::invalid_argument {
public:
  explicit param_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Iterative method failed to converge, eigensolver failure, etc.
class solver_error : public std::runtime_error {
public:
  explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched grids or wrong RadialFunction kind.
class kind_error : public std::invalid_argument {
public:
  explicit kind_error(const std::string& msg) : std::invalid_argument(msg) {}
};

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
// Subcriticality threshold for the Coulomb coupling kappa = Z*alpha.
inline constexpr double kappa_critical = 2.0 / pi;
// Kato constant K in  int |f|^2/|x| <= K int |p| |fhat|^2.
// The standard value is pi/2; see relkin::check_kato.
inline constexpr double kato_constant = pi / 2.0;
// Sommerfeld correction exponent zeta = (-7 + sqrt(73))/2.
inline const double sommerfeld_zeta = (std::sqrt(73.0) - 7.0) / 2.0;
}  // namespace constants

}  // namespace atomscope
