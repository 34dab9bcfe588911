#ifndef LWXI_ERRORS_HPP
#define LWXI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lwxi {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent scenario/config input.
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_no(line) {}
  int line_no = 0;
};

// Failure of a numerical procedure (integration, root finding, quadrature).
struct NumericalError : Error {
  using Error::Error;
};

// s -> 0: the particle approaches forward light speed and the xi
// parametrization degenerates.
struct SFactorCollapse : NumericalError {
  explicit SFactorCollapse(double s_value, double xi)
      : NumericalError("s-factor collapse (s = " + std::to_string(s_value) +
                       " at xi = " + std::to_string(xi) + " um)"),
        s(s_value), xi_um(xi) {}
  double s;
  double xi_um;
};

// Evaluation outside a declared domain (sampled pump grid, axial field range, ...).
struct DomainError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace lwxi

#endif
