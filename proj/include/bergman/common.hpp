#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bergman {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Tolerance used when deciding whether a point sits on the unit sphere.
inline constexpr double kBoundaryTol = 1e-12;

// |1 - <z,a>| below this is treated as a pole hit.
inline constexpr double kPoleGuard = 1e-14;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Signals a violated internal invariant (a bug, not bad input).
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace bergman
