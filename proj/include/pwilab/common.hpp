#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pwilab {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Breakpoint/atom-boundary proximity threshold. Comparisons against
// breakpoints themselves are exact half-open; this only drives the
// boundary-grazing flags and degeneracy checks.
inline constexpr double kBoundaryTol = 1e-12;

// Isometry algebra round-off budget.
inline constexpr double kIsometryTol = 1e-13;

// |Theta_pi(p0)| below this counts as resonant (rotation sum zero).
inline constexpr double kResonanceEps = 1e-9;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfDomainError : Error {
  using Error::Error;
};
struct NonBijectiveError : Error {
  using Error::Error;
};
struct NonPositiveLengthError : Error {
  using Error::Error;
};
struct ReducibleError : Error {
  using Error::Error;
};
struct DegenerateStepError : Error {
  using Error::Error;
};
struct CapExceededError : Error {
  using Error::Error;
};
struct NoAtomError : Error {
  using Error::Error;
};
struct EscapedError : Error {
  std::size_t step;
  EscapedError(const std::string& what, std::size_t step_index)
      : Error(what), step(step_index) {}
};
struct ResonantThetaError : Error {
  using Error::Error;
};
struct AtomNeverVisitedError : Error {
  using Error::Error;
};
struct ParameterOutOfRangeError : Error {
  using Error::Error;
};
struct EmptyInputError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// Wraps an angle into [0, 2*pi).
inline double wrap_two_pi(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t == kTwoPi) t = 0.0;
  return t;
}

// Wraps an angle into (-pi, pi].
inline double wrap_pi(double t) {
  t = std::fmod(t, kTwoPi);
  if (t <= -std::numbers::pi) t += kTwoPi;
  if (t > std::numbers::pi) t -= kTwoPi;
  return t;
}

inline Complex unit_phase(double t) { return std::polar(1.0, t); }

}  // namespace pwilab
