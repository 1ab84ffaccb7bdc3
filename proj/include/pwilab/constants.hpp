#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "pwilab/common.hpp"

// Registry of every published constant used as a default anywhere in the
// library or CLI. Values are quoted with their printed precision; two of
// them are corrected transcription errors, see the notes.

namespace pwilab::constants {

// ---- three-atom system (the map T') -------------------------------------

inline constexpr double kAlphaPrime = 1.3;
inline constexpr double kBetaPrime = 0.75;

inline const Complex kZ1Prime{0.215998, 0.168125};
inline const Complex kZ2Prime{0.491520, 0.051612};
inline const Complex kZ3Prime{0.586452, 0.0};

// The printed value 4.460361 for theta'_1 is a misprint: with it the
// cycle relations of the conjugacy fail by O(1), while solving them for
// e^{i theta_1} returns modulus 0.9999993 and argument 4.96037. Every
// downstream check (anchor equations, symbolic match, residual) passes
// only with 4.960361.
inline constexpr double kThetaPrime1 = 4.960361;
inline constexpr double kThetaPrime2 = 0.800153;
inline constexpr double kThetaPrime3 = 0.995933;

inline const std::array<double, 3> kThetaPrime{kThetaPrime1, kThetaPrime2,
                                               kThetaPrime3};

// lambda'_1 = z'_3 - e^{i theta'_1} z'_1
// lambda'_2 = e^{i theta'_3}(z'_3 - z'_2) - e^{i theta'_2} z'_1
// lambda'_3 = -e^{i theta'_3} z'_2
// The printed sign of lambda'_3 is positive; the minus sign is forced by
// the printed lambda'_2 (which already encodes T'_3(z'_3 - z'_2) with the
// same minus) and by every numerical check.
inline std::array<Complex, 3> lambda_prime() {
  const Complex e1 = unit_phase(kThetaPrime1);
  const Complex e2 = unit_phase(kThetaPrime2);
  const Complex e3 = unit_phase(kThetaPrime3);
  return {kZ3Prime - e1 * kZ1Prime, e3 * (kZ3Prime - kZ2Prime) - e2 * kZ1Prime,
          -e3 * kZ2Prime};
}

inline const std::array<double, 3> kLengthsPrime{0.3910666426, 0.4553369973,
                                                 0.1535963601};
// pi' = (2)(13) in one-line notation
inline const std::array<int, 3> kPermPrime{3, 2, 1};

inline const std::array<Complex, 3> kXiPrime{Complex{-0.453, 0.651},
                                             Complex{0.326, 0.669},
                                             Complex{0.417, 0.679}};
inline constexpr double kResidualPrime = 1.19e-5;

// ---- four-cone family and its return strip ------------------------------

inline const double kGoldenRatioConjugate = (std::sqrt(5.0) - 1.0) / 2.0;

inline constexpr double kConeAlpha = 0.5;
inline constexpr double kConeBeta = 1.0;

inline const std::array<double, 4> kLengthsStrip{0.1217970148, 0.1329352086,
                                                 0.2008884081, 0.3550989199};
// pi = (2)(143) in one-line notation
inline const std::array<int, 4> kPermStrip{4, 2, 1, 3};

// h(0) = 0.47665 e^{i 0.68165 pi}
inline const double kStripAnchorModulus = 0.47665;
inline const double kStripAnchorArgument = 0.68165 * std::numbers::pi;
inline const Complex kStripAnchor =
    kStripAnchorModulus * unit_phase(kStripAnchorArgument);

inline const Complex kStripSeed{0.0, 0.416};
inline const double kCurveRadii[2] = {0.470, 0.503};

inline const std::array<Complex, 4> kXiStrip{
    Complex{0.718, 0.125}, Complex{0.538, -0.512}, Complex{0.460, -0.438},
    Complex{0.300, -0.562}};
inline constexpr double kResidualStrip = 6.30e-6;

}  // namespace pwilab::constants
