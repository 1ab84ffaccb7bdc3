#pragma once

#include "pwilab/common.hpp"

namespace pwilab {

/// Orientation-preserving planar isometry z -> e^{i theta} z + lambda,
/// with theta stored normalized into [0, 2*pi).
class Isometry {
 public:
  Isometry() : theta_(0.0), lambda_(0.0, 0.0) {}
  Isometry(double theta, Complex lambda)
      : theta_(wrap_two_pi(theta)), lambda_(lambda) {}

  static Isometry identity() { return Isometry(); }

  double theta() const { return theta_; }
  Complex lambda() const { return lambda_; }

  Complex operator()(Complex z) const {
    return unit_phase(theta_) * z + lambda_;
  }

  Complex apply_inverse(Complex z) const {
    return unit_phase(-theta_) * (z - lambda_);
  }

  Isometry inverse() const {
    return Isometry(-theta_, -unit_phase(-theta_) * lambda_);
  }

  // this o other
  Isometry compose(const Isometry& other) const {
    return Isometry(theta_ + other.theta_,
                    unit_phase(theta_) * other.lambda_ + lambda_);
  }

  bool near_identity(double tol = kIsometryTol) const {
    const double t = wrap_pi(theta_);
    return std::abs(t) < tol && std::abs(lambda_) < tol;
  }

 private:
  double theta_;
  Complex lambda_;
};

inline Isometry compose(const Isometry& a, const Isometry& b) {
  return a.compose(b);
}

}  // namespace pwilab
