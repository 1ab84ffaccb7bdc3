#pragma once

#include <vector>

#include "pwilab/common.hpp"
#include "pwilab/isometry.hpp"

namespace pwilab {

enum class Sense {
  gt,  // Im(e^{i phi}(z - anchor)) >  0
  ge,  //                           >= 0
  lt,  //                           <  0
  le   //                           <= 0
};

/// Half-plane {z : sense(Im(e^{i phi}(z - anchor)))}.
struct HalfPlane {
  double phi = 0.0;
  Complex anchor{0.0, 0.0};
  Sense sense = Sense::ge;

  double signed_value(Complex z) const {
    return (unit_phase(phi) * (z - anchor)).imag();
  }

  bool contains(Complex z) const {
    const double v = signed_value(z);
    switch (sense) {
      case Sense::gt: return v > 0.0;
      case Sense::ge: return v >= 0.0;
      case Sense::lt: return v < 0.0;
      case Sense::le: return v <= 0.0;
    }
    return false;
  }

  bool near_boundary(Complex z, double tol = kBoundaryTol) const {
    return std::abs(signed_value(z)) < tol;
  }

  // Image under T: anchor moves with T, phi compensates the rotation so
  // that contains(T(z)) == old.contains(z).
  HalfPlane transformed(const Isometry& iso) const {
    return HalfPlane{phi - iso.theta(), iso(anchor), sense};
  }

  HalfPlane complemented() const {
    Sense flipped = sense;
    switch (sense) {
      case Sense::gt: flipped = Sense::le; break;
      case Sense::ge: flipped = Sense::lt; break;
      case Sense::lt: flipped = Sense::ge; break;
      case Sense::le: flipped = Sense::gt; break;
    }
    return HalfPlane{phi, anchor, flipped};
  }
};

/// Intersection of half-planes, optionally extended by explicitly listed
/// special points (e.g. a cone apex the paper includes by hand).
class ConvexRegion {
 public:
  ConvexRegion() = default;
  explicit ConvexRegion(std::vector<HalfPlane> constraints,
                        std::vector<Complex> special_points = {})
      : constraints_(std::move(constraints)),
        special_points_(std::move(special_points)) {}

  const std::vector<HalfPlane>& constraints() const { return constraints_; }
  const std::vector<Complex>& special_points() const {
    return special_points_;
  }

  bool contains(Complex z) const {
    for (Complex p : special_points_)
      if (z == p) return true;
    for (const HalfPlane& h : constraints_)
      if (!h.contains(z)) return false;
    return true;
  }

  bool near_boundary(Complex z, double tol = kBoundaryTol) const {
    for (const HalfPlane& h : constraints_)
      if (h.near_boundary(z, tol)) return true;
    return false;
  }

  ConvexRegion transformed(const Isometry& iso) const {
    std::vector<HalfPlane> hs;
    hs.reserve(constraints_.size());
    for (const HalfPlane& h : constraints_) hs.push_back(h.transformed(iso));
    std::vector<Complex> sp;
    sp.reserve(special_points_.size());
    for (Complex p : special_points_) sp.push_back(iso(p));
    return ConvexRegion(std::move(hs), std::move(sp));
  }

 private:
  std::vector<HalfPlane> constraints_;
  std::vector<Complex> special_points_;
};

inline ConvexRegion region_intersect(const ConvexRegion& a,
                                     const ConvexRegion& b) {
  std::vector<HalfPlane> hs = a.constraints();
  hs.insert(hs.end(), b.constraints().begin(), b.constraints().end());
  // Special points survive only if they lie in the other region too.
  std::vector<Complex> sp;
  for (Complex p : a.special_points())
    if (b.contains(p)) sp.push_back(p);
  for (Complex p : b.special_points())
    if (a.contains(p)) sp.push_back(p);
  return ConvexRegion(std::move(hs), std::move(sp));
}

}  // namespace pwilab
