#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pwilab/common.hpp"
#include "pwilab/iet.hpp"
#include "pwilab/isometry.hpp"
#include "pwilab/region.hpp"

namespace pwilab {

struct BoundingBox {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;
};

/// Planar piecewise isometry: ordered atoms with one isometry each.
/// Atom resolution is first-match in declaration order.
class Pwi {
 public:
  Pwi(std::vector<ConvexRegion> atoms, std::vector<Isometry> maps,
      std::string name, BoundingBox box = {})
      : atoms_(std::move(atoms)),
        maps_(std::move(maps)),
        name_(std::move(name)),
        box_(box) {
    if (atoms_.size() != maps_.size() || atoms_.empty())
      throw EmptyInputError("atoms/maps size mismatch");
  }

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  const ConvexRegion& atom(int j) const { return atoms_[j - 1]; }
  const Isometry& map(int j) const { return maps_[j - 1]; }
  const std::string& name() const { return name_; }
  const BoundingBox& box() const { return box_; }

  /// 1-based index of the first atom containing z, if any.
  std::optional<int> locate(Complex z) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i].contains(z)) return static_cast<int>(i + 1);
    return std::nullopt;
  }

  std::pair<Complex, int> apply(Complex z) const {
    const auto j = locate(z);
    if (!j) throw NoAtomError("point escapes the atom union");
    return {maps_[*j - 1](z), *j};
  }

 private:
  std::vector<ConvexRegion> atoms_;
  std::vector<Isometry> maps_;
  std::string name_;
  BoundingBox box_;
};

struct OrbitRecord {
  std::vector<Complex> points;  // seed (post-transient) plus each iterate
  Itinerary atom_trace;         // atom index per point; omits an escaped point
  std::vector<bool> boundary_flags;
  std::optional<std::int64_t> escaped_at;  // absolute step counting transient
};

/// Iterates the PWI for `transient` discarded steps plus `n` recorded
/// steps. Escape (NoAtom) ends the record; it is data, not an error.
inline OrbitRecord pwi_orbit(const Pwi& pwi, Complex z0, std::int64_t n,
                             std::int64_t transient = 0) {
  OrbitRecord rec;
  Complex z = z0;
  for (std::int64_t k = 0; k < transient; ++k) {
    const auto j = pwi.locate(z);
    if (!j) {
      rec.points.push_back(z);
      rec.escaped_at = k;
      return rec;
    }
    z = pwi.map(*j)(z);
  }
  rec.points.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    rec.points.push_back(z);
    const auto j = pwi.locate(z);
    if (!j) {
      rec.escaped_at = transient + k;
      return rec;
    }
    rec.atom_trace.symbols.push_back(*j);
    rec.boundary_flags.push_back(pwi.atom(*j).near_boundary(z));
    if (k < n) z = pwi.map(*j)(z);
  }
  return rec;
}

struct PwiReturnResult {
  std::int64_t steps;
  Complex point;
};

/// First return of z to the union of `section` regions under the PWI.
inline PwiReturnResult pwi_first_return(
    const Pwi& pwi, const std::vector<ConvexRegion>& section, Complex z,
    std::int64_t cap = 1000000) {
  auto in_section = [&](Complex w) {
    for (const ConvexRegion& r : section)
      if (r.contains(w)) return true;
    return false;
  };
  if (!in_section(z)) throw OutOfDomainError("seed not in section");
  Complex w = z;
  for (std::int64_t k = 1; k <= cap; ++k) {
    const auto j = pwi.locate(w);
    if (!j) throw EscapedError("orbit escapes before returning",
                               static_cast<std::size_t>(k - 1));
    w = pwi.map(*j)(w);
    if (in_section(w)) return PwiReturnResult{k, w};
  }
  throw CapExceededError("no return within cap");
}

namespace detail {

/// Convex difference minuend \ subtrahend, valid when the difference is
/// itself convex: appends the one complemented constraint of the
/// subtrahend that reproduces the set difference on a point sample.
inline ConvexRegion convex_subtract(const ConvexRegion& minuend,
                                    const ConvexRegion& subtrahend,
                                    const BoundingBox& box) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> ux(box.xmin, box.xmax);
  std::uniform_real_distribution<double> uy(box.ymin, box.ymax);
  std::vector<Complex> samples;
  samples.reserve(4000);
  for (int attempts = 0; samples.size() < 4000; ++attempts) {
    if (attempts > 10000000)
      throw DegenerateStepError("minuend too thin to sample");
    const Complex z(ux(rng), uy(rng));
    if (!minuend.contains(z)) continue;
    if (minuend.near_boundary(z, 1e-9) || subtrahend.near_boundary(z, 1e-9))
      continue;
    samples.push_back(z);
  }
  for (const HalfPlane& h : subtrahend.constraints()) {
    const HalfPlane flipped = h.complemented();
    bool ok = true;
    for (Complex z : samples) {
      const bool want = !subtrahend.contains(z);
      if (flipped.contains(z) != want) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<HalfPlane> hs = minuend.constraints();
      hs.push_back(flipped);
      return ConvexRegion(std::move(hs), minuend.special_points());
    }
  }
  throw DegenerateStepError("set difference is not a half-plane cut");
}

}  // namespace detail

/// Rauzy-Veech step for a PWI embedding: the first-return system on the
/// induced domain X', with one branch composed (T after T) on the piece
/// that leaves X' for one step. Atoms are returned in the order of the
/// induced IET labels, matching rauzy_step(iet).
inline Pwi induced_pwi(const Pwi& pwi, const Iet& iet, int atom_for_d) {
  const int d = iet.d();
  if (pwi.atom_count() != d) throw OutOfDomainError("atom count mismatch");
  const RauzyResult rr = rauzy_step(iet);  // fixes the type, may throw
  const int k = iet.perm().inverse_of(d);
  auto X = [&](int j) -> const ConvexRegion& {
    return pwi.atom(j == d ? atom_for_d : j);
  };
  auto T = [&](int j) -> const Isometry& {
    return pwi.map(j == d ? atom_for_d : j);
  };

  std::vector<ConvexRegion> atoms;
  std::vector<Isometry> maps;
  atoms.reserve(d);
  maps.reserve(d);
  if (rr.type == 0) {
    // Loser is f(I_k) inside I_d: X_d shrinks by T(X_k), and X_k maps by T^2.
    for (int j = 1; j <= d; ++j) {
      if (j == d) {
        atoms.push_back(detail::convex_subtract(
            X(d), X(k).transformed(T(k)), pwi.box()));
        maps.push_back(T(d));
      } else if (j == k) {
        atoms.push_back(X(k));
        maps.push_back(T(d).compose(T(k)));
      } else {
        atoms.push_back(X(j));
        maps.push_back(T(j));
      }
    }
  } else {
    // Loser is I_d inside f(I_k): X_k splits at the preimage of X_d.
    const ConvexRegion pre = X(d).transformed(T(k).inverse());
    const ConvexRegion split = region_intersect(X(k), pre);
    for (int j = 1; j <= d; ++j) {
      if (j < k) {
        atoms.push_back(X(j));
        maps.push_back(T(j));
      } else if (j == k) {
        atoms.push_back(detail::convex_subtract(X(k), split, pwi.box()));
        maps.push_back(T(k));
      } else if (j == k + 1) {
        atoms.push_back(split);
        maps.push_back(T(d).compose(T(k)));
      } else {
        atoms.push_back(X(j - 1));
        maps.push_back(T(j - 1));
      }
    }
  }
  return Pwi(std::move(atoms), std::move(maps), pwi.name() + "-induced",
             pwi.box());
}

}  // namespace pwilab
