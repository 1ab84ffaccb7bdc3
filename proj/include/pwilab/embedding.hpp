#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "pwilab/common.hpp"
#include "pwilab/iet.hpp"
#include "pwilab/pwi.hpp"

namespace pwilab {

enum class EmbeddingKind { linear, arc };

/// A trivial embedding h of an IET into a planar PWI, stored through its
/// per-atom closed-form parameters (linear: h|_{I_j}(x) = z_j + v_j x;
/// arc: h|_{I_j}(x) = z_j + r_j e^{i(a_j x + b_j)}) and a companion PWI.
struct TrivialEmbedding {
  EmbeddingKind kind;
  Iet iet;
  Pwi companion;
  Complex anchor;  // h(0)

  std::vector<Complex> offsets;        // z_j
  std::vector<Complex> slopes;         // v_j (linear kind)
  std::vector<double> radii;           // r_j (arc kind)
  std::vector<double> angular_rates;   // a_j
  std::vector<double> phases;          // b_j

  Complex h(double x) const {
    const int j = iet.atom_of(x);
    if (kind == EmbeddingKind::linear)
      return offsets[j - 1] + slopes[j - 1] * x;
    return offsets[j - 1] +
           radii[j - 1] *
               unit_phase(angular_rates[j - 1] * x + phases[j - 1]);
  }
};

namespace detail {

inline HalfPlane vertical(double c, Sense sense) {
  // signed value Re(z) - c
  return HalfPlane{std::numbers::pi / 2.0, Complex(c, 0.0), sense};
}

inline HalfPlane horizontal(double c, Sense sense) {
  // signed value Im(z) - c
  return HalfPlane{0.0, Complex(0.0, c), sense};
}

}  // namespace detail

/// Rectangle atoms I_j x [0, height) translated horizontally by tau_j;
/// h(x) = x + i height/2.
inline TrivialEmbedding trivial_linear_embedding(const Iet& iet,
                                                 double height) {
  if (!(height > 0.0)) throw NonPositiveLengthError("height must be positive");
  const int d = iet.d();
  std::vector<ConvexRegion> atoms;
  std::vector<Isometry> maps;
  for (int j = 1; j <= d; ++j) {
    atoms.push_back(ConvexRegion({
        detail::vertical(iet.breakpoints()[j - 1], Sense::ge),
        detail::vertical(iet.breakpoints()[j], Sense::lt),
        detail::horizontal(0.0, Sense::ge),
        detail::horizontal(height, Sense::lt),
    }));
    maps.emplace_back(0.0, Complex(iet.translations()[j - 1], 0.0));
  }
  BoundingBox box{0.0, iet.total_length(), 0.0, height};
  TrivialEmbedding emb{EmbeddingKind::linear,
                       iet,
                       Pwi(std::move(atoms), std::move(maps), "linear", box),
                       Complex(0.0, height / 2.0),
                       {}, {}, {}, {}, {}};
  emb.offsets.assign(d, Complex(0.0, height / 2.0));
  emb.slopes.assign(d, Complex(1.0, 0.0));
  return emb;
}

/// Circular-arc embedding on the unit circle: atoms are the cones over the
/// arcs of angular width rho*mu_j, rho = pi/|I|, each rotated by rho*tau_j;
/// h(x) = e^{i rho x}.
inline TrivialEmbedding trivial_arc_embedding(const Iet& iet) {
  const int d = iet.d();
  const double rho = std::numbers::pi / iet.total_length();
  std::vector<ConvexRegion> atoms;
  std::vector<Isometry> maps;
  for (int j = 1; j <= d; ++j) {
    const double a = rho * iet.breakpoints()[j - 1];
    const double b = rho * iet.breakpoints()[j];
    atoms.push_back(ConvexRegion({
        HalfPlane{-a, Complex(0.0, 0.0), Sense::ge},
        HalfPlane{-b, Complex(0.0, 0.0), Sense::lt},
    }));
    maps.emplace_back(rho * iet.translations()[j - 1], Complex(0.0, 0.0));
  }
  BoundingBox box{-1.1, 1.1, -1.1, 1.1};
  TrivialEmbedding emb{EmbeddingKind::arc,
                       iet,
                       Pwi(std::move(atoms), std::move(maps), "arc", box),
                       Complex(1.0, 0.0),
                       {}, {}, {}, {}, {}};
  emb.offsets.assign(d, Complex(0.0, 0.0));
  emb.radii.assign(d, 1.0);
  emb.angular_rates.assign(d, rho);
  emb.phases.assign(d, 0.0);
  return emb;
}

/// Length of the longest common prefix between the PWI atom trace of z0
/// and the IET itinerary of x0, after renumbering PWI atoms through
/// `alignment` (alignment[j-1] = PWI atom matching IET symbol j; empty
/// means identity). Escape before `n` agreeing steps raises Escaped.
inline std::size_t symbolic_match(const Iet& iet, const Pwi& pwi, Complex z0,
                                  std::size_t n,
                                  std::span<const int> alignment = {},
                                  double x0 = 0.0) {
  if (pwi.atom_count() != iet.d())
    throw OutOfDomainError("atom count mismatch");
  Complex z = z0;
  double x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto a = pwi.locate(z);
    if (!a) throw EscapedError("orbit escapes during match", k);
    const int symbol = iet.atom_of(x);
    const int expected =
        alignment.empty() ? symbol : alignment[symbol - 1];
    if (*a != expected) return k;
    z = pwi.map(*a)(z);
    x = iet.apply(x);
  }
  return n;
}

struct TangentState {
  double x = 0.0;
  double y = 0.0;  // fiber angle, kept in [0, 2*pi)
};

/// Orbit of the tangent exchange map Psi(x, y) = (f(x), y + theta_{j(x)}),
/// returning Psi^k(start) for k = 0..n.
inline std::vector<TangentState> tangent_orbit(const Iet& iet,
                                               std::span<const double> theta,
                                               TangentState start,
                                               std::int64_t n) {
  std::vector<TangentState> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  double x = start.x;
  double y = wrap_two_pi(start.y);
  out.push_back({x, y});
  for (std::int64_t k = 0; k < n; ++k) {
    const int j = iet.atom_of(x);
    y = wrap_two_pi(y + theta[j - 1]);
    x = iet.apply(x);
    out.push_back({x, y});
  }
  return out;
}

/// Rotational cocycle C^{(n)}(x): accumulated rotation along the orbit.
/// For n < 0 the cocycle identity gives C^{(n)}(x) = -C^{(-n)}(f^n(x)),
/// accumulated along the backward orbit.
inline double rotational_cocycle(const Iet& iet, std::span<const double> theta,
                                 double x, std::int64_t n) {
  double acc = 0.0;
  if (n >= 0) {
    for (std::int64_t k = 0; k < n; ++k) {
      acc += theta[iet.atom_of(x) - 1];
      x = iet.apply(x);
    }
    return acc;
  }
  for (std::int64_t k = 0; k < -n; ++k) {
    x = iet.apply_inverse(x);
    acc += theta[iet.atom_of(x) - 1];
  }
  return -acc;
}

struct ErgodicEstimate {
  std::int64_t level = 0;
  std::int64_t p_at_level = 0;               // p(level)
  std::vector<std::int64_t> visit_counts;    // m_j(p(level))
  std::vector<Complex> rotation_sums;        // e_j(p(level))
  std::vector<Complex> xi;                   // e_j / m_j
};

/// The p(n) record sequence of the orbit of 0: p(1) is the first entry
/// time into I_1, p(n) the first later time beating the previous record.
inline std::vector<std::int64_t> record_times(const Iet& iet,
                                              std::int64_t level,
                                              std::int64_t cap = 10000000) {
  std::vector<std::int64_t> p;
  double x = 0.0;
  double record = 0.0;
  for (std::int64_t k = 1;
       static_cast<std::int64_t>(p.size()) < level && k <= cap; ++k) {
    x = iet.apply(x);
    if (p.empty()) {
      if (iet.atom_of(x) == 1) {
        p.push_back(k);
        record = x;
      }
    } else if (x < record) {
      p.push_back(k);
      record = x;
    }
  }
  if (static_cast<std::int64_t>(p.size()) < level)
    throw CapExceededError("p(level) not reached within cap");
  return p;
}

/// Ergodic averages xi_j at truncation p(level). Each visit of the orbit
/// of 0 to I_j at time t contributes exp(-i C^{(t+1)}(0)); this is the
/// c_j(k) sequence of the first-return construction evaluated along one
/// pass of the orbit. Visits are counted with k in 1..p(level) unless
/// `count_from_zero` is set.
inline ErgodicEstimate xi_estimates(const Iet& iet,
                                    std::span<const double> theta,
                                    std::int64_t level,
                                    std::int64_t cap = 10000000,
                                    bool count_from_zero = false) {
  const int d = iet.d();
  const std::vector<std::int64_t> p = record_times(iet, level, cap);
  const std::int64_t P = p.back();

  ErgodicEstimate est;
  est.level = level;
  est.p_at_level = P;
  est.visit_counts.assign(d, 0);
  est.rotation_sums.assign(d, Complex(0.0, 0.0));
  est.xi.assign(d, Complex(0.0, 0.0));

  // Per atom, the number of exp(-i c) terms kept is m_j; visits at time 0
  // contribute a term only under the count-from-zero convention.
  std::vector<std::vector<Complex>> terms(d);
  double x = 0.0;
  double cumulative = 0.0;  // C^{(t)}(0)
  for (std::int64_t t = 0; t <= P; ++t) {
    const int j = iet.atom_of(x);
    const double next = cumulative + theta[j - 1];  // C^{(t+1)}(0)
    terms[j - 1].push_back(unit_phase(-next));
    if (count_from_zero || t >= 1) est.visit_counts[j - 1] += 1;
    x = iet.apply(x);
    cumulative = next;
  }
  for (int j = 0; j < d; ++j) {
    const std::int64_t m = est.visit_counts[j];
    if (m == 0) throw AtomNeverVisitedError("m_j = 0 at p(level)");
    Complex e(0.0, 0.0);
    for (std::int64_t k = 0; k < m; ++k) e += terms[j][k];
    est.rotation_sums[j] = e;
    est.xi[j] = e / static_cast<double>(m);
  }
  return est;
}

/// Magnitude of the ergodic necessary condition
/// sum_j (lambda_j - h(0)(1 - e^{i theta_j})) xi_j mu_j.
inline double ergodic_residual(const Iet& iet, std::span<const double> theta,
                               std::span<const Complex> lambda, Complex h0,
                               std::span<const Complex> xi) {
  Complex acc(0.0, 0.0);
  for (int j = 0; j < iet.d(); ++j) {
    const Complex coeff =
        lambda[j] - h0 * (Complex(1.0, 0.0) - unit_phase(theta[j]));
    acc += coeff * xi[j] * iet.lengths()[j];
  }
  return std::abs(acc);
}

/// Closed-form xi_j for the resonant case theta_j = 2 pi tau_j / |I|:
/// the average of e^{-2 pi i x} over f(I_j), with |I| rescaled to 1.
inline Complex corollary_xi(const Iet& iet, int j) {
  const double s = iet.total_length();
  const double a =
      (iet.breakpoints()[j - 1] + iet.translations()[j - 1]) / s;
  const double mu = iet.lengths()[j - 1] / s;
  const Complex numer =
      Complex(1.0, 0.0) - unit_phase(-kTwoPi * mu);
  return unit_phase(-kTwoPi * a) * numer / Complex(0.0, kTwoPi * mu);
}

inline bool resonance_check(const Iet& iet, std::span<const double> theta,
                            double tol = 1e-10) {
  const double s = iet.total_length();
  for (int j = 0; j < iet.d(); ++j)
    if (std::abs(wrap_pi(theta[j] - kTwoPi * iet.translations()[j] / s)) >
        tol)
      return false;
  return true;
}

}  // namespace pwilab
