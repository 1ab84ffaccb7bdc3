#pragma once

#include <span>
#include <vector>

#include "pwilab/common.hpp"
#include "pwilab/isometry.hpp"
#include "pwilab/permutation.hpp"

namespace pwilab {

/// The graph G_pi on vertices {0..d}; every vertex has a unique successor
/// and the cycles partition the vertex set.
struct ConnectingGraph {
  int d = 0;
  std::vector<int> successor;           // indexed by vertex 0..d
  std::vector<std::vector<int>> cycles;

  bool connected() const { return cycles.size() == 1; }
};

inline ConnectingGraph build_graph(const Permutation& perm) {
  if (!perm.irreducible()) throw ReducibleError("permutation is reducible");
  const int d = perm.d();
  ConnectingGraph g;
  g.d = d;
  g.successor.assign(d + 1, -1);
  // Edge rule: v_{pi^{-1}([i-1])} -> v_{[pi^{-1}(i)-1]} for i in {0..d}.
  for (int i = 0; i <= d; ++i) {
    const int from = perm.inverse_of(perm.bracket(i - 1));
    g.successor[from] = perm.bracket(perm.inverse_of(i) - 1);
  }
  std::vector<char> seen(d + 1, 0);
  for (int v = 0; v <= d; ++v) {
    if (seen[v]) continue;
    std::vector<int> cycle{v};
    seen[v] = 1;
    for (int w = g.successor[v]; w != v; w = g.successor[w]) {
      cycle.push_back(w);
      seen[w] = 1;
    }
    g.cycles.push_back(std::move(cycle));
  }
  return g;
}

struct ConnectingSequence {
  int p0 = 0;
  std::vector<int> vertices;  // one full period starting at p0

  int period() const { return static_cast<int>(vertices.size()); }
};

inline ConnectingSequence connecting_sequence(const ConnectingGraph& graph,
                                              int p0) {
  if (p0 < 0 || p0 > graph.d) throw OutOfDomainError("vertex out of range");
  ConnectingSequence seq;
  seq.p0 = p0;
  seq.vertices.push_back(p0);
  for (int w = graph.successor[p0]; w != p0; w = graph.successor[w])
    seq.vertices.push_back(w);
  return seq;
}

struct ConnectingMap {
  Isometry map;          // F_{p0}
  double theta_sum = 0;  // Theta_pi(p0) reduced to (-pi, pi]
};

/// F_{p0} = composition over one period of T_{p_k}^{-1} o T_{g(p_k)},
/// g(p) = pi^{-1}([pi(p)+1]), with T_0 the identity.
inline ConnectingMap connecting_map(std::span<const double> theta,
                                    std::span<const Complex> lambda,
                                    const Permutation& perm, int p0) {
  const int d = perm.d();
  if (static_cast<int>(theta.size()) != d ||
      static_cast<int>(lambda.size()) != d)
    throw OutOfDomainError("theta/lambda size mismatch");
  const ConnectingGraph g = build_graph(perm);
  const ConnectingSequence seq = connecting_sequence(g, p0);
  auto T = [&](int j) {
    return j == 0 ? Isometry::identity() : Isometry(theta[j - 1], lambda[j - 1]);
  };
  auto th = [&](int j) { return j == 0 ? 0.0 : theta[j - 1]; };
  auto g_of = [&](int p) {
    return perm.inverse_of(perm.bracket(perm.of(p) + 1));
  };
  Isometry F = Isometry::identity();
  double total = 0.0;
  for (int pk : seq.vertices) {
    const int q = g_of(pk);
    F = F.compose(T(pk).inverse().compose(T(q)));
    total += th(q) - th(pk);
  }
  return ConnectingMap{F, wrap_pi(total)};
}

struct ParametricCoefficients {
  std::vector<Complex> r;  // coefficient of lambda_j in F_{p0}(0)
  double theta_sum = 0;
};

/// Extracts r_j by evaluating F_{p0}(0) on the standard lambda basis;
/// F_{p0}(0) is linear in lambda.
inline ParametricCoefficients parametric_coefficients(
    std::span<const double> theta, const Permutation& perm, int p0) {
  const int d = perm.d();
  ParametricCoefficients out;
  out.r.resize(d);
  std::vector<Complex> basis(d, Complex(0.0, 0.0));
  for (int j = 0; j < d; ++j) {
    basis[j] = Complex(1.0, 0.0);
    const ConnectingMap cm = connecting_map(theta, basis, perm, p0);
    out.r[j] = cm.map(Complex(0.0, 0.0));
    out.theta_sum = cm.theta_sum;
    basis[j] = Complex(0.0, 0.0);
  }
  return out;
}

/// Left side of the parametric connecting equation, sum_j lambda_j r_j;
/// equals F_{p0}(0).
inline Complex parametric_residual(std::span<const double> theta,
                                   std::span<const Complex> lambda,
                                   const Permutation& perm, int p0) {
  return connecting_map(theta, lambda, perm, p0).map(Complex(0.0, 0.0));
}

/// Unique fixed point of F_{p0}, defined when Theta_pi(p0) is away from
/// zero: h(x_{p0}) = (1 - e^{i Theta})^{-1} F_{p0}(0).
inline Complex forced_anchor(std::span<const double> theta,
                             std::span<const Complex> lambda,
                             const Permutation& perm, int p0,
                             double eps_theta = kResonanceEps) {
  const ConnectingMap cm = connecting_map(theta, lambda, perm, p0);
  if (std::abs(cm.theta_sum) <= eps_theta)
    throw ResonantThetaError("Theta_pi(p0) is resonant (zero rotation sum)");
  return cm.map(Complex(0.0, 0.0)) /
         (Complex(1.0, 0.0) - unit_phase(cm.theta_sum));
}

}  // namespace pwilab
