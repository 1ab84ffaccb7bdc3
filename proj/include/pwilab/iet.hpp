#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "pwilab/common.hpp"
#include "pwilab/permutation.hpp"

namespace pwilab {

/// Finite itinerary over the alphabet {1..d}.
struct Itinerary {
  std::vector<int> symbols;

  std::size_t length() const { return symbols.size(); }
  bool operator==(const Itinerary& other) const {
    return symbols == other.symbols;
  }
};

/// d-interval exchange transformation on [0, x_d).
///
/// Breakpoints x_j and translations tau_j are accumulated left-to-right
/// from the lengths; atom membership uses exact half-open comparison
/// [x_{j-1}, x_j), with a separate proximity flag for boundary grazing.
class Iet {
 public:
  Iet(std::vector<double> lengths, Permutation perm,
      bool require_irreducible = true)
      : lengths_(std::move(lengths)), perm_(std::move(perm)) {
    const int d = perm_.d();
    if (static_cast<int>(lengths_.size()) != d)
      throw NonBijectiveError("lengths/perm size mismatch");
    for (double m : lengths_)
      if (!(m > 0.0)) throw NonPositiveLengthError("lengths must be positive");
    if (require_irreducible && !perm_.irreducible())
      throw ReducibleError("permutation is reducible");

    breakpoints_.resize(d + 1);
    breakpoints_[0] = 0.0;
    for (int j = 1; j <= d; ++j)
      breakpoints_[j] = breakpoints_[j - 1] + lengths_[j - 1];

    translations_.resize(d);
    for (int j = 1; j <= d; ++j) {
      double before_image = 0.0;
      for (int k = 1; k <= d; ++k)
        if (perm_.of(k) < perm_.of(j)) before_image += lengths_[k - 1];
      translations_[j - 1] = before_image - breakpoints_[j - 1];
    }
  }

  int d() const { return perm_.d(); }
  const Permutation& perm() const { return perm_; }
  const std::vector<double>& lengths() const { return lengths_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& translations() const { return translations_; }
  double total_length() const { return breakpoints_.back(); }

  /// 1-based index j with x in [x_{j-1}, x_j).
  int atom_of(double x) const {
    if (x < 0.0 || x >= breakpoints_.back())
      throw OutOfDomainError("point outside [0, |I|)");
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return static_cast<int>(it - breakpoints_.begin());
  }

  bool near_breakpoint(double x, double tol = kBoundaryTol) const {
    for (double b : breakpoints_)
      if (std::abs(x - b) < tol) return true;
    return false;
  }

  double apply(double x) const { return x + translations_[atom_of(x) - 1]; }

  double apply_inverse(double x) const {
    if (x < 0.0 || x >= breakpoints_.back())
      throw OutOfDomainError("point outside [0, |I|)");
    // The images of the atoms tile [0, x_d); find the atom whose image
    // contains x.
    for (int j = 1; j <= d(); ++j) {
      const double lo = breakpoints_[j - 1] + translations_[j - 1];
      const double hi = breakpoints_[j] + translations_[j - 1];
      if (x >= lo && x < hi) return x - translations_[j - 1];
    }
    throw OutOfDomainError("no preimage found");
  }

  Itinerary itinerary(double x, std::size_t n) const {
    Itinerary it;
    it.symbols.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const int j = atom_of(x);
      it.symbols.push_back(j);
      x += translations_[j - 1];
    }
    return it;
  }

 private:
  std::vector<double> lengths_;
  Permutation perm_;
  std::vector<double> breakpoints_;
  std::vector<double> translations_;
};

struct RauzyResult {
  Iet induced;
  int type;    // 0: f(I_{pi^{-1}(d)}) inside I_d, 1: I_d inside f(I_{pi^{-1}(d)})
  int winner;
  int loser;
};

/// One step of Rauzy-Veech induction: the first return of f to I' with the
/// loser interval removed, computed combinatorially.
inline RauzyResult rauzy_step(const Iet& iet) {
  const int d = iet.d();
  const Permutation& pi = iet.perm();
  const int k = pi.inverse_of(d);  // interval whose image lands on top
  const std::vector<double>& mu = iet.lengths();
  if (std::abs(mu[k - 1] - mu[d - 1]) < kBoundaryTol)
    throw DegenerateStepError("|I_d| = |f(I_{pi^{-1}(d)})|");

  std::vector<double> nmu(d);
  std::vector<int> npi(d);
  const int pd = pi.of(d);
  if (mu[k - 1] < mu[d - 1]) {
    // type 0: winner I_d, loser f(I_k)
    nmu = mu;
    nmu[d - 1] -= mu[k - 1];
    for (int j = 1; j <= d; ++j) {
      const int pj = pi.of(j);
      if (j == k)
        npi[j - 1] = pd + 1;
      else if (pj <= pd)
        npi[j - 1] = pj;
      else
        npi[j - 1] = pj + 1;
    }
    return RauzyResult{Iet(std::move(nmu), Permutation(std::move(npi)),
                           /*require_irreducible=*/false),
                       0, d, k};
  }
  // type 1: winner I_k (its image), loser I_d
  for (int j = 1; j <= d; ++j) {
    if (j < k)
      nmu[j - 1] = mu[j - 1];
    else if (j == k)
      nmu[j - 1] = mu[k - 1] - mu[d - 1];
    else if (j == k + 1)
      nmu[j - 1] = mu[d - 1];
    else
      nmu[j - 1] = mu[j - 2];
  }
  for (int j = 1; j <= d; ++j) {
    if (j < k)
      npi[j - 1] = pi.of(j);
    else if (j == k)
      npi[j - 1] = d;  // pi(k) was d; the trimmed I_k keeps the top image slot
    else if (j == k + 1)
      npi[j - 1] = pd;
    else
      npi[j - 1] = pi.of(j - 1);
  }
  return RauzyResult{Iet(std::move(nmu), Permutation(std::move(npi)),
                         /*require_irreducible=*/false),
                     1, k, d};
}

enum class ReturnConvention {
  strict_after_one,  // n = min{k > 1 : f^k(x) in I_j}, the paper's Eq. (eq10)
  standard           // n = min{k >= 1 : f^k(x) in I_j}
};

struct ReturnResult {
  std::int64_t steps;
  double point;
};

inline ReturnResult first_return(
    const Iet& iet, int atom, double x, std::int64_t cap = 10000000,
    ReturnConvention convention = ReturnConvention::strict_after_one) {
  if (iet.atom_of(x) != atom) throw OutOfDomainError("x not in I_j");
  const std::int64_t kmin =
      convention == ReturnConvention::strict_after_one ? 2 : 1;
  double y = x;
  for (std::int64_t k = 1; k <= cap; ++k) {
    y = iet.apply(y);
    if (k >= kmin && iet.atom_of(y) == atom) return ReturnResult{k, y};
  }
  throw CapExceededError("no return within cap");
}

struct ZeroOrbitStats {
  std::vector<std::int64_t> p;               // p(1), p(2), ...
  std::vector<std::int64_t> visit_counts;    // m_j(n_max), k in 1..n_max
  std::vector<std::int64_t> first_hit_time;  // k_j = min{k >= 0 : f^k(0) in I_j}
  std::vector<double> first_hit_point;       // x'_j = f^{k_j}(0)
};

/// Statistics of the forward orbit of 0 over n_max iterates: the record
/// sequence p(n), per-atom visit counts m_j, and first hits k_j, x'_j.
inline ZeroOrbitStats zero_orbit_statistics(const Iet& iet,
                                            std::int64_t n_max) {
  if (n_max < 1) throw OutOfDomainError("n_max must be >= 1");
  const int d = iet.d();
  ZeroOrbitStats st;
  st.visit_counts.assign(d, 0);
  st.first_hit_time.assign(d, -1);
  st.first_hit_point.assign(d, 0.0);

  double x = 0.0;
  double record = 0.0;
  bool have_first_p = false;
  for (std::int64_t k = 0; k <= n_max; ++k) {
    const int j = iet.atom_of(x);
    if (st.first_hit_time[j - 1] < 0) {
      st.first_hit_time[j - 1] = k;
      st.first_hit_point[j - 1] = x;
    }
    if (k >= 1) {
      st.visit_counts[j - 1] += 1;
      if (!have_first_p) {
        if (j == 1) {
          st.p.push_back(k);
          record = x;
          have_first_p = true;
        }
      } else if (x < record) {
        st.p.push_back(k);
        record = x;
      }
    }
    x = iet.apply(x);
  }
  for (int j = 0; j < d; ++j)
    if (st.first_hit_time[j] < 0)
      throw CapExceededError("atom never visited within n_max");
  return st;
}

/// Heuristic infinite-distinct-orbit-condition certificate: backward orbits
/// of the interior breakpoints up to `depth` steps must stay pairwise
/// distinct and off the breakpoints.
inline bool idoc_check(const Iet& iet, std::int64_t depth = 10000) {
  const int d = iet.d();
  std::vector<double> pts(iet.breakpoints().begin(),
                          iet.breakpoints().end() - 1);
  for (int j = 1; j < d; ++j) {
    double x = iet.breakpoints()[j];
    for (std::int64_t k = 0; k < depth; ++k) {
      x = iet.apply_inverse(x);
      pts.push_back(x);
    }
  }
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] - pts[i - 1] < kBoundaryTol) return false;
  return true;
}

/// Criterion for existence of a discontinuous embedding: some interior
/// breakpoint is mapped to an interior breakpoint by f^{-1}.
inline bool discontinuous_embedding_predicate(const Iet& iet) {
  const int d = iet.d();
  for (int i = 1; i < d; ++i) {
    const double pre = iet.apply_inverse(iet.breakpoints()[i]);
    for (int j = 1; j < d; ++j)
      if (std::abs(pre - iet.breakpoints()[j]) < kBoundaryTol) return true;
  }
  return false;
}

}  // namespace pwilab
