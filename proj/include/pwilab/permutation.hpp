#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pwilab/common.hpp"

namespace pwilab {

/// Permutation of {1..d} in one-line notation, extended by pi(0)=0.
class Permutation {
 public:
  explicit Permutation(std::vector<int> one_line) : map_(std::move(one_line)) {
    const int d = static_cast<int>(map_.size());
    if (d < 2) throw NonBijectiveError("permutation needs d >= 2");
    inverse_.assign(d, 0);
    std::vector<char> seen(d, 0);
    for (int j = 1; j <= d; ++j) {
      const int v = map_[j - 1];
      if (v < 1 || v > d || seen[v - 1])
        throw NonBijectiveError("not a bijection of {1..d}");
      seen[v - 1] = 1;
      inverse_[v - 1] = j;
    }
  }

  static Permutation identity(int d) {
    std::vector<int> p(d);
    for (int j = 0; j < d; ++j) p[j] = j + 1;
    return Permutation(std::move(p));
  }

  int d() const { return static_cast<int>(map_.size()); }

  // pi(j) with the extension pi(0)=0.
  int of(int j) const { return j == 0 ? 0 : map_[j - 1]; }

  // pi^{-1}(j), extended by pi^{-1}(0)=0.
  int inverse_of(int j) const { return j == 0 ? 0 : inverse_[j - 1]; }

  // [j] = j mod (d+1), into {0..d}.
  int bracket(int j) const {
    const int m = d() + 1;
    return ((j % m) + m) % m;
  }

  bool irreducible() const {
    // pi({1..k}) != {1..k} for all k < d; equivalently max pi(1..k) > k.
    int mx = 0;
    for (int k = 1; k < d(); ++k) {
      mx = std::max(mx, map_[k - 1]);
      if (mx == k) return false;
    }
    return true;
  }

  const std::vector<int>& one_line() const { return map_; }

  bool operator==(const Permutation& other) const {
    return map_ == other.map_;
  }

 private:
  std::vector<int> map_;
  std::vector<int> inverse_;
};

}  // namespace pwilab
