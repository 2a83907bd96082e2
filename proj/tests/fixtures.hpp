#pragma once

#include <utility>
#include <vector>

#include "ordfix/poset.hpp"

namespace ordfix::testing {

// The four-element lattice 0 < {1, 2} < 3 with 1, 2 incomparable; indices
// read as subsets: 0 = {}, 1 = {a}, 2 = {b}, 3 = {a,b}.
inline FinitePoset diamond() {
  std::vector<std::pair<int, int>> covers{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return FinitePoset::from_covers(4, covers);
}

// 0 < 1 and 0 < 2 with no top.
inline FinitePoset vee() {
  std::vector<std::pair<int, int>> covers{{0, 1}, {0, 2}};
  return FinitePoset::from_covers(3, covers);
}

inline FinitePoset chain(int n) {
  std::vector<std::pair<int, int>> covers;
  for (int i = 0; i + 1 < n; ++i) covers.emplace_back(i, i + 1);
  return FinitePoset::from_covers(n, covers);
}

inline FinitePoset antichain(int n) {
  return FinitePoset::from_covers(n, {});
}

}  // namespace ordfix::testing
