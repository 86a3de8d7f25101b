#include "jamoparse/tree.hpp"

#include <algorithm>
#include <vector>

namespace jamoparse {

bool is_well_formed(std::span<const int> heads) {
  const int n = static_cast<int>(heads.size());
  for (int k = 0; k < n; ++k) {
    if (heads[k] < 0 || heads[k] > n || heads[k] == k + 1) return false;
  }
  // 0 = unvisited, 1 = on current path, 2 = known to reach ROOT
  std::vector<int> state(n + 1, 0);
  state[0] = 2;
  for (int start = 1; start <= n; ++start) {
    std::vector<int> path;
    int t = start;
    while (state[t] == 0) {
      state[t] = 1;
      path.push_back(t);
      t = heads[t - 1];
    }
    if (state[t] == 1) return false;
    for (int p : path) state[p] = 2;
  }
  return true;
}

bool has_single_root(std::span<const int> heads) {
  return std::count(heads.begin(), heads.end(), 0) == 1;
}

bool is_projective(std::span<const int> heads) {
  const int n = static_cast<int>(heads.size());
  for (int a = 1; a <= n; ++a) {
    const int l1 = std::min(a, heads[a - 1]);
    const int r1 = std::max(a, heads[a - 1]);
    for (int b = a + 1; b <= n; ++b) {
      const int l2 = std::min(b, heads[b - 1]);
      const int r2 = std::max(b, heads[b - 1]);
      if ((l1 < l2 && l2 < r1 && r1 < r2) || (l2 < l1 && l1 < r2 && r2 < r1)) return false;
    }
  }
  return true;
}

}  // namespace jamoparse
