#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qzspec {

// Multi-indices are 1-based and of length equal to the tensor order.
// A canonical key is the sorted (non-decreasing) representative of the
// permutation orbit of a multi-index.
using MultiIndex = std::vector<int>;

inline MultiIndex canonical_key(MultiIndex idx) {
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline bool is_canonical(const MultiIndex& idx) {
  return std::is_sorted(idx.begin(), idx.end());
}

inline long long factorial(int k) {
  if (k < 0 || k > 20) throw std::invalid_argument("factorial: out of range");
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// (index value, repeat count) pairs for a canonical key, in index order.
inline std::vector<std::pair<int, int>> index_counts(const MultiIndex& key) {
  std::vector<std::pair<int, int>> counts;
  for (int v : key) {
    if (!counts.empty() && counts.back().first == v) {
      ++counts.back().second;
    } else {
      counts.emplace_back(v, 1);
    }
  }
  return counts;
}

// Number of distinct permutations of the key: m! / prod(counts!).
inline long long orbit_multiplicity(const MultiIndex& key) {
  long long mult = factorial(static_cast<int>(key.size()));
  for (const auto& [v, c] : index_counts(key)) mult /= factorial(c);
  return mult;
}

struct MultiIndexOrbit {
  MultiIndex key;
  long long multiplicity = 0;
};

inline MultiIndexOrbit orbit_of(const MultiIndex& idx) {
  MultiIndexOrbit o;
  o.key = canonical_key(idx);
  o.multiplicity = orbit_multiplicity(o.key);
  return o;
}

// Visit every canonical key of the given order over indices 1..dim,
// in lexicographic order.
inline void for_each_canonical_key(int order, int dim,
                                   const std::function<void(const MultiIndex&)>& fn) {
  if (order < 1 || dim < 1) throw std::invalid_argument("for_each_canonical_key: bad shape");
  MultiIndex key(static_cast<size_t>(order), 1);
  for (;;) {
    fn(key);
    int pos = order - 1;
    while (pos >= 0 && key[static_cast<size_t>(pos)] == dim) --pos;
    if (pos < 0) break;
    int next = key[static_cast<size_t>(pos)] + 1;
    for (int j = pos; j < order; ++j) key[static_cast<size_t>(j)] = next;
  }
}

inline long long canonical_key_count(int order, int dim) {
  // C(dim + order - 1, order), kept in long long for desk-scale shapes.
  long long num = 1;
  for (int i = 1; i <= order; ++i) {
    num = num * (dim + i - 1) / i;  // exact at each step for binomials
  }
  return num;
}

}  // namespace qzspec
