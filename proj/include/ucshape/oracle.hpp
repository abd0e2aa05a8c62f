#pragma once

// Brute-force ground truth. Unicellular maps are enumerated in the canonical
// labeling where the face cycle is (0,1,...,2m-1): every fixed-point-free
// involution alpha then yields exactly one map via sigma = alpha o gamma, and
// every unicellular map has exactly one such canonical form (relabel along
// gamma). So iterating the (2m-1)!! involutions enumerates maps exactly once.
//
// Shape maps are enumerated on the diagram side: perfect matchings of the
// backbone with the rainbow pinned and 1-arcs/parallel arcs pruned during
// construction (those are precisely the degree-1/degree-2 dual vertices).

#include "ucshape/diagram.hpp"
#include "ucshape/plane_tree.hpp"
#include "ucshape/unicellular.hpp"

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ucshape {

struct OracleCaps {
  int max_map_edges = 10;         // (2m-1)!! growth; hard default
  int max_shape_edges = 11;       // n+1 for shapes; extended suite needs n = 10

  static OracleCaps from_env() {
    OracleCaps caps;
    if (const char* s = std::getenv("UCSHAPE_ORACLE_CAP")) {
      int v = std::atoi(s);
      if (v > 0) {
        caps.max_map_edges = v;
        caps.max_shape_edges = v + 1;
      }
    }
    return caps;
  }
};

namespace detail {

// All fixed-point-free involutions of {0..2m-1}, smallest-unpaired-first.
// shard/jobs split the top-level choice of 0's partner.
template <typename Emit>
void enumerate_involutions(int m, int shard, int jobs, Emit&& emit) {
  const int n2 = 2 * m;
  std::vector<int> partner(n2, -1);
  std::vector<std::pair<int, int>> stack;
  auto rec = [&](auto&& self) -> void {
    int a = 0;
    while (a < n2 && partner[a] != -1) ++a;
    if (a == n2) {
      emit(partner);
      return;
    }
    for (int b = a + 1; b < n2; ++b) {
      if (partner[b] != -1) continue;
      if (a == 0 && jobs > 1 && (b - 1) % jobs != shard) continue;
      partner[a] = b;
      partner[b] = a;
      self(self);
      partner[a] = -1;
      partner[b] = -1;
    }
  };
  rec(rec);
}

inline UnicellularMap map_from_involution(const std::vector<int>& partner) {
  const int n2 = static_cast<int>(partner.size());
  std::vector<int> alpha_img = partner;
  Permutation alpha(std::move(alpha_img));
  Permutation sigma = alpha.compose(Permutation::full_cycle(n2));
  return UnicellularMap(std::move(sigma), std::move(alpha));
}

}  // namespace detail

// Enumerate all unicellular maps with m edges (canonical forms), streaming
// those that pass `pred` to `emit`. Deterministic order for jobs = 1; with
// jobs > 1, shards are processed concurrently and emit is called under no
// lock, so use a per-shard sink (see enumerate_maps_count).
inline void enumerate_maps(int m, const std::function<bool(const UnicellularMap&)>& pred,
                           const std::function<void(const UnicellularMap&)>& emit,
                           const OracleCaps& caps = OracleCaps::from_env()) {
  if (m < 1) throw std::invalid_argument("edge count must be >= 1");
  if (m > caps.max_map_edges)
    throw std::invalid_argument("map enumeration cap exceeded: m=" + std::to_string(m) +
                                " > " + std::to_string(caps.max_map_edges));
  detail::enumerate_involutions(m, 0, 1, [&](const std::vector<int>& partner) {
    UnicellularMap um = detail::map_from_involution(partner);
    if (!pred || pred(um)) emit(um);
  });
}

// Per-genus counts of all unicellular maps with m edges; sharded.
inline std::vector<long long> count_maps_by_genus(int m, int jobs = 1,
                                                  const OracleCaps& caps = OracleCaps::from_env()) {
  if (m < 1) throw std::invalid_argument("edge count must be >= 1");
  if (m > caps.max_map_edges)
    throw std::invalid_argument("map enumeration cap exceeded: m=" + std::to_string(m) +
                                " > " + std::to_string(caps.max_map_edges));
  const int gmax = m / 2;
  std::vector<std::vector<long long>> acc(jobs, std::vector<long long>(gmax + 1, 0));
  auto work = [&](int shard) {
    // count sigma cycles directly off the involution; sigma = alpha o gamma
    const int n2 = 2 * m;
    std::vector<char> seen(n2);
    detail::enumerate_involutions(m, shard, jobs, [&](const std::vector<int>& partner) {
      std::fill(seen.begin(), seen.end(), 0);
      int v = 0;
      for (int h = 0; h < n2; ++h) {
        if (seen[h]) continue;
        ++v;
        for (int x = h; !seen[x]; x = partner[(x + 1) % n2]) seen[x] = 1;
      }
      int g = (m + 1 - v) / 2;
      ++acc[shard][g];
    });
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::thread> ts;
    for (int j = 0; j < jobs; ++j) ts.emplace_back(work, j);
    for (auto& t : ts) t.join();
  }
  std::vector<long long> out(gmax + 1, 0);
  for (const auto& a : acc)
    for (size_t g = 0; g < a.size(); ++g) out[g] += a[g];
  return out;
}

namespace detail {

// Matchings of backbone positions 0..2m-1 (0-based) with the rainbow
// {0, 2m-1} pinned, no 1-arcs {p, p+1}, and no parallel pair {p-1, q+1}
// around a placed {p, q}. Counting the gamma cycles of the one-vertex
// fatgraph gives the genus: g = (1 + m - r)/2.
template <typename Emit>
void enumerate_shape_matchings(int m, int genus, int shard, int jobs, Emit&& emit) {
  const int n2 = 2 * m;
  std::vector<int> partner(n2, -1);
  partner[0] = n2 - 1;
  partner[n2 - 1] = 0;
  std::vector<char> seen(n2, 0);
  auto rec = [&](auto&& self) -> void {
    int a = 1;
    while (a < n2 && partner[a] != -1) ++a;
    if (a == n2) {
      // genus of the one-vertex fatgraph: r cycles of p -> partner[p+1]
      std::fill(seen.begin(), seen.end(), 0);
      int r = 0;
      for (int h = 0; h < n2; ++h) {
        if (seen[h]) continue;
        ++r;
        for (int x = h; !seen[x]; x = partner[(x + 1) % n2]) seen[x] = 1;
      }
      if (1 + m - 2 * genus == r) emit(partner);
      return;
    }
    int slot = 0;
    for (int b = a + 1; b < n2 - 1; ++b) {
      if (partner[b] != -1) continue;
      if (b == a + 1) continue;                              // 1-arc
      if (a >= 1 && b + 1 < n2 && partner[a - 1] == b + 1) continue;  // parallel
      if (a == 1 && jobs > 1 && slot++ % jobs != shard) continue;
      partner[a] = b;
      partner[b] = a;
      self(self);
      partner[a] = -1;
      partner[b] = -1;
    }
  };
  rec(rec);
}

inline PlantedMap planted_from_matching(const std::vector<int>& partner) {
  // canonical relabeling: position p carries half-edge (p+1) mod 2m
  const int n2 = static_cast<int>(partner.size());
  std::vector<std::pair<int, int>> pairs;
  for (int p = 0; p < n2; ++p)
    if (partner[p] > p) pairs.emplace_back((p + 1) % n2, (partner[p] + 1) % n2);
  Permutation alpha = Permutation::involution_from_pairs(n2, pairs);
  Permutation sigma = alpha.compose(Permutation::full_cycle(n2));
  return PlantedMap(UnicellularMap(std::move(sigma), std::move(alpha)));
}

}  // namespace detail

// All shape maps of genus g with n pure arcs (m = n+1 edges): plant degree 1
// at half-edge 0, every other vertex of degree >= 3, unicellular, canonical.
// Count equals eta_g(n, 0).
inline void enumerate_shape_maps(int n, int genus,
                                 const std::function<void(const PlantedMap&)>& emit,
                                 const OracleCaps& caps = OracleCaps::from_env()) {
  const int m = n + 1;
  if (n < 1) throw std::invalid_argument("need at least one pure arc");
  if (m > caps.max_shape_edges)
    throw std::invalid_argument("shape enumeration cap exceeded: n+1=" + std::to_string(m) +
                                " > " + std::to_string(caps.max_shape_edges));
  detail::enumerate_shape_matchings(m, genus, 0, 1, [&](const std::vector<int>& partner) {
    emit(detail::planted_from_matching(partner));
  });
}

// Count-only variant, sharded across `jobs` threads.
inline long long count_shape_maps(int n, int genus, int jobs = 1,
                                  const OracleCaps& caps = OracleCaps::from_env()) {
  const int m = n + 1;
  if (n < 1) throw std::invalid_argument("need at least one pure arc");
  if (m > caps.max_shape_edges)
    throw std::invalid_argument("shape enumeration cap exceeded: n+1=" + std::to_string(m) +
                                " > " + std::to_string(caps.max_shape_edges));
  std::vector<long long> acc(jobs, 0);
  auto work = [&](int shard) {
    detail::enumerate_shape_matchings(m, genus, shard, jobs,
                                      [&](const std::vector<int>&) { ++acc[shard]; });
  };
  if (jobs <= 1) {
    work(0);
  } else {
    std::vector<std::thread> ts;
    for (int j = 0; j < jobs; ++j) ts.emplace_back(work, j);
    for (auto& t : ts) t.join();
  }
  long long total = 0;
  for (long long a : acc) total += a;
  return total;
}

// All rooted plane trees with the given edge count (lexicographic Dyck-word
// order), unlabeled.
inline std::vector<PlaneTree> enumerate_plane_trees(int edges) {
  std::vector<PlaneTree> out;
  std::string word(2 * edges, ' ');
  auto rec = [&](auto&& self, int pos, int open, int closed) -> void {
    if (pos == 2 * edges) {
      out.push_back(parse_tree("(" + word + ")"));
      return;
    }
    if (open < edges) {
      word[pos] = '(';
      self(self, pos + 1, open + 1, closed);
    }
    if (closed < open) {
      word[pos] = ')';
      self(self, pos + 1, open, closed + 1);
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

// All class trees with n edges and k labeled vertices (every unlabeled vertex
// of effective degree >= 3); count equals eta_0(n, k).
inline void enumerate_class_trees(int n, int k, const std::function<void(const PlaneTree&)>& emit,
                                  const OracleCaps& caps = OracleCaps::from_env()) {
  if (n > caps.max_map_edges)
    throw std::invalid_argument("tree enumeration cap exceeded");
  for (const PlaneTree& base : enumerate_plane_trees(n)) {
    const int v = base.vertex_count();
    if (k < 0 || k > v) continue;
    // iterate k-subsets of vertices as the labeled set
    std::vector<int> pick(k);
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == k) {
        PlaneTree t = base;
        for (int id : pick) t.nodes[id].labeled = true;
        if (is_class_tree(t)) emit(t);
        return;
      }
      for (int x = start; x <= v - (k - depth); ++x) {
        pick[depth] = x;
        self(self, x + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
  }
}

inline long long count_class_trees(int n, int k, const OracleCaps& caps = OracleCaps::from_env()) {
  long long c = 0;
  enumerate_class_trees(n, k, [&](const PlaneTree&) { ++c; }, caps);
  return c;
}

}  // namespace ucshape
