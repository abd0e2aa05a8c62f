#pragma once

// Rooted plane trees with labeled/unlabeled vertices, Remy's two insertions,
// shape-sectors, and the restricted insertion that generates the trees whose
// gluings are shapes.
//
// Planted convention: the root carries one virtual plant half-edge, so the
// effective degree of every vertex is (number of children) + 1 and a tree
// with e edges has 2e+1 sectors (gaps between consecutive children, plus one
// before the first and one after the last; the root's pre-first gap sits
// next to the plant).

#include "ucshape/rng.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucshape {

struct PlaneTree {
  struct Node {
    int parent = -1;
    std::vector<int> children;
    bool labeled = false;
  };

  std::vector<Node> nodes;
  int root = 0;

  int vertex_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return vertex_count() - 1; }

  int effective_degree(int v) const { return static_cast<int>(nodes[v].children.size()) + 1; }

  int labeled_count() const {
    int c = 0;
    for (const auto& n : nodes) c += n.labeled;
    return c;
  }

  // Preorder traversal (children left to right).
  std::vector<int> preorder() const {
    std::vector<int> out, stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out.push_back(v);
      const auto& ch = nodes[v].children;
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return out;
  }

  // Balanced-parenthesis serialization with '*' marking labeled vertices,
  // e.g. ((*)()(*)). Canonical: equal strings iff equal labeled plane trees.
  std::string serialize() const {
    std::string s;
    serialize_rec(root, s);
    return s;
  }

  bool operator==(const PlaneTree& o) const { return serialize() == o.serialize(); }

 private:
  void serialize_rec(int v, std::string& s) const {
    s += '(';
    if (nodes[v].labeled) s += '*';
    for (int c : nodes[v].children) serialize_rec(c, s);
    s += ')';
  }
};

inline PlaneTree parse_tree(const std::string& s) {
  PlaneTree t;
  t.nodes.clear();
  int cur = -1;
  for (char c : s) {
    if (c == '(') {
      t.nodes.push_back({});
      int id = static_cast<int>(t.nodes.size()) - 1;
      t.nodes[id].parent = cur;
      if (cur >= 0) t.nodes[cur].children.push_back(id);
      cur = id;
    } else if (c == '*') {
      if (cur < 0) throw std::runtime_error("label mark outside a vertex");
      t.nodes[cur].labeled = true;
    } else if (c == ')') {
      if (cur < 0) throw std::runtime_error("unbalanced ')'");
      cur = t.nodes[cur].parent;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::runtime_error(std::string("unexpected character '") + c + "' in tree");
    }
  }
  if (cur != -1 || t.nodes.empty()) throw std::runtime_error("unbalanced tree string");
  t.root = 0;
  return t;
}

// Uniform rooted plane tree with `edges` edges, all vertices labeled.
// Balanced sequence by shuffling e up-steps and e+1 down-steps, rotated at
// the first prefix-sum minimum (cycle lemma): linear time, no rejection,
// exactly uniform over the Cat(e) trees.
inline PlaneTree uniform_tree(int edges, SplitMix64& rng) {
  if (edges < 0) throw std::invalid_argument("negative edge count");
  PlaneTree t;
  t.nodes.push_back({});
  t.nodes[0].labeled = true;
  if (edges == 0) return t;

  std::vector<int> steps(2 * edges + 1, -1);
  for (int i = 0; i < edges; ++i) steps[i] = 1;
  rng.shuffle(steps);

  int sum = 0, min_sum = 1, rot = 0;
  for (int i = 0; i < static_cast<int>(steps.size()); ++i) {
    sum += steps[i];
    if (sum < min_sum) {
      min_sum = sum;
      rot = i + 1;
    }
  }

  int cur = 0;
  for (int i = 0; i < 2 * edges; ++i) {
    int s = steps[(rot + i) % steps.size()];
    if (s == 1) {
      t.nodes.push_back({});
      int id = static_cast<int>(t.nodes.size()) - 1;
      t.nodes[id].parent = cur;
      t.nodes[id].labeled = true;
      t.nodes[cur].children.push_back(id);
      cur = id;
    } else {
      cur = t.nodes[cur].parent;
    }
  }
  if (cur != 0) throw std::logic_error("tree build did not return to the root");
  return t;
}

// A sector: the gap after the first `gap` children of `node` (gap = 0 is
// before the first child, gap = #children after the last).
struct Sector {
  int node = 0;
  int gap = 0;
  bool operator==(const Sector&) const = default;
};

enum class RemyKind { Leaf, NonLeaf };

inline void check_sector(const PlaneTree& t, Sector s) {
  if (s.node < 0 || s.node >= t.vertex_count())
    throw std::invalid_argument("sector vertex out of range");
  if (s.gap < 0 || s.gap > static_cast<int>(t.nodes[s.node].children.size()))
    throw std::invalid_argument("sector gap out of range");
}

// All 2e+1 sectors, preorder vertices then ascending gap.
inline std::vector<Sector> all_sectors(const PlaneTree& t) {
  std::vector<Sector> out;
  for (int v : t.preorder())
    for (int g = 0; g <= static_cast<int>(t.nodes[v].children.size()); ++g)
      out.push_back({v, g});
  return out;
}

// Remy insertion. Leaf kind: hang a new leaf in the sector. Non-leaf kind:
// the new vertex takes over the sector's vertex position, carrying that
// vertex (with its children left of the gap) as its leftmost subtree and
// adopting the children right of the gap.
inline PlaneTree remy_insert(const PlaneTree& tree, Sector s, RemyKind kind, bool labeled) {
  check_sector(tree, s);
  PlaneTree t = tree;
  t.nodes.push_back({});
  const int u = static_cast<int>(t.nodes.size()) - 1;
  t.nodes[u].labeled = labeled;
  auto& v = t.nodes[s.node];
  if (kind == RemyKind::Leaf) {
    t.nodes[u].parent = s.node;
    v.children.insert(v.children.begin() + s.gap, u);
    return t;
  }
  t.nodes[u].children.assign(1, s.node);
  for (size_t i = s.gap; i < v.children.size(); ++i) {
    int c = v.children[i];
    t.nodes[u].children.push_back(c);
    t.nodes[c].parent = u;
  }
  v.children.resize(s.gap);
  t.nodes[u].parent = v.parent;
  if (v.parent >= 0) {
    for (int& c : t.nodes[v.parent].children)
      if (c == s.node) c = u;
  } else {
    t.root = u;
  }
  v.parent = u;
  return t;
}

// Inverse of remy_insert for the vertex `w`; returns the tree with w removed
// plus the sector and kind that regenerate it. Node ids above w shift down
// by one in the returned tree.
struct RemyRemoval {
  PlaneTree tree;
  Sector sector;
  RemyKind kind;
  bool was_labeled = false;
};

inline RemyRemoval remy_remove(const PlaneTree& tree, int w) {
  if (w < 0 || w >= tree.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (tree.vertex_count() == 1) throw std::invalid_argument("cannot remove the last vertex");
  PlaneTree t = tree;
  RemyRemoval out;
  out.was_labeled = t.nodes[w].labeled;
  if (t.nodes[w].children.empty()) {
    if (w == t.root) throw std::invalid_argument("root leaf removal undefined");
    out.kind = RemyKind::Leaf;
    auto& pc = t.nodes[t.nodes[w].parent].children;
    int idx = 0;
    while (pc[idx] != w) ++idx;
    pc.erase(pc.begin() + idx);
    out.sector = {t.nodes[w].parent, idx};
  } else {
    out.kind = RemyKind::NonLeaf;
    const int v = t.nodes[w].children[0];
    const int vkeep = static_cast<int>(t.nodes[v].children.size());
    for (size_t i = 1; i < t.nodes[w].children.size(); ++i) {
      int c = t.nodes[w].children[i];
      t.nodes[v].children.push_back(c);
      t.nodes[c].parent = v;
    }
    t.nodes[v].parent = t.nodes[w].parent;
    if (t.nodes[w].parent >= 0) {
      for (int& c : t.nodes[t.nodes[w].parent].children)
        if (c == w) c = v;
    } else {
      t.root = v;
    }
    out.sector = {v, vkeep};
  }
  // compact: drop node w, shift ids above it
  t.nodes.erase(t.nodes.begin() + w);
  auto fix = [&](int& id) {
    if (id > w) --id;
  };
  fix(t.root);
  fix(out.sector.node);
  for (auto& n : t.nodes) {
    fix(n.parent);
    for (int& c : n.children) fix(c);
  }
  out.tree = std::move(t);
  return out;
}

// Shape-class membership: every unlabeled vertex has effective degree >= 3
// (the plant's virtual half-edge counts toward the root).
inline bool is_class_tree(const PlaneTree& t) {
  for (int v = 0; v < t.vertex_count(); ++v)
    if (!t.nodes[v].labeled && t.effective_degree(v) < 3) return false;
  return true;
}

// Shape-sectors: sectors where a non-leaf unlabeled insertion keeps the
// class. Gap l of a vertex with m children qualifies iff l < m (the new
// vertex keeps degree >= 3) and, when the vertex is unlabeled, l >= 2 (the
// pushed-down vertex keeps degree >= 3). A class tree with n edges and k
// labels has exactly 2k-n-2 of them.
inline std::vector<Sector> shape_sectors(const PlaneTree& t) {
  if (!is_class_tree(t)) throw std::invalid_argument("tree is not in the shape class");
  std::vector<Sector> out;
  for (int v : t.preorder()) {
    const int m = static_cast<int>(t.nodes[v].children.size());
    for (int l = 0; l < m; ++l)
      if (t.nodes[v].labeled || l >= 2) out.push_back({v, l});
  }
  return out;
}

// Insert unlabeled non-leaf vertices at the given subset of the tree's
// current shape-sectors (indices into shape_sectors(tree), ascending),
// processed left to right. Pending sector handles are remapped across each
// insertion: gaps right of an inserted vertex migrate onto it (original gap
// l' > l at v becomes gap l'-l+1 at the new vertex).
inline PlaneTree insert_unlabeled_at(const PlaneTree& tree, const std::vector<int>& sector_indices) {
  PlaneTree t = tree;
  std::vector<Sector> sectors = shape_sectors(t);
  std::vector<Sector> chosen;
  for (size_t i = 0; i < sector_indices.size(); ++i) {
    int idx = sector_indices[i];
    if (idx < 0 || idx >= static_cast<int>(sectors.size()) ||
        (i && idx <= sector_indices[i - 1]))
      throw std::invalid_argument("sector indices must be ascending and in range");
    chosen.push_back(sectors[idx]);
  }
  for (size_t i = 0; i < chosen.size(); ++i) {
    Sector s = chosen[i];
    t = remy_insert(t, s, RemyKind::NonLeaf, false);
    const int u = t.vertex_count() - 1;
    for (size_t j = i + 1; j < chosen.size(); ++j) {
      if (chosen[j].node == s.node && chosen[j].gap > s.gap)
        chosen[j] = {u, chosen[j].gap - s.gap + 1};
    }
  }
  if (!is_class_tree(t)) throw std::logic_error("restricted insertion left the shape class");
  return t;
}

// Uniform variant: choose the count-subset of the current shape-sectors
// uniformly (probability 1/C(#sectors, count) each).
inline PlaneTree insert_unlabeled(const PlaneTree& tree, int count, SplitMix64& rng) {
  if (count < 0) throw std::invalid_argument("negative insertion count");
  const int sectors = static_cast<int>(shape_sectors(tree).size());
  if (count > sectors)
    throw std::invalid_argument("insertion count exceeds shape-sector count");
  if (count == 0) return tree;
  return insert_unlabeled_at(tree, rng.subset(sectors, count));
}

}  // namespace ucshape
