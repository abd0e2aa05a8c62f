#pragma once

// Slicing and gluing surgery on unicellular maps.
//
// Slicing at a trisection tau of a vertex v splits v into three vertices and
// drops the genus by one. With a1 the gamma-minimum of v, a3 = sigma(tau),
// and a2 the gamma-smallest half-edge strictly between a1 and a3 in sigma
// order that is gamma-greater than a3, the sliced vertex permutation is
// sigma composed with the 3-cycle a1->a3->a2->a1; the edge involution never
// changes. Gluing composes with the inverse 3-cycle and merges three
// vertices into one, raising the genus by one. Both preserve unicellularity
// and every untouched vertex, and they are mutually inverse (Type I via
// rho_1, Type II via rho_2; Xi iterates slices, Lambda iterates glues).

#include "ucshape/glue_trace.hpp"
#include "ucshape/plane_tree.hpp"
#include "ucshape/unicellular.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ucshape {

enum class SliceKind { TypeI, TypeII };

namespace detail {

// sigma' = sigma o (x -> y -> z -> x)
inline Permutation compose_three_cycle(const Permutation& sigma, int x, int y, int z) {
  std::vector<int> img = sigma.images();
  img[x] = sigma(y);
  img[y] = sigma(z);
  img[z] = sigma(x);
  return Permutation(std::move(img));
}

}  // namespace detail

struct SliceResult {
  UnicellularMap map;
  SliceKind kind;
  // New vertex ids in the sliced map, gamma-ordered: [v1, v2, v3] for Type I,
  // [v1, v2] for Type II (tau's vertex keeps slicing).
  std::vector<int> new_vertices;
  // Type II: tau, still a trisection of the result. Type I: -1.
  int trisection;
};

inline SliceResult slice_at(const UnicellularMap& m, int tau) {
  if (tau < 0 || tau >= m.half_edge_count() || !m.is_trisection(tau))
    throw std::invalid_argument("half-edge is not a trisection");
  const int a3 = m.sigma()(tau);
  const int a1 = m.vertex_id(tau);

  // a2: gamma-min over the sigma segment strictly between a1 and a3 among
  // half-edges gamma-greater than a3; tau itself qualifies, so it exists.
  int a2 = -1;
  for (int x = m.sigma()(a1); x != a3; x = m.sigma()(x))
    if (m.gamma_less(a3, x) && (a2 == -1 || m.gamma_less(x, a2))) a2 = x;
  if (a2 == -1) throw std::logic_error("slice: no candidate for a2");

  UnicellularMap sliced(detail::compose_three_cycle(m.sigma(), a1, a3, a2), m.alpha());
  if (sliced.vertex_id(a1) != a1 || sliced.vertex_id(a2) != a2)
    throw std::logic_error("slice: a1/a2 are not minima of their pieces");

  SliceResult res{std::move(sliced), SliceKind::TypeI, {a1, a2}, -1};
  if (res.map.vertex_id(a3) == a3) {
    res.new_vertices.push_back(a3);
  } else {
    res.kind = SliceKind::TypeII;
    res.trisection = tau;
    if (!res.map.is_trisection(tau))
      throw std::logic_error("slice: tau stopped being a trisection in a Type II slice");
  }
  return res;
}

struct GlueResult {
  UnicellularMap map;
  int trisection;
};

namespace detail {

inline void require_vertex_id(const UnicellularMap& m, int id) {
  if (id < 0 || id >= m.half_edge_count() || m.vertex_id(id) != id)
    throw std::invalid_argument("not a vertex id (gamma-minimum half-edge)");
}

}  // namespace detail

// rho_1^{-1}: glue three distinct vertices (ids gamma-ascending) into one.
inline GlueResult glue_three(const UnicellularMap& m, int v1, int v2, int v3) {
  detail::require_vertex_id(m, v1);
  detail::require_vertex_id(m, v2);
  detail::require_vertex_id(m, v3);
  if (!(m.gamma_less(v1, v2) && m.gamma_less(v2, v3)))
    throw std::invalid_argument("glue_three: vertices must be distinct and gamma-ordered");
  // trisection of the glued map: the half-edge whose new sigma image is v3
  const int tau = m.sigma()(v3) == v3 ? v2 : m.sigma().inverse()(v3);
  UnicellularMap glued(detail::compose_three_cycle(m.sigma(), v1, v2, v3), m.alpha());
  if (!glued.is_trisection(tau)) throw std::logic_error("glue_three: tau is not a trisection");
  return {std::move(glued), tau};
}

// rho_2^{-1}: glue two vertices with the vertex holding the trisection tau.
inline GlueResult glue_two_at(const UnicellularMap& m, int v1, int v2, int tau) {
  detail::require_vertex_id(m, v1);
  detail::require_vertex_id(m, v2);
  if (!m.is_trisection(tau)) throw std::invalid_argument("glue_two_at: tau is not a trisection");
  const int vt = m.vertex_id(tau);
  if (v1 == v2 || v1 == vt || v2 == vt)
    throw std::invalid_argument("glue_two_at: vertices must be distinct from tau's vertex");
  if (!m.gamma_less(v1, v2))
    throw std::invalid_argument("glue_two_at: vertices must be gamma-ordered");
  const int a3 = m.sigma()(tau);
  UnicellularMap glued(detail::compose_three_cycle(m.sigma(), v1, v2, a3), m.alpha());
  if (!glued.is_trisection(tau)) throw std::logic_error("glue_two_at: tau is not a trisection");
  return {std::move(glued), tau};
}

struct XiResult {
  UnicellularMap map;
  // 2k+1 vertex ids of the final map, in production order = gamma order.
  std::vector<int> vertices;
};

// Xi: slice at tau, repeating on the residual trisection while slices are
// Type II, finishing with the Type I slice. Genus drops by k, emitting 2k+1
// marked vertices.
inline XiResult xi(const UnicellularMap& m, int tau, std::ostream* log = nullptr) {
  std::vector<int> reps;
  std::optional<UnicellularMap> cur(m);
  int step = 1;
  for (;;) {
    SliceResult s = slice_at(*cur, tau);
    for (int v : s.new_vertices) reps.push_back(v);
    cur.emplace(std::move(s.map));
    if (log)
      *log << "step=" << step << " op=slice g=" << cur->genus() << " k=" << reps.size()
           << " type=" << (s.kind == SliceKind::TypeI ? "I" : "II") << "\n";
    ++step;
    if (s.kind == SliceKind::TypeI) break;
    tau = s.trisection;
  }
  XiResult out{std::move(*cur), {}};
  for (int r : reps) out.vertices.push_back(out.map.vertex_id(r));
  for (size_t i = 1; i < out.vertices.size(); ++i)
    if (!out.map.gamma_less(out.vertices[i - 1], out.vertices[i]))
      throw std::logic_error("xi: marked vertices are not gamma-ordered");
  return out;
}

// Lambda: glue an odd gamma-ordered vertex sequence into one vertex, raising
// the genus by (|V|-1)/2; inverse of Xi. Plant exclusion is enforced at the
// labeled-map layer, where a plant is meaningful: it is never labeled, so the
// shape pipeline can never select it.
inline GlueResult lambda(const UnicellularMap& m, const std::vector<int>& ids,
                         std::ostream* log = nullptr) {
  if (ids.size() < 3 || ids.size() % 2 == 0)
    throw std::invalid_argument("lambda needs an odd number (>= 3) of vertices");
  for (size_t i = 0; i < ids.size(); ++i) {
    detail::require_vertex_id(m, ids[i]);
    if (i && !m.gamma_less(ids[i - 1], ids[i]))
      throw std::invalid_argument("lambda: vertices must be distinct and gamma-ordered");
  }

  const int k = (static_cast<int>(ids.size()) - 1) / 2;
  GlueResult cur = glue_three(m, ids[2 * k - 2], ids[2 * k - 1], ids[2 * k]);
  if (log)
    *log << "step=1 op=glue g=" << cur.map.genus() << " k=" << 2 * k - 2 << " type=I\n";
  for (int i = 1; i < k; ++i) {
    int a = cur.map.vertex_id(ids[2 * (k - i) - 2]);
    int b = cur.map.vertex_id(ids[2 * (k - i) - 1]);
    if (!cur.map.gamma_less(a, b)) std::swap(a, b);
    cur = glue_two_at(cur.map, a, b, cur.trisection);
    if (log)
      *log << "step=" << i + 1 << " op=glue g=" << cur.map.genus() << " k=" << 2 * (k - i) - 2
           << " type=II\n";
  }
  return cur;
}

// ---- labeled maps ----

// A unicellular map with a set of labeled vertices (stored as vertex ids,
// gamma-ascending). Labels survive surgery by remapping half-edge
// representatives through each operation; the plant is never labeled.
struct LabeledMap {
  UnicellularMap map;
  std::vector<int> labels;
  bool planted = false;

  LabeledMap(UnicellularMap m, std::vector<int> lab, bool is_planted)
      : map(std::move(m)), labels(std::move(lab)), planted(is_planted) {
    if (planted && !map.is_planted()) throw std::invalid_argument("map is not planted");
    for (size_t i = 0; i < labels.size(); ++i) {
      detail::require_vertex_id(map, labels[i]);
      if (planted && labels[i] == 0) throw std::invalid_argument("the plant cannot be labeled");
      if (i && !map.gamma_less(labels[i - 1], labels[i]))
        throw std::invalid_argument("labels must be gamma-ascending and distinct");
    }
  }

  int genus() const { return map.genus(); }
  int label_count() const { return static_cast<int>(labels.size()); }

  bool is_labeled(int id) const {
    return std::find(labels.begin(), labels.end(), id) != labels.end();
  }
};

// Shape-class check: every unlabeled non-plant vertex has degree >= 3.
inline bool is_shape_class(const LabeledMap& lm) {
  for (int id : lm.map.vertex_order_by_gamma()) {
    if (lm.planted && id == 0) continue;
    if (!lm.is_labeled(id) && lm.map.vertex_degree(id) < 3) return false;
  }
  return true;
}

// slice_once on a labeled map: the pieces of the sliced vertex come out
// labeled (its own label, if any, is consumed); other labels are carried
// across by half-edge representative.
struct LabeledSliceResult {
  LabeledMap map;
  SliceKind kind;
  std::vector<int> new_vertices;
  int trisection;
};

inline LabeledSliceResult slice_once(const LabeledMap& lm, int tau) {
  const int sliced_id = lm.map.vertex_id(tau);
  SliceResult s = slice_at(lm.map, tau);
  std::vector<int> labels;
  for (int old : lm.labels)
    if (old != sliced_id) labels.push_back(s.map.vertex_id(old));
  for (int v : s.new_vertices) labels.push_back(v);
  std::sort(labels.begin(), labels.end(),
            [&](int a, int b) { return s.map.gamma_less(a, b); });
  LabeledMap out(std::move(s.map), std::move(labels), lm.planted);
  return {std::move(out), s.kind, s.new_vertices, s.trisection};
}

// Realize a glue trace on a labeled tree: at step i, glue the labeled
// vertices selected by choice_ranks[i-1] (strictly ascending ranks into the
// gamma-sorted label list, exactly 2(g_i - g_{i-1}) + 1 of them); the glued
// vertex keeps a label iff the trace says so. A complete trace ends with
// genus g and no labels.
inline LabeledMap realize_trace(const LabeledMap& tree, const GlueTrace& trace,
                                const std::vector<std::vector<int>>& choice_ranks,
                                std::ostream* log = nullptr) {
  if (tree.genus() != 0) throw std::invalid_argument("realize_trace starts from a genus-0 map");
  trace.validate_for(trace.target_genus(), tree.label_count());
  if (static_cast<int>(choice_ranks.size()) != trace.step_count())
    throw std::invalid_argument("one choice list per trace step required");

  LabeledMap cur = tree;
  for (int i = 1; i <= trace.step_count(); ++i) {
    const auto& ranks = choice_ranks[i - 1];
    const int arity = trace.glue_arity(i);
    if (static_cast<int>(ranks.size()) != arity)
      throw std::invalid_argument("glue step " + std::to_string(i) + " needs " +
                                  std::to_string(arity) + " labeled vertices");
    std::vector<int> ids;
    for (size_t j = 0; j < ranks.size(); ++j) {
      if (ranks[j] < 0 || ranks[j] >= cur.label_count() ||
          (j && ranks[j] <= ranks[j - 1]))
        throw std::invalid_argument("choice ranks must be ascending and in range");
      ids.push_back(cur.labels[ranks[j]]);
    }
    GlueResult glued = lambda(cur.map, ids, log);
    std::vector<int> labels;
    for (int old : cur.labels)
      if (std::find(ids.begin(), ids.end(), old) == ids.end())
        labels.push_back(glued.map.vertex_id(old));
    if (trace.label_new_vertex(i)) labels.push_back(glued.map.vertex_id(ids[0]));
    std::sort(labels.begin(), labels.end(),
              [&](int a, int b) { return glued.map.gamma_less(a, b); });
    cur = LabeledMap(std::move(glued.map), std::move(labels), cur.planted);
  }
  if (cur.genus() != trace.target_genus()) throw std::logic_error("trace realized wrong genus");
  if (!cur.labels.empty()) throw std::logic_error("complete trace left labels behind");
  return cur;
}

// Plane tree -> planted labeled map in the canonical labeling: the face
// cycle reads the contour, the plant edge is {0,1}, and each tree edge opens
// at its child-side half-edge. A tree with e edges becomes a map with e+1
// edges whose plant is the rainbow.
inline LabeledMap tree_to_labeled_map(const PlaneTree& t) {
  const int n2 = 2 * (t.edge_count() + 1);
  std::vector<std::pair<int, int>> pairs{{0, 1}};
  std::vector<int> open_of(t.vertex_count(), 1);  // root owns half-edge 1
  int pos = 1;
  auto rec = [&](auto&& self, int v) -> void {
    for (int c : t.nodes[v].children) {
      int open = ++pos;
      open_of[c] = open;
      self(self, c);
      pairs.emplace_back(open, ++pos);
    }
  };
  rec(rec, t.root);
  Permutation alpha = Permutation::involution_from_pairs(n2, pairs);
  Permutation sigma = alpha.compose(Permutation::full_cycle(n2));
  UnicellularMap map(std::move(sigma), std::move(alpha));
  std::vector<int> labels;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (t.nodes[v].labeled) labels.push_back(map.vertex_id(open_of[v]));
  std::sort(labels.begin(), labels.end(),
            [&](int a, int b) { return map.gamma_less(a, b); });
  return LabeledMap(std::move(map), std::move(labels), true);
}

}  // namespace ucshape
