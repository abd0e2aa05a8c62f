#pragma once

// Half-edge representation of fatgraphs and unicellular maps.
//
// A fatgraph is (H, sigma, alpha): sigma cycles are vertices (counterclockwise
// half-edge order), alpha is the fixed-point-free edge involution, and the
// boundary components are the cycles of gamma = alpha o sigma.
//
// A unicellular map is a fatgraph whose gamma is a single 2m-cycle. Half-edge
// 0 is the gamma-origin; all "minimum half-edge" talk below means minimal in
// the linear order induced by walking gamma from 0.

#include "ucshape/permutation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucshape {

enum class StepKind { UpStep, DownStep };

class Fatgraph {
 public:
  Fatgraph(Permutation sigma, Permutation alpha)
      : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
    if (sigma_.size() != alpha_.size())
      throw std::invalid_argument("sigma/alpha size mismatch");
    if (sigma_.size() % 2 != 0) throw std::invalid_argument("odd number of half-edges");
    if (!alpha_.is_fixed_point_free_involution())
      throw std::invalid_argument("alpha is not a fixed-point-free involution");
  }

  int half_edge_count() const { return sigma_.size(); }
  int edge_count() const { return sigma_.size() / 2; }
  const Permutation& sigma() const { return sigma_; }
  const Permutation& alpha() const { return alpha_; }

  Permutation gamma() const { return alpha_.compose(sigma_); }

  std::vector<std::vector<int>> vertices() const { return sigma_.cycles(); }
  std::vector<std::vector<int>> boundary_components() const { return gamma().cycles(); }

  int genus() const {
    int v = sigma_.cycle_count();
    int r = gamma().cycle_count();
    int chi = v - edge_count() + r;  // Euler characteristic of the closed surface
    if ((2 - chi) % 2 != 0) throw std::logic_error("odd Euler defect");
    return (2 - chi) / 2;
  }

 private:
  Permutation sigma_, alpha_;
};

// Poincare dual of a one-vertex fatgraph: (H, sigma, alpha) -> (H, alpha o sigma, alpha).
// Exchanges boundary components and vertices; genus preserved; the image is
// unicellular because the dual's single face is the original vertex.
class UnicellularMap;
UnicellularMap poincare_dual(const Fatgraph& g);

class UnicellularMap {
 public:
  UnicellularMap(Permutation sigma, Permutation alpha)
      : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
    if (sigma_.size() != alpha_.size())
      throw std::invalid_argument("sigma/alpha size mismatch");
    if (!alpha_.is_fixed_point_free_involution())
      throw std::invalid_argument("alpha is not a fixed-point-free involution");
    const int n = sigma_.size();
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("half-edge count must be positive even");
    gamma_pos_.assign(n, -1);
    face_.reserve(n);
    int h = 0;
    for (int i = 0; i < n; ++i) {
      if (gamma_pos_[h] != -1) break;
      gamma_pos_[h] = i;
      face_.push_back(h);
      h = alpha_(sigma_(h));
    }
    if (static_cast<int>(face_.size()) != n)
      throw std::invalid_argument("map is not unicellular: gamma orbit of 0 has length " +
                                  std::to_string(face_.size()));
    index_vertices();
  }

  int edge_count() const { return sigma_.size() / 2; }
  int half_edge_count() const { return sigma_.size(); }
  const Permutation& sigma() const { return sigma_; }
  const Permutation& alpha() const { return alpha_; }
  int gamma(int h) const { return alpha_(sigma_(h)); }

  // gamma-orbit of half-edge 0; length 2m by construction.
  const std::vector<int>& face_cycle() const { return face_; }

  int gamma_pos(int h) const { return gamma_pos_[h]; }
  bool gamma_less(int a, int b) const { return gamma_pos_[a] < gamma_pos_[b]; }

  int vertex_count() const { return static_cast<int>(vertex_min_sorted_.size()); }

  int genus() const {
    int num = edge_count() + 1 - vertex_count();
    if (num < 0 || num % 2 != 0)
      throw std::logic_error("genus (m+1-v)/2 is not a nonnegative integer");
    return num / 2;
  }

  // Vertex identity: the gamma-minimum half-edge of its sigma-cycle.
  int vertex_id(int h) const { return vertex_id_of_[h]; }
  int vertex_degree(int id) const { return degree_of_[id]; }

  // Vertex ids sorted by gamma order (equivalently by gamma position of the id).
  const std::vector<int>& vertex_order_by_gamma() const { return vertex_min_sorted_; }

  // Sigma-cycle of the vertex identified by `id`, starting at its minimum.
  std::vector<int> vertex_cycle(int id) const {
    std::vector<int> c;
    int x = id;
    do {
      c.push_back(x);
      x = sigma_(x);
    } while (x != id);
    return c;
  }

  bool is_planted() const { return sigma_(0) == 0; }

  // h is an up-step iff h <_gamma sigma(h); otherwise sigma(h) <=_gamma h and
  // h is a down-step. The comparison is non-strict so that a degree-one
  // vertex (sigma(h) = h) closes with a down-step.
  StepKind classify_half_edge(int h) const {
    return gamma_less(h, sigma_(h)) ? StepKind::UpStep : StepKind::DownStep;
  }

  bool is_trisection(int h) const {
    return classify_half_edge(h) == StepKind::DownStep && sigma_(h) != vertex_id(h);
  }

  // All trisections in gamma order; a genus-g map has exactly 2g of them.
  std::vector<int> trisections() const {
    std::vector<int> out;
    for (int h : face_)
      if (is_trisection(h)) out.push_back(h);
    return out;
  }

  bool operator==(const UnicellularMap& o) const {
    return sigma_ == o.sigma_ && alpha_ == o.alpha_;
  }

  // One-line dump, fixed format for golden tests:
  //   m=<int> alpha=<h0,h1;h2,h3;...> sigma_cycles=<(a,b,c)(d,e)...>
  // alpha pairs ascending by smaller endpoint; sigma cycles start at their
  // vertex id and are listed in gamma order of ids.
  std::string dump() const {
    std::ostringstream os;
    os << "m=" << edge_count() << " alpha=";
    bool first = true;
    for (int h = 0; h < half_edge_count(); ++h) {
      if (alpha_(h) < h) continue;
      if (!first) os << ";";
      first = false;
      os << h << "," << alpha_(h);
    }
    os << " sigma_cycles=";
    for (int id : vertex_min_sorted_) {
      os << "(";
      auto c = vertex_cycle(id);
      for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ",";
        os << c[i];
      }
      os << ")";
    }
    return os.str();
  }

 private:
  void index_vertices() {
    const int n = sigma_.size();
    vertex_id_of_.assign(n, -1);
    degree_of_.assign(n, 0);
    for (int h = 0; h < n; ++h) {
      if (vertex_id_of_[h] != -1) continue;
      int best = h, deg = 0;
      for (int x = h;; x = sigma_(x)) {
        if (gamma_pos_[x] < gamma_pos_[best]) best = x;
        ++deg;
        if (sigma_(x) == h) break;
      }
      for (int x = h;; x = sigma_(x)) {
        vertex_id_of_[x] = best;
        if (sigma_(x) == h) break;
      }
      degree_of_[best] = deg;
      vertex_min_sorted_.push_back(best);
    }
    std::sort(vertex_min_sorted_.begin(), vertex_min_sorted_.end(),
              [&](int a, int b) { return gamma_pos_[a] < gamma_pos_[b]; });
  }

  Permutation sigma_, alpha_;
  std::vector<int> gamma_pos_;
  std::vector<int> face_;
  std::vector<int> vertex_id_of_;
  std::vector<int> degree_of_;
  std::vector<int> vertex_min_sorted_;
};

inline UnicellularMap poincare_dual(const Fatgraph& g) {
  if (g.sigma().cycle_count() != 1)
    throw std::invalid_argument("poincare dual requires a one-vertex fatgraph");
  return UnicellularMap(g.gamma(), g.alpha());
}

// Planted map: degree-1 vertex whose single half-edge is the gamma-origin 0.
// Dual image of the rainbow boundary component.
class PlantedMap {
 public:
  explicit PlantedMap(UnicellularMap map) : map_(std::move(map)) {
    if (!map_.is_planted())
      throw std::invalid_argument("not planted: half-edge 0 is not a degree-1 vertex");
  }

  const UnicellularMap& map() const { return map_; }
  int plant() const { return 0; }

  bool operator==(const PlantedMap& o) const { return map_ == o.map_; }

 private:
  UnicellularMap map_;
};

}  // namespace ucshape
