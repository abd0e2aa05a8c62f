#pragma once

// RNA diagrams: a backbone 1..n plus a partial matching of arcs (i,j), i<j,
// drawn in the upper half-plane. Shapes are the fully reduced diagrams
// (no 1-arcs, no parallel arcs, full matching, rainbow present); they carry
// the topological content of a structure.

#include "ucshape/unicellular.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ucshape {

using Arc = std::pair<int, int>;

// i<r: arcs (i,j),(r,s) cross iff i<r<j<s.
inline bool crossing(Arc a, Arc b) {
  if (a.first > b.first) std::swap(a, b);
  return a.first < b.first && b.first < a.second && a.second < b.second;
}

class Diagram {
 public:
  explicit Diagram(int n, const std::vector<Arc>& arcs = {}) : n_(n), partner_(n + 1, 0) {
    if (n < 0) throw std::invalid_argument("negative backbone length");
    for (auto [i, j] : arcs) {
      if (i < 1 || j < 1 || i > n || j > n) throw std::invalid_argument("arc endpoint out of range");
      if (i == j) throw std::invalid_argument("arc endpoints coincide");
      if (i > j) std::swap(i, j);
      if (partner_[i] || partner_[j]) throw std::invalid_argument("vertex paired twice");
      partner_[i] = j;
      partner_[j] = i;
    }
  }

  int n_vertices() const { return n_; }
  bool paired(int i) const { return partner_[i] != 0; }
  int partner(int i) const { return partner_[i]; }

  int arc_count() const {
    int c = 0;
    for (int i = 1; i <= n_; ++i)
      if (partner_[i] > i) ++c;
    return c;
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (int i = 1; i <= n_; ++i)
      if (partner_[i] > i) out.emplace_back(i, partner_[i]);
    return out;
  }

  bool has_rainbow() const { return n_ >= 2 && partner_[1] == n_; }

  // Genus via Eq. "2-2g-r = 1-n": collapse the backbone to one vertex whose
  // sigma is the cycle through the paired positions in backbone order, take
  // r = #cycles of alpha o sigma, g = (1 + arcs - r)/2.
  int genus() const {
    std::vector<int> pos;
    for (int i = 1; i <= n_; ++i)
      if (partner_[i]) pos.push_back(i);
    if (pos.empty()) return 0;
    const int k = static_cast<int>(pos.size());
    std::vector<int> rank(n_ + 1, -1);
    for (int idx = 0; idx < k; ++idx) rank[pos[idx]] = idx;
    std::vector<char> seen(k, 0);
    int r = 0;
    for (int start = 0; start < k; ++start) {
      if (seen[start]) continue;
      ++r;
      int x = start;
      while (!seen[x]) {
        seen[x] = 1;
        x = rank[partner_[pos[(x + 1) % k]]];  // gamma = alpha o sigma
      }
    }
    const int num = 1 + k / 2 - r;
    if (num < 0 || num % 2 != 0) throw std::logic_error("diagram genus is not a nonnegative integer");
    return num / 2;
  }

  bool operator==(const Diagram& o) const = default;

 private:
  int n_;
  std::vector<int> partner_;
};

namespace detail {

inline char arc_letter(int index) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  if (index < 0 || index >= 62) throw std::domain_error("shape has too many arcs for word encoding");
  return alphabet[index];
}

}  // namespace detail

// A shape: rainbow present, full matching, no 1-arcs, no parallel arcs.
// EmptyShape (the image of any purely secondary structure) is a first-class
// value with zero arcs and an empty word.
class Shape {
 public:
  static Shape empty() { return Shape(); }

  explicit Shape(Diagram d) : d_(std::move(d)) {
    const int n = d_->n_vertices();
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("shape backbone must have positive even length");
    if (!d_->has_rainbow()) throw std::invalid_argument("shape is missing the rainbow (1,n)");
    for (int i = 1; i <= n; ++i) {
      if (!d_->paired(i)) throw std::invalid_argument("shape has an unpaired vertex");
      const int j = d_->partner(i);
      if (j == i + 1) throw std::invalid_argument("shape contains a 1-arc");
      if (j > i + 1 && i + 1 < j - 1 && d_->partner(i + 1) == j - 1)
        throw std::invalid_argument("shape contains parallel arcs");
    }
    word_ = make_word(*d_);
  }

  bool is_empty() const { return !d_.has_value(); }
  const Diagram& diagram() const {
    if (is_empty()) throw std::logic_error("empty shape has no diagram");
    return *d_;
  }

  int pure_arc_count() const { return is_empty() ? 0 : d_->arc_count() - 1; }
  int genus() const { return is_empty() ? 0 : d_->genus(); }

  // Chord word: letters assigned to pure arcs in order of first endpoint,
  // emitted at both endpoints; the rainbow is excluded. Equal words iff
  // equal shapes.
  const std::string& word() const { return word_; }

  bool operator==(const Shape& o) const { return d_ == o.d_; }

 private:
  Shape() = default;

  static std::string make_word(const Diagram& d) {
    const int n = d.n_vertices();
    std::vector<int> letter(n + 1, -1);
    int next = 0;
    std::string w;
    for (int i = 2; i <= n - 1; ++i) {
      const int j = d.partner(i);
      if (letter[i] == -1) {
        letter[i] = letter[j] = next++;
      }
      w += detail::arc_letter(letter[i]);
    }
    return w;
  }

  std::optional<Diagram> d_;
  std::string word_;
};

inline std::string canonical_word(const Shape& s) { return s.word(); }

// Chord word of an arbitrary diagram (all arcs lettered, unpaired vertices
// skipped): "ABAB" for a crossing pair, "ABBA" for a nested one.
inline std::string diagram_word(const Diagram& d) {
  std::vector<int> letter(d.n_vertices() + 1, -1);
  int next = 0;
  std::string w;
  for (int i = 1; i <= d.n_vertices(); ++i) {
    if (!d.paired(i)) continue;
    if (letter[i] == -1) letter[i] = letter[d.partner(i)] = next++;
    w += detail::arc_letter(letter[i]);
  }
  return w;
}

// Shape projection: iterate {collapse stacks, delete 1-arcs, compact} to a
// fixpoint, then wrap in a rainbow and reduce again with the rainbow pinned
// (a stack headed by the rainbow collapses onto it). Stacks and 1-arcs are
// genus-neutral, so the projection preserves genus; planar input projects to
// the empty shape.
inline Shape project_to_shape(const Diagram& d) {
  // partner array over current labels; index 0 unused
  auto reduce = [](std::vector<int>& partner, bool keep_rainbow) {
    for (;;) {
      int n = static_cast<int>(partner.size()) - 1;
      bool changed = false;
      // collapse stacks: drop the inner arc of any parallel pair (outer survives)
      for (int i = 1; i + 1 <= n; ++i) {
        const int j = partner[i];
        if (j > i + 2 && partner[i + 1] == j - 1) {
          partner[i + 1] = partner[j - 1] = 0;
          changed = true;
        }
      }
      // delete 1-arcs
      for (int i = 1; i < n; ++i) {
        if (partner[i] == i + 1) {
          if (keep_rainbow && i == 1 && n == 2) break;  // bare rainbow, caller handles
          partner[i] = partner[i + 1] = 0;
          changed = true;
        }
      }
      // compact: drop unpaired vertices, relabel consecutively
      std::vector<int> newlab(n + 1, 0);
      int m = 0;
      for (int i = 1; i <= n; ++i)
        if (partner[i]) newlab[i] = ++m;
      if (m != n) changed = true;
      std::vector<int> np(m + 1, 0);
      for (int i = 1; i <= n; ++i)
        if (partner[i]) np[newlab[i]] = newlab[partner[i]];
      partner.swap(np);
      if (!changed) break;
    }
  };

  std::vector<int> partner(d.n_vertices() + 1, 0);
  for (int i = 1; i <= d.n_vertices(); ++i) partner[i] = d.partner(i);
  reduce(partner, false);

  int n = static_cast<int>(partner.size()) - 1;
  if (n == 0) return Shape::empty();

  // add the rainbow around the reduced pure preshape
  std::vector<int> with_rb(n + 3, 0);
  for (int i = 1; i <= n; ++i) with_rb[i + 1] = partner[i] + 1;
  with_rb[1] = n + 2;
  with_rb[n + 2] = 1;
  reduce(with_rb, true);

  n = static_cast<int>(with_rb.size()) - 1;
  if (n == 2) return Shape::empty();  // everything collapsed into the rainbow

  std::vector<Arc> arcs;
  for (int i = 1; i <= n; ++i)
    if (with_rb[i] > i) arcs.emplace_back(i, with_rb[i]);
  return Shape(Diagram(n, arcs));
}

// Shape -> planted unicellular map, in the canonical labeling where the face
// cycle is (0,1,...,2m-1): backbone position p (1-based) carries half-edge
// p mod 2m, so the rainbow becomes the plant pair {0,1} and sigma = alpha o
// gamma_std.
inline PlantedMap shape_to_planted_map(const Shape& s) {
  if (s.is_empty()) throw std::invalid_argument("empty shape has no planted map");
  const Diagram& d = s.diagram();
  const int n2 = d.n_vertices();
  std::vector<std::pair<int, int>> pairs;
  for (auto [i, j] : d.arcs()) pairs.emplace_back(i % n2, j % n2);
  Permutation alpha = Permutation::involution_from_pairs(n2, pairs);
  Permutation sigma = alpha.compose(Permutation::full_cycle(n2));
  return PlantedMap(UnicellularMap(std::move(sigma), std::move(alpha)));
}

// Inverse: positions along the face cycle from the plant become the backbone.
// Rejects maps whose non-plant vertices have degree < 3 (those do not come
// from shapes: a degree-1 vertex is a 1-arc, a degree-2 vertex a parallel pair).
inline Shape planted_map_to_shape(const PlantedMap& pm) {
  const UnicellularMap& m = pm.map();
  for (int id : m.vertex_order_by_gamma())
    if (id != 0 && m.vertex_degree(id) < 3)
      throw std::invalid_argument("map is not a shape map: non-plant vertex of degree < 3");
  const int n2 = m.half_edge_count();
  auto vertex_pos = [&](int h) { return (m.gamma_pos(h) - 1 + n2) % n2 + 1; };
  std::vector<Arc> arcs;
  for (int h = 0; h < n2; ++h) {
    if (m.alpha()(h) < h) continue;
    int a = vertex_pos(h), b = vertex_pos(m.alpha()(h));
    arcs.emplace_back(std::min(a, b), std::max(a, b));
  }
  return Shape(Diagram(n2, arcs));
}

// ---- parsing / serialization ----

// Arc-list format, one structure per line:  <n>: i1,j1 i2,j2 ...
inline std::string serialize(const Diagram& d) {
  std::ostringstream os;
  os << d.n_vertices() << ":";
  for (auto [i, j] : d.arcs()) os << " " << i << "," << j;
  return os.str();
}

namespace detail {

inline Diagram parse_arc_list(const std::string& line, size_t colon) {
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(line.substr(0, colon), &used);
    while (used < colon && std::isspace(static_cast<unsigned char>(line[used]))) ++used;
    if (used != colon) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::runtime_error("bad backbone length before ':'");
  }
  std::istringstream is(line.substr(colon + 1));
  std::vector<Arc> arcs;
  std::string tok;
  while (is >> tok) {
    size_t comma = tok.find(',');
    if (comma == std::string::npos) throw std::runtime_error("expected i,j pair, got '" + tok + "'");
    int i, j;
    try {
      i = std::stoi(tok.substr(0, comma));
      j = std::stoi(tok.substr(comma + 1));
    } catch (const std::exception&) {
      throw std::runtime_error("bad arc pair '" + tok + "'");
    }
    arcs.emplace_back(i, j);
  }
  try {
    return Diagram(n, arcs);
  } catch (const std::exception& e) {
    throw std::runtime_error(e.what());
  }
}

inline Diagram parse_brackets(const std::string& line) {
  // Openers: ( [ { < and A-Z; each matches its own type's closer ) ] } > a-z.
  std::vector<std::vector<int>> stacks(30);
  auto type_of_open = [](char c) -> int {
    switch (c) {
      case '(': return 0;
      case '[': return 1;
      case '{': return 2;
      case '<': return 3;
      default: return std::isupper(static_cast<unsigned char>(c)) ? 4 + (c - 'A') : -1;
    }
  };
  auto type_of_close = [](char c) -> int {
    switch (c) {
      case ')': return 0;
      case ']': return 1;
      case '}': return 2;
      case '>': return 3;
      default: return std::islower(static_cast<unsigned char>(c)) ? 4 + (c - 'a') : -1;
    }
  };
  std::vector<Arc> arcs;
  int n = 0;
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    ++n;
    if (c == '.' || c == '-' || c == ':') continue;
    int t = type_of_open(c);
    if (t >= 0) {
      stacks[t].push_back(n);
      continue;
    }
    t = type_of_close(c);
    if (t < 0) throw std::runtime_error(std::string("unexpected character '") + c + "'");
    if (stacks[t].empty()) throw std::runtime_error(std::string("unbalanced closer '") + c + "'");
    arcs.emplace_back(stacks[t].back(), n);
    stacks[t].pop_back();
  }
  for (const auto& st : stacks)
    if (!st.empty()) throw std::runtime_error("unbalanced opener left at end of line");
  return Diagram(n, arcs);
}

}  // namespace detail

// Accepts either the arc-list or the bracket format (auto-detected: an
// arc-list line has the form "<int>: ...").
inline Diagram parse_structure(const std::string& line) {
  size_t colon = line.find(':');
  if (colon != std::string::npos) {
    bool num = false, only_num = true;
    for (size_t i = 0; i < colon; ++i) {
      if (std::isdigit(static_cast<unsigned char>(line[i]))) num = true;
      else if (!std::isspace(static_cast<unsigned char>(line[i]))) only_num = false;
    }
    if (num && only_num) return detail::parse_arc_list(line, colon);
  }
  return detail::parse_brackets(line);
}

}  // namespace ucshape
