#pragma once

// Permutations on dense 0-based half-edge indices.

#include <stdexcept>
#include <string>
#include <vector>

namespace ucshape {

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
      if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
        throw std::invalid_argument("permutation images are not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    return Permutation(std::move(img));
  }

  // Single n-cycle 0 -> 1 -> ... -> n-1 -> 0.
  static Permutation full_cycle(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = (i + 1) % n;
    return Permutation(std::move(img));
  }

  // Build from an explicit cycle list over {0..n-1}; unlisted points are fixed.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    for (const auto& c : cycles)
      for (size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
    return Permutation(std::move(img));
  }

  // Involution from a pairing list; every point must be covered exactly once.
  static Permutation involution_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> img(n, -1);
    for (auto [a, b] : pairs) {
      if (a < 0 || b < 0 || a >= n || b >= n || a == b || img[a] != -1 || img[b] != -1)
        throw std::invalid_argument("bad involution pairing");
      img[a] = b;
      img[b] = a;
    }
    for (int v : img)
      if (v == -1) throw std::invalid_argument("involution pairing does not cover all points");
    return Permutation(std::move(img));
  }

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int h) const { return img_[h]; }
  const std::vector<int>& images() const { return img_; }

  bool operator==(const Permutation& o) const = default;

  bool is_fixed_point_free_involution() const {
    for (int h = 0; h < size(); ++h)
      if (img_[h] == h || img_[img_[h]] != h) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(img_.size());
    for (int h = 0; h < size(); ++h) inv[img_[h]] = h;
    return Permutation(std::move(inv));
  }

  // (this o inner)(h) = this(inner(h))
  Permutation compose(const Permutation& inner) const {
    if (inner.size() != size()) throw std::invalid_argument("size mismatch in composition");
    std::vector<int> img(img_.size());
    for (int h = 0; h < size(); ++h) img[h] = img_[inner(h)];
    return Permutation(std::move(img));
  }

  int cycle_count() const {
    std::vector<char> seen(img_.size(), 0);
    int cycles = 0;
    for (int h = 0; h < size(); ++h) {
      if (seen[h]) continue;
      ++cycles;
      for (int x = h; !seen[x]; x = img_[x]) seen[x] = 1;
    }
    return cycles;
  }

  // Cycles listed with numerically smallest element first, sorted by that element.
  std::vector<std::vector<int>> cycles() const {
    std::vector<char> seen(img_.size(), 0);
    std::vector<std::vector<int>> out;
    for (int h = 0; h < size(); ++h) {
      if (seen[h]) continue;
      std::vector<int> c;
      for (int x = h; !seen[x]; x = img_[x]) {
        seen[x] = 1;
        c.push_back(x);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

 private:
  std::vector<int> img_;
};

}  // namespace ucshape
