#pragma once

// Glue traces: the sequence of pairs (g_i, t_i) encoding a glue path from a
// labeled tree up to a genus-g map. (g_0, t_0) = (0, 0) is implicit; g_i is
// strictly increasing and ends at the target genus; t_{i+1} - t_i is 1 when
// the vertex created by glue step i keeps a label and 0 otherwise (the last
// step never labels, so the finished map carries no labels).
//
// Label bookkeeping for a start count of k labels: step i consumes
// 2(g_i - g_{i-1}) + 1 labeled vertices and restores one label iff
// t_{i+1} - t_i = 1; the walk must end with exactly zero labels, which pins
// t_r = r - (k - 2g).

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ucshape {

class GlueTrace {
 public:
  GlueTrace() = default;
  explicit GlueTrace(std::vector<std::pair<int, int>> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw std::invalid_argument("empty glue trace");
    int pg = 0;
    for (size_t i = 0; i < steps_.size(); ++i) {
      auto [g, t] = steps_[i];
      if (g <= pg) throw std::invalid_argument("trace genus must be strictly increasing");
      if (i == 0 && t != 0) throw std::invalid_argument("trace must start with t_1 = 0");
      if (i > 0) {
        int dt = t - steps_[i - 1].second;
        if (dt != 0 && dt != 1) throw std::invalid_argument("t increments must be 0 or 1");
      }
      pg = g;
    }
  }

  const std::vector<std::pair<int, int>>& steps() const { return steps_; }
  int step_count() const { return static_cast<int>(steps_.size()); }
  int target_genus() const { return steps_.back().first; }

  int genus_at(int i) const { return i == 0 ? 0 : steps_[i - 1].first; }  // g_i, i in 0..r

  // Number of labeled vertices consumed by glue step i (1-based).
  int glue_arity(int i) const { return 2 * (genus_at(i) - genus_at(i - 1)) + 1; }

  // Does the vertex created by step i keep a label?
  bool label_new_vertex(int i) const {
    if (i < 1 || i > step_count()) throw std::out_of_range("trace step index");
    if (i == step_count()) return false;  // final vertex is always unlabeled
    return steps_[i].second - steps_[i - 1].second == 1;
  }

  // Start-label count this trace is consistent with: k = 2g + (r - t_r).
  int start_labels() const {
    return 2 * target_genus() + (step_count() - steps_.back().second);
  }

  // Check the trace can run with k starting labels and end at zero.
  void validate_for(int genus, int k) const {
    if (target_genus() != genus) throw std::invalid_argument("trace targets wrong genus");
    if (start_labels() != k)
      throw std::invalid_argument("trace label budget mismatch: expects k=" +
                                  std::to_string(start_labels()));
    int labels = k;
    for (int i = 1; i <= step_count(); ++i) {
      labels -= glue_arity(i);
      if (labels < 0) throw std::invalid_argument("trace runs out of labeled vertices");
      if (label_new_vertex(i)) ++labels;
    }
    if (labels != 0) throw std::logic_error("trace does not end with zero labels");
  }

  std::string to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < steps_.size(); ++i) {
      if (i) s += ",";
      s += "(" + std::to_string(steps_[i].first) + "," + std::to_string(steps_[i].second) + ")";
    }
    return s + ")";
  }

  bool operator==(const GlueTrace& o) const = default;

 private:
  std::vector<std::pair<int, int>> steps_;
};

}  // namespace ucshape
