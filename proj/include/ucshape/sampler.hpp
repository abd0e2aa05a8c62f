#pragma once

// Uniform generation of shapes of fixed genus: draw the arc count n and the
// label count k from their exact distributions, build a uniform fully
// labeled tree, restrict-insert the unlabeled vertices, then realize a glue
// trace drawn from the exact trace distribution with uniform vertex choices.
// Every draw goes through exact big-rational weights; there is no floating
// point anywhere in the sampling path.
//
// Draw order per sample (one SplitMix64 stream): (1) n unless fixed, (2) k,
// (3) trace steps, (4) tree shuffle, (5) sector subset, (6) one rank subset
// per glue step. Batches shard deterministically: shard j uses
// SplitMix64::stream(seed, j) and outputs are concatenated in shard order.

#include "ucshape/counting.hpp"
#include "ucshape/diagram.hpp"
#include "ucshape/surgery.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ucshape {

struct SamplerConfig {
  int genus = 1;
  std::optional<int> arcs;
  uint64_t seed = 0;
  long long count = 1;
  int jobs = 1;

  void validate() const {
    if (genus < 1) throw std::invalid_argument("sampler needs genus >= 1");
    if (count < 0) throw std::invalid_argument("negative sample count");
    if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    if (arcs) {
      if (*arcs < min_arcs(genus) || *arcs > max_arcs(genus) || shape_count(genus, *arcs) == 0)
        throw std::invalid_argument("no shapes of genus " + std::to_string(genus) + " with " +
                                    std::to_string(*arcs) + " arcs");
    }
  }
};

inline Shape sample_shape(int genus, std::optional<int> fixed_arcs, SplitMix64& rng) {
  // (1) arc count
  int n;
  if (fixed_arcs) {
    n = *fixed_arcs;
  } else {
    std::vector<int> ns;
    std::vector<BigRational> w;
    for (int cand = min_arcs(genus); cand <= max_arcs(genus); ++cand) {
      ns.push_back(cand);
      w.emplace_back(shape_count(genus, cand));
    }
    n = ns[draw_index_by_weights(w, rng)];
  }

  // (2) label count k ~ a_{k-2g-1} eta0(n, k)
  const KappaTable& tab = kappa_table(genus);
  std::vector<int> ks;
  std::vector<BigRational> kw;
  for (int k = 2 * genus + 1; k <= 3 * genus; ++k) {
    BigInt e0 = eta0(n, k);
    if (e0 == 0) continue;
    ks.push_back(k);
    kw.push_back(tab.entries[k - 2 * genus - 1].a * BigRational(e0));
  }
  const int k = ks[draw_index_by_weights(kw, rng)];

  // (3) glue trace
  GlueTrace trace = sample_trace(genus, k, rng);

  // (4) uniform fully labeled tree, (5) restricted unlabeled insertions
  PlaneTree tree = uniform_tree(k - 1, rng);
  tree = insert_unlabeled(tree, n + 1 - k, rng);

  // (6) realize the glue path with uniform vertex choices
  LabeledMap lm = tree_to_labeled_map(tree);
  std::vector<std::vector<int>> choices;
  int labels = k;
  for (int i = 1; i <= trace.step_count(); ++i) {
    const int arity = trace.glue_arity(i);
    choices.push_back(rng.subset(labels, arity));
    labels -= arity;
    if (trace.label_new_vertex(i)) ++labels;
  }
  LabeledMap glued = realize_trace(lm, trace, choices);
  return planted_map_to_shape(PlantedMap(glued.map));
}

struct BatchResult {
  long long total = 0;
  std::map<std::string, long long> word_counts;
  std::map<int, long long> arc_counts;
  std::vector<std::string> lines;  // formatted output, shard order; empty without a formatter
};

using LineFormatter = std::function<std::string(const Shape&)>;

// Deterministic batch: given (seed, jobs), the stats and the line stream are
// reproducible byte for byte. Every emitted shape is revalidated: its genus
// is recomputed through the diagram route and must equal the target.
inline BatchResult sample_batch(const SamplerConfig& cfg, const LineFormatter& fmt = nullptr) {
  cfg.validate();
  const int jobs = static_cast<int>(std::min<long long>(cfg.jobs, std::max<long long>(cfg.count, 1)));
  struct ShardAcc {
    std::map<std::string, long long> words;
    std::map<int, long long> arcs;
    std::vector<std::string> lines;
  };
  std::vector<ShardAcc> acc(jobs);
  auto work = [&](int shard) {
    SplitMix64 rng = SplitMix64::stream(cfg.seed, static_cast<uint64_t>(shard));
    long long quota = cfg.count / jobs + (shard < cfg.count % jobs ? 1 : 0);
    for (long long i = 0; i < quota; ++i) {
      Shape s = sample_shape(cfg.genus, cfg.arcs, rng);
      if (s.genus() != cfg.genus) throw std::logic_error("sampled shape has wrong genus");
      ++acc[shard].words[s.word()];
      ++acc[shard].arcs[s.pure_arc_count()];
      if (fmt) acc[shard].lines.push_back(fmt(s));
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> ts;
    for (int j = 0; j < jobs; ++j) ts.emplace_back(work, j);
    for (auto& t : ts) t.join();
  }
  BatchResult out;
  out.total = cfg.count;
  for (auto& a : acc) {
    for (auto& [w, c] : a.words) out.word_counts[w] += c;
    for (auto& [n, c] : a.arcs) out.arc_counts[n] += c;
    for (auto& l : a.lines) out.lines.push_back(std::move(l));
  }
  return out;
}

}  // namespace ucshape
