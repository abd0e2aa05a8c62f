#pragma once

// Exact enumeration: unicellular map counts, the kappa/a coefficient tables,
// shape counts and polynomials, and the exact sampling distributions. All
// values are big integers or big rationals; divisions that must be integral
// are checked.

#include "ucshape/exact.hpp"
#include "ucshape/glue_trace.hpp"
#include "ucshape/polynomial.hpp"
#include "ucshape/rng.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace ucshape {

namespace detail {

// Thread-safe memo. Values are computed outside the lock so recursive
// fills cannot deadlock; duplicated work on a race is harmless. References
// into the map stay valid for the process lifetime (nodes are never erased).
template <typename K, typename V>
class Memo {
 public:
  template <typename F>
  const V& get(const K& key, F&& compute) {
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = map_.find(key);
      if (it != map_.end()) return it->second;
    }
    V value = compute();
    std::lock_guard<std::mutex> lk(mu_);
    return map_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::map<K, V> map_;
  std::mutex mu_;
};

}  // namespace detail

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact at every step
  }
  return r;
}

inline BigInt catalan(int n) {
  if (n < 0) return 0;
  BigInt r = binomial(2LL * n, n);
  r /= n + 1;
  return r;
}

// ---- unicellular map counts ----

// eps_g(n): genus-induction recursion
//   2g * eps_g(n) = sum_{k=1..g} C(n+1-2(g-k), 2k+1) * eps_{g-k}(n),
// grounded at eps_0(n) = Cat(n).
inline BigInt epsilon_g(int g, int n) {
  if (g < 0 || n < 0) return 0;
  if (g == 0) return catalan(n);
  static detail::Memo<std::pair<int, int>, BigInt> memo;
  return memo.get({g, n}, [&] {
    BigInt sum = 0;
    for (int k = 1; k <= g; ++k)
      sum += binomial(n + 1 - 2LL * (g - k), 2LL * k + 1) * epsilon_g(g - k, n);
    return to_integer(BigRational(sum, 2 * g));
  });
}

// Product form over genus chains 0 = g_0 < g_1 < ... < g_r = g:
//   eps_g(n) = [sum over chains of prod_i (1/2g_i) C(n+1-2g_{i-1}, 2(g_i-g_{i-1})+1)] * Cat(n).
inline BigInt epsilon_g_product(int g, int n) {
  if (g == 0) return catalan(n);
  BigRational total = 0;
  std::vector<int> chain{0};
  auto rec = [&](auto&& self, BigRational weight) -> void {
    int cur = chain.back();
    if (cur == g) {
      total += weight;
      return;
    }
    for (int nxt = cur + 1; nxt <= g; ++nxt) {
      BigInt ways = binomial(n + 1 - 2LL * cur, 2LL * (nxt - cur) + 1);
      if (ways == 0) continue;
      chain.push_back(nxt);
      self(self, weight * BigRational(ways, 2 * nxt));
      chain.pop_back();
    }
  };
  rec(rec, BigRational(1));
  return to_integer(total * catalan(n));
}

// Series coefficients of C_0^{(k)}(z) up to degree n_max: trees with n edges
// and k labeled vertices. k = 0 gives the Catalan series; k >= 1 gives
// C(n+1, k) * Cat(n).
inline std::vector<BigInt> c0k_coefficients(int k, int n_max) {
  std::vector<BigInt> out(n_max + 1);
  for (int n = 0; n <= n_max; ++n)
    out[n] = k == 0 ? catalan(n) : binomial(n + 1, k) * catalan(n);
  return out;
}

// ---- kappa table ----

struct KappaEntry {
  BigRational a;  // a_t^{(g)}
  BigInt kappa;   // kappa_t^{(g)} = a_t^{(g)} * Cat(2g+t), always integral
};

struct KappaTable {
  int g = 0;
  std::vector<KappaEntry> entries;  // indexed by t = 0..g-1
};

namespace detail {

// C_g^{(k)} expanded as a rational combination of the planar series C_0^{(j)},
// by iterating 2g C_g^{(k)} = sum_t [ C(k+2t+1,2t+1) C_{g-t}^{(k+2t+1)}
//                                    + C(k+2t,2t+1)   C_{g-t}^{(k+2t)} ].
using PlanarCombo = std::map<int, BigRational>;

inline PlanarCombo labeled_series_combo(int g, int k) {
  if (g == 0) return {{k, BigRational(1)}};
  static Memo<std::pair<int, int>, PlanarCombo> memo;
  return memo.get({g, k}, [&] {
    PlanarCombo acc;
    auto add = [&](const BigInt& mult, const PlanarCombo& combo) {
      if (mult == 0) return;
      for (const auto& [j, c] : combo) acc[j] += BigRational(mult) * c;
    };
    for (int t = 1; t <= g; ++t) {
      add(binomial(k + 2LL * t + 1, 2LL * t + 1), labeled_series_combo(g - t, k + 2 * t + 1));
      add(binomial(k + 2LL * t, 2LL * t + 1), labeled_series_combo(g - t, k + 2 * t));
    }
    for (auto& [j, c] : acc) c /= 2 * g;
    return acc;
  });
}

}  // namespace detail

inline const KappaTable& kappa_table(int g) {
  if (g < 1) throw std::invalid_argument("kappa_table requires g >= 1");
  static detail::Memo<int, KappaTable> memo;
  return memo.get(g, [&] {
    KappaTable tab;
    tab.g = g;
    auto combo = detail::labeled_series_combo(g, 0);
    for (int t = 0; t < g; ++t) {
      auto it = combo.find(2 * g + t + 1);
      if (it == combo.end())
        throw std::logic_error("missing a_t coefficient in labeled recursion expansion");
      KappaEntry e;
      e.a = it->second;
      e.kappa = to_integer(e.a * BigRational(catalan(2 * g + t)));
      tab.entries.push_back(std::move(e));
    }
    if (combo.size() != static_cast<size_t>(g))
      throw std::logic_error("unexpected support in labeled recursion expansion");
    return tab;
  });
}

// P_g(z) = sum_t kappa_t^{(g)} (1-4z)^{g-1-t}.
inline IntPolynomial pg_polynomial(int g) {
  const KappaTable& tab = kappa_table(g);
  IntPolynomial p;
  for (int t = 0; t < g; ++t) {
    IntPolynomial term = IntPolynomial::pow_binomial(1, -4, g - 1 - t);
    term *= tab.entries[t].kappa;
    p += term;
  }
  return p;
}

// ---- shape counts ----

// Planar class sizes via the restricted Remy bijection:
//   eta_0(n, k) = C(k-1, n+1-k) * Cat(k-1), zero outside k-1 <= n <= 2k-2.
inline BigInt eta0(int n, int k) {
  if (k < 1 || n < 0) return 0;
  return binomial(k - 1, n + 1 - static_cast<long long>(k)) * catalan(k - 1);
}

// eta_g(n, k): 2g eta_g(n,k) = sum_i [ C(k+2i+1,2i+1) eta_{g-i}(n,k+2i+1)
//                                     + C(k+2i,2i+1)   eta_{g-i}(n,k+2i) ].
inline BigInt eta(int g, int n, int k) {
  if (g < 0 || n < 0 || k < 0) return 0;
  if (g == 0) return eta0(n, k);
  static detail::Memo<std::tuple<int, int, int>, BigInt> memo;
  return memo.get({g, n, k}, [&] {
    BigInt sum = 0;
    for (int i = 1; i <= g; ++i) {
      sum += binomial(k + 2LL * i + 1, 2LL * i + 1) * eta(g - i, n, k + 2 * i + 1);
      sum += binomial(k + 2LL * i, 2LL * i + 1) * eta(g - i, n, k + 2 * i);
    }
    return to_integer(BigRational(sum, 2 * g));
  });
}

inline BigInt shape_count(int g, int n) { return eta(g, n, 0); }

inline int min_arcs(int g) { return 2 * g; }
inline int max_arcs(int g) { return 2 * (3 * g - 1); }

// S_g(z) = sum_t kappa_t^{(g)} z^{2g+t} (1+z)^{2g+t}.
inline IntPolynomial shape_polynomial(int g) {
  const KappaTable& tab = kappa_table(g);
  IntPolynomial p;
  for (int t = 0; t < g; ++t) {
    IntPolynomial term = IntPolynomial::pow_binomial(1, 1, 2 * g + t);
    term *= tab.entries[t].kappa;
    p += IntPolynomial::monomial(1, 2 * g + t) * term;
  }
  return p;
}

inline BigInt shape_total(int g) {
  BigInt total = 0;
  for (int n = min_arcs(g); n <= max_arcs(g); ++n) total += shape_count(g, n);
  return total;
}

// ---- sampling distributions ----

// P_g(n): probability that a uniform genus-g shape has exactly n arcs.
inline BigRational prob_arcs(int g, int n) {
  BigInt c = shape_count(g, n);
  if (c == 0) return BigRational(0);
  return BigRational(c, shape_total(g));
}

// P_g(n, k) = a_{k-2g-1}^{(g)} eta_0(n,k) / eta_g(n,0): probability that the
// glue construction of an n-arc genus-g shape starts from k labeled vertices.
inline BigRational prob_labels(int g, int n, int k) {
  if (k < 2 * g + 1 || k > 3 * g) return BigRational(0);
  BigInt e0 = eta0(n, k);
  if (e0 == 0) return BigRational(0);
  const KappaTable& tab = kappa_table(g);
  return tab.entries[k - 2 * g - 1].a * BigRational(e0) / BigRational(eta(g, n, 0));
}

// Total weight of glue-path completions from (cur_g, labels) to (g, 0),
// where a step to genus g' with d in {0,1} weighs
// (1/2g') * C(labels, 2(g'-cur_g)+1) and leaves labels - 2(g'-cur_g) - 1 + d.
inline BigRational trace_suffix_weight(int g, int cur_g, int labels) {
  if (labels < 0) return BigRational(0);
  if (cur_g == g) return labels == 0 ? BigRational(1) : BigRational(0);
  if (cur_g > g) return BigRational(0);
  static detail::Memo<std::tuple<int, int, int>, BigRational> memo;
  return memo.get({g, cur_g, labels}, [&] {
    BigRational total = 0;
    for (int nxt = cur_g + 1; nxt <= g; ++nxt) {
      BigInt ways = binomial(labels, 2LL * (nxt - cur_g) + 1);
      if (ways == 0) continue;
      BigRational w(ways, 2 * nxt);
      int rem = labels - 2 * (nxt - cur_g) - 1;
      total += w * (trace_suffix_weight(g, nxt, rem) + trace_suffix_weight(g, nxt, rem + 1));
    }
    return total;
  });
}

// prod of step weights along a full trace, normalized by a_t^{(g)}; the
// normalizer equals the total suffix weight from (0, k).
inline BigRational trace_probability(int g, int k, const GlueTrace& trace) {
  trace.validate_for(g, k);
  BigRational w = 1;
  int labels = k;
  for (int i = 1; i <= trace.step_count(); ++i) {
    int gi = trace.genus_at(i);
    w *= BigRational(binomial(labels, trace.glue_arity(i)), 2 * gi);
    labels -= trace.glue_arity(i);
    if (trace.label_new_vertex(i)) ++labels;
  }
  return w / trace_suffix_weight(g, 0, k);
}

// All traces for (g, t) with their probabilities; t = k - 2g - 1. Sums to 1.
inline std::vector<std::pair<GlueTrace, BigRational>> trace_distribution(int g, int t) {
  const int k = 2 * g + t + 1;
  std::vector<std::pair<GlueTrace, BigRational>> out;
  std::vector<std::pair<int, int>> steps;
  auto rec = [&](auto&& self, int cur_g, int labels, int t_cur) -> void {
    if (cur_g == g) {
      if (labels == 0) {
        GlueTrace tr(steps);
        out.emplace_back(tr, trace_probability(g, k, tr));
      }
      return;
    }
    for (int nxt = cur_g + 1; nxt <= g; ++nxt) {
      int rem = labels - 2 * (nxt - cur_g) - 1;
      if (rem < 0) continue;
      for (int d = 0; d <= 1; ++d) {
        // t_i recorded for this step is the cumulative count before its decision
        steps.emplace_back(nxt, t_cur);
        if (trace_suffix_weight(g, nxt, rem + d) != 0) {
          // the decision shows up in the *next* step's t, so recurse with t_cur + d
          self(self, nxt, rem + d, t_cur + d);
        }
        steps.pop_back();
      }
    }
  };
  rec(rec, 0, k, 0);
  return out;
}

// Uniform index draw from exact rational weights: scale to a common
// denominator, draw a uniform big integer below the total, walk cumulative
// numerators. Weights need not be normalized; total must be positive.
inline size_t draw_index_by_weights(const std::vector<BigRational>& weights, SplitMix64& rng) {
  BigInt denom = 1;
  for (const auto& w : weights) denom = boost::multiprecision::lcm(denom, rat_den(w));
  std::vector<BigInt> scaled(weights.size());
  BigInt total = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    scaled[i] = rat_num(weights[i]) * (denom / rat_den(weights[i]));
    if (scaled[i] < 0) throw std::invalid_argument("negative weight");
    total += scaled[i];
  }
  if (total <= 0) throw std::invalid_argument("weights sum to zero");
  BigInt u = rng.below_big(total);
  for (size_t i = 0; i < weights.size(); ++i) {
    if (u < scaled[i]) return i;
    u -= scaled[i];
  }
  throw std::logic_error("weighted draw fell off the end");
}

// Sample a glue trace for (g, k) from the exact trace distribution, one step
// at a time via suffix weights.
inline GlueTrace sample_trace(int g, int k, SplitMix64& rng) {
  std::vector<std::pair<int, int>> steps;
  int cur_g = 0, labels = k, t_cur = 0;
  while (cur_g < g) {
    std::vector<std::pair<int, int>> options;  // (next genus, d)
    std::vector<BigRational> weights;
    for (int nxt = cur_g + 1; nxt <= g; ++nxt) {
      BigInt ways = binomial(labels, 2LL * (nxt - cur_g) + 1);
      if (ways == 0) continue;
      int rem = labels - 2 * (nxt - cur_g) - 1;
      for (int d = 0; d <= 1; ++d) {
        BigRational z = trace_suffix_weight(g, nxt, rem + d);
        if (z == 0) continue;
        options.emplace_back(nxt, d);
        weights.push_back(BigRational(ways, 2 * nxt) * z);
      }
    }
    size_t pick = draw_index_by_weights(weights, rng);
    auto [nxt, d] = options[pick];
    steps.emplace_back(nxt, t_cur);
    labels -= 2 * (nxt - cur_g) + 1 - d;
    t_cur += d;
    cur_g = nxt;
  }
  GlueTrace trace(steps);
  trace.validate_for(g, k);
  return trace;
}

}  // namespace ucshape
