#pragma once

// Diagnostic statistics for sampler output: chi-square goodness of fit,
// binomial multiplicity profiles, and a least-squares helper. This is
// reporting code only: it runs downstream of sampling and never feeds back
// into any counting or probability path, so ordinary floating point is fine
// here (and nowhere else).

#include "ucshape/counting.hpp"
#include "ucshape/sampler.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace ucshape {

namespace detail {

// Regularized lower incomplete gamma P(a, x); Q = 1 - P. Series for
// x < a+1, continued fraction otherwise (the usual numerical recipe).
inline double gamma_p(double a, double x) {
  if (x < 0 || a <= 0) return 0.0;
  if (x == 0) return 0.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-14) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-14) break;
  }
  return 1.0 - std::exp(-x + a * std::log(x) - gln) * h;
}

}  // namespace detail

// Upper-tail p-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_pvalue(double stat, int df) {
  if (df <= 0) return 1.0;
  return 1.0 - detail::gamma_p(df / 2.0, stat / 2.0);
}

struct GofResult {
  double stat = 0.0;
  int df = 0;
  double p_value = 1.0;
  bool pass(double alpha) const { return p_value > alpha; }
};

// Plain multinomial chi-square: observed counts vs expected counts.
inline GofResult chi_square_gof(const std::vector<double>& observed,
                                const std::vector<double>& expected) {
  GofResult r;
  for (size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0) continue;
    const double d = observed[i] - expected[i];
    r.stat += d * d / expected[i];
    ++r.df;
  }
  r.df -= 1;
  r.p_value = chi_square_pvalue(r.stat, r.df);
  return r;
}

// Arc-count distribution of a batch vs the exact P_g(n).
inline GofResult arc_distribution_gof(const BatchResult& batch, int genus) {
  std::vector<double> obs, exp;
  for (int n = min_arcs(genus); n <= max_arcs(genus); ++n) {
    auto it = batch.arc_counts.find(n);
    obs.push_back(it == batch.arc_counts.end() ? 0.0 : static_cast<double>(it->second));
    BigRational p = prob_arcs(genus, n);
    exp.push_back(static_cast<double>(batch.total) * rat_num(p).convert_to<double>() /
                  rat_den(p).convert_to<double>());
  }
  return chi_square_gof(obs, exp);
}

// Uniformity over the full shape class: chi-square of per-shape counts
// against total/classes (classes = number of shapes in scope).
inline GofResult class_uniformity_gof(const BatchResult& batch, long long classes) {
  const double expct = static_cast<double>(batch.total) / static_cast<double>(classes);
  GofResult r;
  long long seen = 0;
  for (const auto& [w, c] : batch.word_counts) {
    const double d = static_cast<double>(c) - expct;
    r.stat += d * d / expct;
    ++seen;
  }
  r.stat += (classes - seen) * expct;  // unobserved classes
  r.df = static_cast<int>(classes) - 1;
  r.p_value = chi_square_pvalue(r.stat, r.df);
  return r;
}

// Multiplicity histogram vs Binomial(N, 1/classes): pools tails so every
// expected bin mass is >= 5, then chi-square.
inline GofResult multiplicity_gof(const BatchResult& batch, long long classes) {
  const double n = static_cast<double>(batch.total);
  const double p = 1.0 / static_cast<double>(classes);
  std::map<long long, long long> hist;  // multiplicity -> #shapes
  long long distinct = 0;
  for (const auto& [w, c] : batch.word_counts) {
    ++hist[c];
    ++distinct;
  }
  hist[0] += classes - distinct;

  long long max_mult = hist.rbegin()->first;
  auto log_pmf = [&](long long ell) {
    const double x = static_cast<double>(ell);
    return std::lgamma(n + 1) - std::lgamma(x + 1) - std::lgamma(n - x + 1) +
           x * std::log(p) + (n - x) * std::log1p(-p);
  };
  std::vector<double> obs, exp;
  double pend_obs = 0, pend_exp = 0;
  for (long long ell = 0; ell <= max_mult || pend_exp > 0; ++ell) {
    double e = static_cast<double>(classes) * std::exp(log_pmf(ell));
    auto it = hist.find(ell);
    double o = it == hist.end() ? 0.0 : static_cast<double>(it->second);
    pend_obs += o;
    pend_exp += e;
    if (pend_exp >= 5.0) {
      obs.push_back(pend_obs);
      exp.push_back(pend_exp);
      pend_obs = pend_exp = 0;
    }
    if (ell > max_mult && e < 1e-9) break;
    if (ell > 4 * static_cast<long long>(n * p + 10)) break;
  }
  if (pend_exp > 0 && !obs.empty()) {  // fold the tail into the last bin
    obs.back() += pend_obs;
    exp.back() += pend_exp;
  }
  return chi_square_gof(obs, exp);
}

// Least-squares fit y = a + b x; returns R^2 (1 for a perfect line).
inline double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0) return 1.0;
  const double b = sxy / sxx;
  double ss_res = 0;
  for (size_t i = 0; i < n; ++i) {
    const double fit = my + b * (x[i] - mx);
    ss_res += (y[i] - fit) * (y[i] - fit);
  }
  return 1.0 - ss_res / syy;
}

// The '#'-prefixed summary block appended by `sample --stats`.
inline std::string batch_summary(const BatchResult& batch, const SamplerConfig& cfg) {
  std::ostringstream os;
  os << "# genus=" << cfg.genus << " count=" << batch.total << " seed=" << cfg.seed;
  if (cfg.arcs) os << " arcs=" << *cfg.arcs;
  os << "\n";
  os << "# arcs,expected_num,expected_den,observed\n";
  for (int n = min_arcs(cfg.genus); n <= max_arcs(cfg.genus); ++n) {
    if (cfg.arcs && n != *cfg.arcs) continue;
    BigRational p = cfg.arcs ? BigRational(1) : prob_arcs(cfg.genus, n);
    auto it = batch.arc_counts.find(n);
    os << "# " << n << "," << rat_num(p) << "," << rat_den(p) << ","
       << (it == batch.arc_counts.end() ? 0 : it->second) << "\n";
  }
  os << "# distinct_shapes=" << batch.word_counts.size() << "\n";
  if (!cfg.arcs) {
    GofResult g = arc_distribution_gof(batch, cfg.genus);
    os << "# arc_chi_square=" << g.stat << " df=" << g.df << " p_value=" << g.p_value << "\n";
  }
  return os.str();
}

}  // namespace ucshape
