#pragma once

// Corpus processing: project structure lines to shapes and aggregate
// multiplicities — per-shape counts, per-genus multiplicity polynomials in
// the arc count, and genus totals. The empty shape is reported as EMPTY
// under genus 0 so secondary-structure corpora aggregate totally.

#include "ucshape/diagram.hpp"
#include "ucshape/polynomial.hpp"

#include <istream>
#include <map>
#include <string>
#include <vector>

namespace ucshape {

struct ProjectedLine {
  bool ok = false;
  int genus = 0;
  std::string word;  // "EMPTY" for the empty shape
  int arcs = 0;      // pure arcs
  std::string error;
};

inline ProjectedLine project_line(const std::string& line) {
  ProjectedLine out;
  try {
    Diagram d = parse_structure(line);
    Shape s = project_to_shape(d);
    out.ok = true;
    out.genus = s.genus();
    out.word = s.is_empty() ? "EMPTY" : s.word();
    out.arcs = s.pure_arc_count();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

struct CorpusStats {
  long long total = 0;  // structures successfully projected
  // word -> (count, genus, arcs); word "EMPTY" collects all planar inputs
  struct Entry {
    long long count = 0;
    int genus = 0;
    int arcs = 0;
  };
  std::map<std::string, Entry> by_word;
  std::map<int, std::map<int, long long>> genus_arc_counts;  // genus -> arcs -> count
  std::vector<std::string> errors;                           // "line N: message"

  std::map<int, long long> genus_totals() const {
    std::map<int, long long> out;
    for (const auto& [w, e] : by_word) out[e.genus] += e.count;
    return out;
  }

  // Multiplicity polynomial for one genus: coefficient of z^n is the number
  // of corpus structures whose shape has genus g and n arcs.
  IntPolynomial multiplicity_polynomial(int genus) const {
    auto it = genus_arc_counts.find(genus);
    IntPolynomial p;
    if (it == genus_arc_counts.end()) return p;
    for (const auto& [n, c] : it->second) p += IntPolynomial::monomial(c, n);
    return p;
  }
};

inline CorpusStats corpus_aggregate(std::istream& in) {
  CorpusStats stats;
  std::string line;
  long long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank || line[0] == '#') continue;
    ProjectedLine p = project_line(line);
    if (!p.ok) {
      stats.errors.push_back("line " + std::to_string(lineno) + ": " + p.error);
      continue;
    }
    auto& e = stats.by_word[p.word];
    ++e.count;
    e.genus = p.genus;
    e.arcs = p.arcs;
    ++stats.genus_arc_counts[p.genus][p.arcs];
    ++stats.total;
  }
  return stats;
}

}  // namespace ucshape
