#include "ucshape/unicellular.hpp"

#include <doctest.h>

#include <set>

#include "ucshape/rng.hpp"

using namespace ucshape;

namespace {

UnicellularMap one_vertex_genus1() {
  return UnicellularMap(Permutation::full_cycle(4),
                        Permutation::involution_from_pairs(4, {{0, 2}, {1, 3}}));
}

UnicellularMap random_map(int m, SplitMix64& rng) {
  std::vector<int> hs(2 * m);
  for (int i = 0; i < 2 * m; ++i) hs[i] = i;
  rng.shuffle(hs);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < m; ++i) pairs.emplace_back(hs[2 * i], hs[2 * i + 1]);
  Permutation alpha = Permutation::involution_from_pairs(2 * m, pairs);
  return UnicellularMap(alpha.compose(Permutation::full_cycle(2 * m)), alpha);
}

}  // namespace

TEST_CASE("permutation plumbing") {
  Permutation p({1, 2, 0});
  CHECK(p.cycle_count() == 1);
  CHECK(p.inverse()(0) == 2);
  CHECK(p.compose(p.inverse()) == Permutation::identity(3));
  CHECK_THROWS(Permutation({0, 0, 1}));
  CHECK_THROWS(Permutation::involution_from_pairs(4, {{0, 0}, {1, 2}}));
  CHECK(Permutation::involution_from_pairs(2, {{0, 1}}).is_fixed_point_free_involution());
  CHECK_FALSE(Permutation::identity(2).is_fixed_point_free_involution());
  CHECK(Permutation::from_cycles(4, {{0, 2}, {1, 3}}) ==
        Permutation::involution_from_pairs(4, {{0, 2}, {1, 3}}));
}

TEST_CASE("single edge map") {
  UnicellularMap m(Permutation::identity(2), Permutation::involution_from_pairs(2, {{0, 1}}));
  CHECK(m.face_cycle() == std::vector<int>{0, 1});
  CHECK(m.vertex_count() == 2);
  CHECK(m.genus() == 0);
  CHECK(m.is_planted());
  CHECK(m.trisections().empty());
}

TEST_CASE("one-vertex genus-1 map") {
  UnicellularMap m = one_vertex_genus1();
  CHECK(m.face_cycle().size() == 4);
  CHECK(m.vertex_count() == 1);
  CHECK(m.genus() == 1);
  CHECK(m.trisections() == std::vector<int>{2, 1});  // gamma order 0 < 3 < 2 < 1
  CHECK(m.classify_half_edge(0) == StepKind::UpStep);
  CHECK(m.classify_half_edge(3) == StepKind::DownStep);
  CHECK_FALSE(m.is_trisection(3));  // sigma(3) = 0 is the vertex minimum
  CHECK(m.dump() == "m=2 alpha=0,2;1,3 sigma_cycles=(0,1,2,3)");
}

TEST_CASE("non-unicellular construction is rejected") {
  CHECK_THROWS(UnicellularMap(Permutation::identity(4),
                              Permutation::involution_from_pairs(4, {{0, 1}, {2, 3}})));
}

TEST_CASE("boundary components of the rainbowed 8-vertex fatgraph") {
  // sigma the full backbone cycle, alpha = (0 7)(1 3)(2 5)(4 6): gamma has
  // the cycles (0 3 6), (1 5 4 2), (7) -- three boundary components.
  Fatgraph f(Permutation::full_cycle(8),
             Permutation::involution_from_pairs(8, {{0, 7}, {1, 3}, {2, 5}, {4, 6}}));
  auto comps = f.boundary_components();
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == std::vector<int>{0, 3, 6});
  CHECK(comps[1] == std::vector<int>{1, 5, 4, 2});
  CHECK(comps[2] == std::vector<int>{7});
  CHECK(f.genus() == 1);

  SUBCASE("poincare dual swaps boundary components and vertices") {
    UnicellularMap dual = poincare_dual(f);
    CHECK(dual.edge_count() == 4);
    CHECK(dual.vertex_count() == 3);
    CHECK(dual.genus() == 1);
    // applying the defining formula again recovers the original sigma
    Fatgraph dd(dual.alpha().compose(dual.sigma()), dual.alpha());
    CHECK(dd.sigma() == f.sigma());
  }
}

TEST_CASE("poincare dual requires one vertex") {
  Fatgraph two_vertices(Permutation::identity(2), Permutation::involution_from_pairs(2, {{0, 1}}));
  CHECK_THROWS(poincare_dual(two_vertices));
}

TEST_CASE("dual of a one-edge loop") {
  Fatgraph loop(Permutation::full_cycle(2), Permutation::involution_from_pairs(2, {{0, 1}}));
  UnicellularMap dual = poincare_dual(loop);
  CHECK(dual.edge_count() == 1);
  CHECK(dual.genus() == 0);
}

TEST_CASE("vertex order by gamma starts at the origin vertex") {
  // path with 2 edges in canonical planted form
  Permutation alpha = Permutation::involution_from_pairs(6, {{0, 1}, {2, 5}, {3, 4}});
  UnicellularMap m(alpha.compose(Permutation::full_cycle(6)), alpha);
  auto order = m.vertex_order_by_gamma();
  REQUIRE(order.size() == 4);
  CHECK(order[0] == m.vertex_id(0));
  CHECK(m.is_planted());
  CHECK(m.vertex_degree(0) == 1);
  for (size_t i = 1; i < order.size(); ++i)
    CHECK(m.gamma_pos(order[i - 1]) < m.gamma_pos(order[i]));
}

TEST_CASE("random map invariants: steps, trisections, genus") {
  SplitMix64 rng(2024);
  for (int it = 0; it < 3000; ++it) {
    int m = 1 + static_cast<int>(rng.below(6));
    UnicellularMap um = random_map(m, rng);
    CHECK(static_cast<int>(um.face_cycle().size()) == 2 * m);
    int downs = 0;
    for (int h = 0; h < 2 * m; ++h)
      if (um.classify_half_edge(h) == StepKind::DownStep) ++downs;
    // one closing down-step per vertex plus one per trisection
    CHECK(downs == um.vertex_count() + 2 * um.genus());
    CHECK(static_cast<int>(um.trisections().size()) == 2 * um.genus());
  }
}
