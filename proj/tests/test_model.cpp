#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "toric/egraph.hpp"

using namespace toric;

namespace {

QVec qv(std::initializer_list<int> xs) {
  QVec v;
  for (int x : xs) v.push_back(Rational(x));
  return v;
}

// 1D birth-death style pair: x' = k1 x^2 (-2,1)-ish, here the running
// two-vertex example in R^2: s1=(2,0) <-> s2=(0,1)
EGraph two_vertex() {
  EGraph g;
  g.n = 2;
  g.vertices = {qv({2, 0}), qv({0, 1})};
  g.edges = {{0, 1}, {1, 0}};
  return g;
}

EGraph triangle() {
  EGraph g;
  g.n = 2;
  g.vertices = {qv({0, 0}), qv({1, 0}), qv({0, 1})};
  g.edges = {{0, 1}, {1, 2}, {2, 0}};
  return g;
}

}  // namespace

TEST_CASE("validate rejects malformed graphs") {
  EGraph g = two_vertex();
  CHECK_NOTHROW(g.validate());

  EGraph dup = g;
  dup.vertices[1] = dup.vertices[0];
  CHECK_THROWS_AS(dup.validate(), std::invalid_argument);

  EGraph loop = g;
  loop.edges.push_back({0, 0});
  CHECK_THROWS_AS(loop.validate(), std::invalid_argument);

  EGraph dupe = g;
  dupe.edges.push_back({0, 1});
  CHECK_THROWS_AS(dupe.validate(), std::invalid_argument);

  EGraph oob = g;
  oob.edges.push_back({0, 5});
  CHECK_THROWS_AS(oob.validate(), std::invalid_argument);
}

TEST_CASE("edge vectors and generated system") {
  EGraph g = two_vertex();
  CHECK(g.edge_vector(0) == qv({-2, 1}));
  CHECK(g.edge_vector(1) == qv({2, -1}));

  PolySystem sys = system_of(g, {Rational(1), Rational(1)});
  REQUIRE(sys.terms.size() == 2);
  CHECK(sys.terms[0].exponent == qv({2, 0}));
  CHECK(sys.terms[0].direction == qv({-2, 1}));
  CHECK(sys.terms[1].exponent == qv({0, 1}));
  CHECK(sys.terms[1].direction == qv({2, -1}));
}

TEST_CASE("graph_from_terms fuses shared source and target points") {
  // terms k1 x^(2,0) (-2,1) and k2 x^(0,1) (2,-1) share endpoints pairwise
  std::vector<std::pair<QVec, QVec>> terms = {
      {qv({2, 0}), qv({-2, 1})},
      {qv({0, 1}), qv({2, -1})},
  };
  EGraph g = graph_from_terms(terms);
  CHECK(g.n == 2);
  CHECK(g.vertices.size() == 2);
  CHECK(g.edges.size() == 2);
  CHECK(is_reversible(g));
}

TEST_CASE("reversibility and weak reversibility") {
  CHECK(is_reversible(two_vertex()));
  CHECK(is_weakly_reversible(two_vertex()));

  EGraph tri = triangle();
  CHECK_FALSE(is_reversible(tri));
  CHECK(is_weakly_reversible(tri));

  EGraph chain;
  chain.n = 1;
  chain.vertices = {qv({0}), qv({1})};
  chain.edges = {{0, 1}};
  CHECK_FALSE(is_weakly_reversible(chain));
}

TEST_CASE("scc components") {
  EGraph tri = triangle();
  auto comp = scc_components(tri);
  CHECK(comp[0] == comp[1]);
  CHECK(comp[1] == comp[2]);

  EGraph two;
  two.n = 1;
  two.vertices = {qv({0}), qv({1}), qv({2}), qv({3})};
  two.edges = {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}};
  auto c2 = scc_components(two);
  CHECK(c2[0] == c2[1]);
  CHECK(c2[2] == c2[3]);
  CHECK(c2[0] != c2[2]);
}

TEST_CASE("cycle cover reconstructs edges with unit total weight") {
  for (const EGraph& g : {two_vertex(), triangle()}) {
    CycleCover cc = cycle_cover(g);
    REQUIRE(cc.edge_weights.size() == g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
      Rational total = 0;
      for (auto& [ci, w] : cc.edge_weights[e]) {
        total += w;
        // cycle ci really contains edge e
        const auto& cyc = cc.cycles[ci];
        bool found = false;
        for (size_t i = 0; i < cyc.size(); ++i) {
          int s = cyc[i], t = cyc[(i + 1) % cyc.size()];
          if (s == g.edges[e].first && t == g.edges[e].second) found = true;
        }
        CHECK(found);
      }
      CHECK(total == Rational(1));
    }
  }

  // triangle has a single 3-cycle
  CycleCover cc = cycle_cover(triangle());
  CHECK(cc.cycles.size() == 1);
  CHECK(cc.cycles[0].size() == 3);
}

TEST_CASE("edge space of the two vertex example") {
  auto [S, Sperp] = edge_space(two_vertex());
  REQUIRE(S.size() == 1);
  CHECK(primitive_up_to_sign(S[0]) == primitive_up_to_sign(qv({-2, 1})));
  REQUIRE(Sperp.size() == 1);
  CHECK(primitive_up_to_sign(Sperp[0]) == primitive_up_to_sign(qv({1, 2})));
  CHECK(dot(S[0], Sperp[0]) == Rational(0));
}

TEST_CASE("shift_vertices translates labels, keeps edges") {
  EGraph g = shift_vertices(two_vertex(), qv({1, -1}));
  CHECK(g.vertices[0] == qv({3, -1}));
  CHECK(g.vertices[1] == qv({1, 0}));
  CHECK(g.edges == two_vertex().edges);
  CHECK(g.edge_vector(0) == qv({-2, 1}));
}
