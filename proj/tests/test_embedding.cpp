#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toric/embedding.hpp"

using namespace toric;

namespace {

QVec qv(std::initializer_list<int> xs) {
  QVec v;
  for (int x : xs) v.push_back(Rational(x));
  return v;
}

QMat triangle_vertices() { return {qv({0, 0}), qv({1, 0}), qv({0, 1})}; }

EGraph triangle_graph() {
  EGraph g;
  g.n = 2;
  g.vertices = triangle_vertices();
  g.edges = {{0, 1}, {1, 2}, {2, 0}};
  return g;
}

}  // namespace

TEST_CASE("single edge slab certificate") {
  // s=(2,0), s'=(0,1): at X=(2,-2), X.(s'-s) = -6, distance 6/sqrt(5) is
  // outside delta = 2/sqrt(5), and |X.(s'-s)| = 6 > 2|log eps| = 2
  QVec s = qv({2, 0}), sp = qv({0, 1});
  SamplerOptions opt;
  opt.samples = 20000;
  opt.seed = 12345;
  EmbeddingReport rep = single_edge_certificate(s, sp, std::exp(-1.0), opt);
  CHECK(rep.violations == 0);
  CHECK(rep.samples == 20000);
  CHECK(rep.delta == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));

  // worked points, checked against the margin inequality by hand
  double proj = Eigen::Vector2d(2, -2).dot(Eigen::Vector2d(-2, 1));
  CHECK(std::abs(proj) / std::sqrt(5.0) > rep.delta);
  CHECK(std::abs(proj) > 2.0);
  double proj_in = Eigen::Vector2d(1, 1).dot(Eigen::Vector2d(-2, 1));
  CHECK(std::abs(proj_in) / std::sqrt(5.0) <= rep.delta);

  CHECK_THROWS(single_edge_certificate(s, s, 0.1, opt));
  CHECK_THROWS(single_edge_certificate(s, sp, 1.0, opt));
}

TEST_CASE("single edge certificate is deterministic per seed") {
  SamplerOptions opt;
  opt.samples = 500;
  opt.seed = 9;
  auto a = single_edge_certificate(qv({2, 0}), qv({0, 1}), 0.1, opt);
  auto b = single_edge_certificate(qv({2, 0}), qv({0, 1}), 0.1, opt);
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.samples == b.samples);
}

TEST_CASE("cycle ordering of the triangle") {
  // w=(1,2): projections 0, 1, 2 so the descending order is s3, s2, s1
  CycleCertificate cert = cycle_order(triangle_vertices(), qv({1, 2}), true);
  CHECK(cert.order == std::vector<int>{2, 1, 0});
  CHECK(cert.inverse == std::vector<int>{2, 1, 0});
  CHECK(cert.strict);

  // w=(1,0) ties s1 and s3 at projection 0
  CHECK_THROWS_WITH_AS(
      (void)cycle_order(triangle_vertices(), qv({1, 0}), true),
      doctest::Contains("tied projections"), std::invalid_argument);
  CycleCertificate loose = cycle_order(triangle_vertices(), qv({1, 0}), false);
  CHECK_FALSE(loose.strict);
  CHECK(loose.tie_group[1] != loose.tie_group[0]);
  CHECK(loose.tie_group[2] == loose.tie_group[1]);

  // two vertices: order is the sign of (s'-s).w
  CycleCertificate pair = cycle_order({qv({2, 0}), qv({0, 1})}, qv({1, 0}), true);
  CHECK(pair.order == std::vector<int>{0, 1});

  CHECK_THROWS(cycle_order(triangle_vertices(), qv({0, 0}), true));
}

TEST_CASE("phi regrouping of the triangle") {
  QMat verts = triangle_vertices();
  CycleCertificate cert = cycle_order(verts, qv({1, 2}), true);
  phi_decomposition(verts, cert);
  CHECK(cert.telescoping_ok);
  REQUIRE(cert.phi.size() == 2);
  // Phi_1 = k3 x^{s3} - k2 x^{s2}, Phi_2 = k3 x^{s3} - k1 x^{s1}
  // (cycle positions: edge 2 leaves s3, edge 1 leaves s2, edge 0 leaves s1)
  auto has = [](const std::vector<std::pair<int, int>>& terms, int i, int sgn) {
    for (auto& [a, b] : terms)
      if (a == i && b == sgn) return true;
    return false;
  };
  REQUIRE(cert.phi[0].size() == 2);
  CHECK(has(cert.phi[0], 2, +1));
  CHECK(has(cert.phi[0], 1, -1));
  REQUIRE(cert.phi[1].size() == 2);
  CHECK(has(cert.phi[1], 2, +1));
  CHECK(has(cert.phi[1], 0, -1));
}

TEST_CASE("phi regrouping of a reversible pair and a 4-cycle") {
  QMat pair = {qv({2, 0}), qv({0, 1})};
  CycleCertificate c2 = cycle_order(pair, qv({1, 0}), true);
  phi_decomposition(pair, c2);
  REQUIRE(c2.phi.size() == 1);
  CHECK(c2.phi[0].size() == 2);

  QMat quad = {qv({0, 0}), qv({3, 1}), qv({1, 4}), qv({-2, 2})};
  CycleCertificate c4 = cycle_order(quad, qv({2, 1}), true);
  phi_decomposition(quad, c4);  // throws on any reconstruction mismatch
  CHECK(c4.telescoping_ok);
  REQUIRE(c4.phi.size() == 3);
}

TEST_CASE("phi values are positive for strictly ordered points") {
  QMat verts = triangle_vertices();
  CycleCertificate cert = cycle_order(verts, qv({1, 2}), true);
  phi_decomposition(verts, cert);
  // X = t*(1,2) makes k x^{v_l} strictly decreasing in l once t is large
  // enough to beat the rate corner spread
  Eigen::Vector2d X = 8.0 * Eigen::Vector2d(1, 2);
  double eps = std::exp(-1.0);
  for (int corner = 0; corner < 8; ++corner) {
    std::vector<double> k = {(corner & 1) ? 1 / eps : eps,
                             (corner & 2) ? 1 / eps : eps,
                             (corner & 4) ? 1 / eps : eps};
    for (double v : phi_values(verts, cert, X, k)) CHECK(v > 0);
  }
}

TEST_CASE("embedding verifier reports zero violations on weakly reversible graphs") {
  SamplerOptions opt;
  opt.samples = 4000;
  opt.seed = 7;
  EmbeddingReport rep =
      verify_embedding(triangle_graph(), std::exp(-1.0), Semantics::hyperplane, opt);
  CHECK(rep.samples == 4000);
  CHECK(rep.violations == 0);
  CHECK(rep.max_residual <= opt.tol);

  EGraph pair;
  pair.n = 2;
  pair.vertices = {qv({2, 0}), qv({0, 1})};
  pair.edges = {{0, 1}, {1, 0}};
  EmbeddingReport rep2 = verify_embedding(pair, 0.1, Semantics::hyperplane, opt);
  CHECK(rep2.violations == 0);
}

TEST_CASE("verifier determinism") {
  SamplerOptions opt;
  opt.samples = 300;
  opt.seed = 41;
  auto a = verify_embedding(triangle_graph(), 0.1, Semantics::hyperplane, opt);
  auto b = verify_embedding(triangle_graph(), 0.1, Semantics::hyperplane, opt);
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.violations == b.violations);
}

TEST_CASE("counterexample search finds violations for a single irreversible edge") {
  EGraph g;
  g.n = 2;
  g.vertices = {qv({0, 0}), qv({1, 0})};
  g.edges = {{0, 1}};
  SamplerOptions opt;
  opt.samples = 1000;
  opt.seed = 5;
  EmbeddingReport rep = counterexample_search(g, std::exp(-1.0), opt);
  // RHS always points along +(1,0), but for X.(1,0) > delta the inclusion
  // cone is the ray along -(1,0)
  CHECK(rep.violations > 0);
  CHECK_FALSE(rep.witnesses.empty());
  for (const auto& w : rep.witnesses) CHECK(w.residual > opt.tol);

  CHECK_THROWS(counterexample_search(triangle_graph(), 0.1, opt));
  CHECK_THROWS(verify_embedding(g, 0.1, Semantics::hyperplane, opt));
}

TEST_CASE("rhs_direction matches a direct evaluation") {
  EGraph pair;
  pair.n = 2;
  pair.vertices = {qv({2, 0}), qv({0, 1})};
  pair.edges = {{0, 1}, {1, 0}};
  Eigen::Vector2d X(0.3, -0.7);
  std::vector<double> k = {2.0, 0.5};
  Eigen::VectorXd y = rhs_direction(pair, X, k);
  double m1 = k[0] * std::exp(2 * X[0]);
  double m2 = k[1] * std::exp(X[1]);
  Eigen::Vector2d direct = m1 * Eigen::Vector2d(-2, 1) + m2 * Eigen::Vector2d(2, -1);
  // rhs_direction strips a common positive factor, so compare directions
  CHECK(y.normalized().isApprox(direct.normalized(), 1e-10));
}
