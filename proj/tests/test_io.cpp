#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "toric/io.hpp"

using namespace toric;
using nlohmann::json;

namespace {

json example_doc() {
  return json{
      {"dimension", 2},
      {"vertices",
       {{{"id", "a"}, {"point", {"2", "0"}}}, {{"id", "b"}, {"point", {"0", "1"}}}}},
      {"edges",
       {{{"from", "a"}, {"to", "b"}, {"rate", "3/2"}}, {{"from", "b"}, {"to", "a"}}}},
      {"metadata", {{"name", "running example"}}},
  };
}

}  // namespace

TEST_CASE("network parsing and graph conversion") {
  NetworkDocument doc = parse_network(example_doc());
  CHECK(doc.dimension == 2);
  REQUIRE(doc.vertices.size() == 2);
  CHECK(doc.vertices[0].point == QVec{Rational(2), Rational(0)});
  REQUIRE(doc.edges.size() == 2);
  CHECK(*doc.edges[0].rate == Rational(3, 2));
  CHECK_FALSE(doc.edges[1].rate.has_value());

  EGraph g = doc.to_graph();
  CHECK(g.n == 2);
  CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
  CHECK(doc.rates() == std::vector<Rational>{Rational(3, 2), Rational(1)});
}

TEST_CASE("coordinates accept fractions, integers, and decimals") {
  json j = example_doc();
  j["vertices"][0]["point"] = {"1/3", 0.25};
  NetworkDocument doc = parse_network(j);
  CHECK(doc.vertices[0].point[0] == Rational(1, 3));
  CHECK(doc.vertices[0].point[1] == Rational(1, 4));
}

TEST_CASE("round trip is the identity on the serialized form") {
  NetworkDocument doc = parse_network(example_doc());
  json out = serialize_network(doc);
  NetworkDocument doc2 = parse_network(out);
  CHECK(serialize_network(doc2) == out);
  CHECK(doc2.vertices[0].point == doc.vertices[0].point);
  CHECK(*doc2.edges[0].rate == *doc.edges[0].rate);
  CHECK(doc2.metadata == doc.metadata);
}

TEST_CASE("parse errors carry diagnostics") {
  json j = example_doc();
  j.erase("dimension");
  CHECK_THROWS_WITH_AS(parse_network(j), doctest::Contains("dimension"),
                       std::invalid_argument);

  json dup = example_doc();
  dup["vertices"][1]["id"] = "a";
  CHECK_THROWS_WITH_AS(parse_network(dup), doctest::Contains("duplicate"),
                       std::invalid_argument);

  json unk = example_doc();
  unk["edges"][0]["to"] = "zzz";
  CHECK_THROWS_WITH_AS(parse_network(unk), doctest::Contains("zzz"),
                       std::invalid_argument);

  json shortpt = example_doc();
  shortpt["vertices"][0]["point"] = {"1"};
  CHECK_THROWS_WITH_AS(parse_network(shortpt), doctest::Contains("dimension"),
                       std::invalid_argument);

  CHECK_THROWS_WITH_AS(parse_network_file("/nonexistent/net.json"),
                       doctest::Contains("cannot open"), std::invalid_argument);
}

TEST_CASE("report serialization carries the key fields") {
  NetworkDocument doc = parse_network(example_doc());
  EGraph g = doc.to_graph();
  ToricInclusion ti = build_reversible(g, 0.1);
  json ij = inclusion_to_json(ti);
  CHECK(ij["delta"] == ti.delta);
  CHECK(ij["normals"].size() == 1);
  CHECK(ij["epsilon"] == 0.1);

  SamplerOptions opt;
  opt.samples = 200;
  EmbeddingReport rep = verify_embedding(g, 0.1, Semantics::hyperplane, opt);
  json rj = embedding_report_to_json(rep);
  CHECK(rj["samples"] == 200);
  CHECK(rj["violations"] == 0);
  CHECK(rj["mode"] == "hyperplane");

  auto eq = find_vertex_balanced(g, doc.rates());
  json ej = equilibrium_to_json(eq);
  CHECK(ej["consistent"] == true);
  CHECK(ej["x_bar"].size() == 2);
}

TEST_CASE("trajectory csv layout") {
  NetworkDocument doc = parse_network(example_doc());
  EGraph g = doc.to_graph();
  RateSchedule ks = sample_schedule(g, 0.5, ScheduleKind::constant, 0);
  Trajectory tr = simulate(g, ks, Eigen::Vector2d(2, 1), 1.0);
  std::ostringstream os;
  write_trajectory_csv(os, tr);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,x1,x2,residual1");
  std::string line;
  size_t rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == tr.times.size());
}

TEST_CASE("region svg emits two panels") {
  ToricInclusion ti = inclusion_from_normals({{Rational(1), Rational(0)}}, 1.0, 2);
  PolygonRegion region = build_region(ti, 5.0);
  std::ostringstream os;
  write_region_svg(os, region.vertices, true, ti);
  std::string svg = os.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), 'M') >= 2);
}
