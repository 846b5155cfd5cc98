#include "toric/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace toric {

using nlohmann::json;

EGraph NetworkDocument::to_graph() const {
  EGraph g;
  g.n = dimension;
  std::map<std::string, int> index;
  for (const auto& v : vertices) {
    if (!index.emplace(v.id, (int)g.vertices.size()).second)
      throw std::invalid_argument("duplicate vertex id '" + v.id + "'");
    if ((int)v.point.size() != dimension)
      throw std::invalid_argument("vertex '" + v.id + "' has wrong dimension");
    g.vertices.push_back(v.point);
  }
  for (const auto& e : edges) {
    auto a = index.find(e.from);
    auto b = index.find(e.to);
    if (a == index.end())
      throw std::invalid_argument("edge references unknown vertex id '" + e.from + "'");
    if (b == index.end())
      throw std::invalid_argument("edge references unknown vertex id '" + e.to + "'");
    g.edges.emplace_back(a->second, b->second);
  }
  g.validate();
  return g;
}

std::vector<Rational> NetworkDocument::rates() const {
  std::vector<Rational> out;
  for (const auto& e : edges) out.push_back(e.rate.value_or(Rational(1)));
  return out;
}

namespace {

Rational parse_coord(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  throw std::invalid_argument("coordinate must be a string or number");
}

}  // namespace

NetworkDocument parse_network(const json& j) {
  NetworkDocument doc;
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw std::invalid_argument("missing integer field 'dimension'");
  doc.dimension = j["dimension"].get<int>();
  if (doc.dimension <= 0) throw std::invalid_argument("dimension must be positive");
  for (const auto& vj : j.value("vertices", json::array())) {
    NetworkDocument::Vertex v;
    v.id = vj.at("id").get<std::string>();
    for (const auto& c : vj.at("point")) v.point.push_back(parse_coord(c));
    doc.vertices.push_back(std::move(v));
  }
  for (const auto& ej : j.value("edges", json::array())) {
    NetworkDocument::Edge e;
    e.from = ej.at("from").get<std::string>();
    e.to = ej.at("to").get<std::string>();
    if (ej.contains("rate")) e.rate = parse_coord(ej["rate"]);
    doc.edges.push_back(std::move(e));
  }
  if (j.contains("metadata")) doc.metadata = j["metadata"];
  std::set<std::string> ids;
  for (const auto& v : doc.vertices) {
    if (!ids.insert(v.id).second)
      throw std::invalid_argument("duplicate vertex id '" + v.id + "'");
    if ((int)v.point.size() != doc.dimension)
      throw std::invalid_argument("vertex '" + v.id + "' does not match the declared dimension");
  }
  for (const auto& e : doc.edges) {
    if (!ids.count(e.from))
      throw std::invalid_argument("edge references unknown vertex id '" + e.from + "'");
    if (!ids.count(e.to))
      throw std::invalid_argument("edge references unknown vertex id '" + e.to + "'");
  }
  return doc;
}

NetworkDocument parse_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open network file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("parse error in '" + path + "': " + e.what());
  }
  return parse_network(j);
}

json serialize_network(const NetworkDocument& doc) {
  json j;
  j["dimension"] = doc.dimension;
  j["vertices"] = json::array();
  for (const auto& v : doc.vertices) {
    json p = json::array();
    for (const auto& c : v.point) p.push_back(to_string(c));
    j["vertices"].push_back({{"id", v.id}, {"point", p}});
  }
  j["edges"] = json::array();
  for (const auto& e : doc.edges) {
    json ej{{"from", e.from}, {"to", e.to}};
    if (e.rate) ej["rate"] = to_string(*e.rate);
    j["edges"].push_back(ej);
  }
  if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
  return j;
}

json inclusion_to_json(const ToricInclusion& ti) {
  json j;
  j["delta"] = ti.delta;
  j["normals"] = json::array();
  if (ti.hyperplane_generated()) {
    for (size_t i = 0; i < ti.fan->normal_dirs().size(); ++i) {
      json nj;
      json dir = json::array();
      for (const auto& c : ti.fan->normal_dirs()[i]) dir.push_back(to_string(c));
      nj["direction"] = dir;
      json unit = json::array();
      for (int k = 0; k < ti.fan->unit_normals()[i].size(); ++k)
        unit.push_back(ti.fan->unit_normals()[i][k]);
      nj["unit"] = unit;
      if (ti.provenance && i < ti.provenance->hyperplane_edges.size())
        nj["edges"] = ti.provenance->hyperplane_edges[i];
      j["normals"].push_back(nj);
    }
    j["cones"] = ti.fan->realizable().size();
  }
  if (ti.provenance) {
    j["epsilon"] = ti.provenance->epsilon;
    j["effective_epsilon"] = ti.provenance->effective_epsilon;
  }
  return j;
}

json embedding_report_to_json(const EmbeddingReport& rep) {
  json j;
  j["samples"] = rep.samples;
  j["violations"] = rep.violations;
  j["max_residual"] = rep.max_residual;
  j["seed"] = rep.seed;
  j["mode"] = rep.mode == Semantics::hyperplane ? "hyperplane" : "strict";
  j["delta"] = rep.delta;
  j["epsilon"] = rep.epsilon;
  j["witnesses"] = json::array();
  for (const auto& w : rep.witnesses) {
    json wj;
    wj["X"] = std::vector<double>(w.X.data(), w.X.data() + w.X.size());
    wj["k"] = w.k;
    wj["rhs"] = std::vector<double>(w.rhs.data(), w.rhs.data() + w.rhs.size());
    wj["residual"] = w.residual;
    j["witnesses"].push_back(wj);
  }
  return j;
}

json equilibrium_to_json(const EquilibriumResult& res) {
  json j;
  j["consistent"] = res.consistent;
  j["balanced"] = res.balanced;
  j["ls_residual"] = res.ls_residual;
  if (res.x_bar.size())
    j["x_bar"] = std::vector<double>(res.x_bar.data(), res.x_bar.data() + res.x_bar.size());
  j["vertex_residuals"] = res.vertex_residuals;
  j["laplacian_kernel"] = res.laplacian_kernel;
  return j;
}

json region_certificate_to_json(const RegionCertificate& cert) {
  json j;
  j["verified"] = cert.verified;
  j["max_value"] = cert.max_value;
  j["subsegments"] = json::array();
  for (const auto& s : cert.subsegments) {
    json sj;
    sj["a"] = {s.a.x(), s.a.y()};
    sj["b"] = {s.b.x(), s.b.y()};
    sj["outward_normal"] = {s.outward_normal.x(), s.outward_normal.y()};
    sj["max_dot"] = s.max_dot;
    j["subsegments"].push_back(sj);
  }
  if (!cert.note.empty()) j["note"] = cert.note;
  return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  int n = traj.states_log.empty() ? 0 : (int)traj.states_log[0].size();
  os << "t";
  for (int i = 0; i < n; ++i) os << ",x" << (i + 1);
  for (size_t c = 0; c < traj.conservation_basis.size(); ++c) os << ",residual" << (c + 1);
  os << "\n";
  std::vector<Eigen::VectorXd> cons;
  for (const auto& cv : traj.conservation_basis) cons.push_back(to_eigen(cv));
  Eigen::VectorXd x0 = traj.states_log.empty() ? Eigen::VectorXd() : traj.state(0);
  os.precision(15);
  for (size_t s = 0; s < traj.times.size(); ++s) {
    os << traj.times[s];
    Eigen::VectorXd x = traj.state(s);
    for (int i = 0; i < n; ++i) os << "," << x[i];
    for (const auto& c : cons) os << "," << c.dot(x - x0);
    os << "\n";
  }
}

namespace {

void svg_path(std::ostream& os, const std::vector<Eigen::Vector2d>& pts, bool closed,
              double ox, double oy, double scale, double minx, double maxy,
              const char* color) {
  os << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
  for (size_t i = 0; i < pts.size(); ++i)
    os << (i == 0 ? "M" : "L") << ox + (pts[i].x() - minx) * scale << " "
       << oy + (maxy - pts[i].y()) * scale << " ";
  if (closed) os << "Z";
  os << "\"/>\n";
}

void svg_panel(std::ostream& os, const std::vector<Eigen::Vector2d>& pts, bool closed,
               double ox, const char* color, const std::vector<std::vector<Eigen::Vector2d>>& extra) {
  double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
  for (const auto& p : pts) {
    minx = std::min(minx, p.x());
    maxx = std::max(maxx, p.x());
    miny = std::min(miny, p.y());
    maxy = std::max(maxy, p.y());
  }
  double pad = 0.05 * std::max(maxx - minx, maxy - miny) + 1e-9;
  minx -= pad; maxx += pad; miny -= pad; maxy += pad;
  double scale = 360.0 / std::max(maxx - minx, maxy - miny);
  svg_path(os, pts, closed, ox + 20, 20, scale, minx, maxy, color);
  for (const auto& e : extra) svg_path(os, e, false, ox + 20, 20, scale, minx, maxy, "#999999");
}

}  // namespace

void write_region_svg(std::ostream& os, const std::vector<Eigen::Vector2d>& log_polyline,
                      bool closed, const ToricInclusion& ti) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"420\">\n";
  // hyperplane traces in log space
  std::vector<std::vector<Eigen::Vector2d>> lines;
  double R = 0;
  for (const auto& p : log_polyline) R = std::max(R, p.norm());
  if (ti.hyperplane_generated()) {
    for (const auto& u : ti.fan->unit_normals()) {
      Eigen::Vector2d t(-u[1], u[0]);
      lines.push_back({-R * t, R * t});
    }
  }
  svg_panel(os, log_polyline, closed, 0, "#1f6fbf", lines);
  svg_panel(os, to_xspace(log_polyline, 24, closed), closed, 420, "#bf3f1f", {});
  os << "</svg>\n";
}

}  // namespace toric
