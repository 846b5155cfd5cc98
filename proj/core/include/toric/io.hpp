#ifndef TORIC_IO_HPP
#define TORIC_IO_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric/dynamics.hpp"
#include "toric/egraph.hpp"
#include "toric/embedding.hpp"
#include "toric/inclusion.hpp"
#include "toric/regions.hpp"

namespace toric {

// On-disk network description: vertices with string ids and exact rational
// coordinates ("p/q" strings or decimals), edges with optional rates.
struct NetworkDocument {
  int dimension = 0;
  struct Vertex {
    std::string id;
    QVec point;
  };
  struct Edge {
    std::string from, to;
    std::optional<Rational> rate;
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  nlohmann::json metadata;

  EGraph to_graph() const;
  // per-edge rates; missing rates default to 1
  std::vector<Rational> rates() const;
};

NetworkDocument parse_network(const nlohmann::json& j);
NetworkDocument parse_network_file(const std::string& path);
nlohmann::json serialize_network(const NetworkDocument& doc);

nlohmann::json inclusion_to_json(const ToricInclusion& ti);
nlohmann::json embedding_report_to_json(const EmbeddingReport& rep);
nlohmann::json equilibrium_to_json(const EquilibriumResult& res);
nlohmann::json region_certificate_to_json(const RegionCertificate& cert);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// Two-panel figure: log-space polygon/curve on the left, x-space image on
// the right.
void write_region_svg(std::ostream& os, const std::vector<Eigen::Vector2d>& log_polyline,
                      bool closed, const ToricInclusion& ti);

}  // namespace toric

#endif
