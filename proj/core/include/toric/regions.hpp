#ifndef TORIC_REGIONS_HPP
#define TORIC_REGIONS_HPP

#include <string>
#include <vector>

#include "toric/inclusion.hpp"

namespace toric {

// Closed polygon in log coordinates, counterclockwise, with one outward
// unit normal per segment (vertices[i] -> vertices[i+1 mod N]).
struct PolygonRegion {
  std::vector<Eigen::Vector2d> vertices;
  std::vector<Eigen::Vector2d> outward_normals;
  double tau = 0;
};

struct RegionCertificate {
  struct Subsegment {
    Eigen::Vector2d a, b;
    Eigen::Vector2d outward_normal;
    std::vector<Eigen::Vector2d> generators;  // local cone generators (unit)
    double max_dot = 0;                       // max generator . normal
  };
  std::vector<Subsegment> subsegments;
  double max_value = 0;
  bool verified = false;
  std::string note;
};

// Checks that the inclusion's flow cone never points outward anywhere on
// the polygon boundary: on each piecewise-constant subsegment every cone
// generator g must satisfy g . nu_out <= tol.
RegionCertificate verify_region(const ToricInclusion& ti, const PolygonRegion& region,
                                double tol = 1e-10);

// Angular-sweep construction of a compact invariant region at scale tau;
// retries with doubled tau up to 8 times, throwing with diagnostics if the
// verifier never passes.
PolygonRegion build_region(const ToricInclusion& ti, double tau);

enum class BoxSide { lower_left, lower_right, upper_left, upper_right };

struct SeparatingCurve {
  std::vector<Eigen::Vector2d> points;  // open polyline in log coordinates
  std::vector<Eigen::Vector2d> outward_normals;
  RegionCertificate certificate;
};

// Open polyline spanning the [-box, box]^2 window and blocking trajectories
// from crossing toward the chosen corner of log space.
SeparatingCurve build_separating_curve(const ToricInclusion& ti, double box, BoxSide side);

// Densified componentwise-exponential image of the polyline.
std::vector<Eigen::Vector2d> to_xspace(const std::vector<Eigen::Vector2d>& polyline,
                                       int samples_per_segment, bool closed = false);

}  // namespace toric

#endif
