#ifndef TORIC_INCLUSION_HPP
#define TORIC_INCLUSION_HPP

#include <optional>
#include <set>
#include <vector>

#include "toric/cone.hpp"
#include "toric/egraph.hpp"
#include "toric/fan.hpp"

namespace toric {

// Toric differential inclusion: a complete fan plus an uncertainty width
// delta, evaluated as a set-valued right-hand side in log coordinates.
struct ToricInclusion {
  std::optional<HyperplaneFan> fan;        // hyperplane-generated case
  std::optional<std::vector<Cone>> cones;  // explicit complete cone list
  double delta = 0;

  struct Provenance {
    EGraph graph;
    double epsilon = 0;
    double effective_epsilon = 0;  // after cycle-cover weight splitting
    // edge indices attributed to each hyperplane (parallel edge vectors)
    std::vector<std::vector<int>> hyperplane_edges;
  };
  std::optional<Provenance> provenance;

  bool hyperplane_generated() const { return fan.has_value(); }
  const std::vector<Cone>& cone_list() const;  // expands the fan on demand

 private:
  mutable std::optional<std::vector<Cone>> expanded_;
};

// Reversible construction: one hyperplane per reversible pair, orthogonal to
// the edge vector; delta = max over pairs of 2|log eps| / |edge vector|.
ToricInclusion build_reversible(const EGraph& g, double eps);

// Weakly reversible construction: hyperplanes orthogonal to all pairwise vertex
// differences within each cover cycle; eps is shrunk by the minimum
// per-edge cycle weight before the delta formula is applied.
ToricInclusion build_weakly_reversible(const EGraph& g, double eps);

// Hyperplane-generated inclusion directly from a normal list; an empty
// list (with the dimension given) yields the trivial fan {R^n}.
ToricInclusion inclusion_from_normals(const QMat& normals, double delta, int n = -1);

std::set<int> uncertainty_set(const ToricInclusion& ti, const Eigen::VectorXd& X);

// Hyperplane-distance semantics: generated by the towards-hyperplane
// normals, both signs inside the uncertainty slab.
Cone evaluate_hyperplane(const ToricInclusion& ti, const Eigen::VectorXd& X);

// Cone-distance semantics (sum of polars of all fan cones within
// delta); computed both as a sum of polars and as the polar of the
// intersection, cross-checked.
Cone evaluate_general(const ToricInclusion& ti, const Eigen::VectorXd& X);

}  // namespace toric

#endif
