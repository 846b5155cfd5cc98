#include "toric/inclusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace toric {

const std::vector<Cone>& ToricInclusion::cone_list() const {
  if (cones) return *cones;
  if (!expanded_) expanded_ = fan->all_cones();
  return *expanded_;
}

namespace {

double qnorm(const QVec& v) { return to_eigen(v).norm(); }

struct NormalAccum {
  QMat dirs;
  std::vector<std::vector<int>> edge_attr;
  // records a hyperplane orthogonal to diff, attributing edge e (or -1)
  void add(const QVec& diff, int e) {
    QVec d = primitive_up_to_sign(diff);
    auto it = std::find(dirs.begin(), dirs.end(), d);
    size_t idx;
    if (it == dirs.end()) {
      dirs.push_back(d);
      edge_attr.emplace_back();
      idx = dirs.size() - 1;
    } else {
      idx = (size_t)(it - dirs.begin());
    }
    if (e >= 0 && std::find(edge_attr[idx].begin(), edge_attr[idx].end(), e) ==
                      edge_attr[idx].end())
      edge_attr[idx].push_back(e);
  }
};

void check_eps(double eps) {
  if (!(eps > 0 && eps < 1))
    throw std::invalid_argument("epsilon must lie in (0,1)");
}

}  // namespace

ToricInclusion build_reversible(const EGraph& g, double eps) {
  check_eps(eps);
  if (!is_reversible(g)) throw std::invalid_argument("graph is not reversible");
  g.validate();
  NormalAccum acc;
  double delta = 0;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    QVec diff = g.edge_vector((int)e);
    acc.add(diff, (int)e);
    delta = std::max(delta, 2.0 * std::abs(std::log(eps)) / qnorm(diff));
  }
  if (acc.dirs.empty()) throw std::invalid_argument("graph has no edges");
  ToricInclusion ti;
  ti.fan = fan_from_hyperplanes(acc.dirs);
  // re-map attribution to the fan's deduplicated normal order
  ti.delta = delta;
  ToricInclusion::Provenance prov;
  prov.graph = g;
  prov.epsilon = eps;
  prov.effective_epsilon = eps;
  for (const auto& d : ti.fan->normal_dirs()) {
    size_t i = (size_t)(std::find(acc.dirs.begin(), acc.dirs.end(), d) - acc.dirs.begin());
    prov.hyperplane_edges.push_back(acc.edge_attr[i]);
  }
  ti.provenance = std::move(prov);
  return ti;
}

ToricInclusion build_weakly_reversible(const EGraph& g, double eps) {
  check_eps(eps);
  g.validate();
  CycleCover cover = cycle_cover(g);  // rejects non-weakly-reversible inputs
  Rational min_weight(1);
  for (const auto& ws : cover.edge_weights)
    for (const auto& [c, w] : ws) min_weight = std::min(min_weight, w);
  double eff_eps = eps * to_double(min_weight);

  NormalAccum acc;
  double delta = 0;
  for (const auto& cyc : cover.cycles) {
    for (size_t i = 0; i < cyc.size(); ++i) {
      for (size_t j = i + 1; j < cyc.size(); ++j) {
        QVec diff = sub(g.vertices[cyc[i]], g.vertices[cyc[j]]);
        acc.add(diff, -1);
        delta = std::max(delta, 2.0 * std::abs(std::log(eff_eps)) / qnorm(diff));
      }
    }
  }
  // attribute edges parallel to each hyperplane direction
  ToricInclusion ti;
  ti.fan = fan_from_hyperplanes(acc.dirs);
  ti.delta = delta;
  ToricInclusion::Provenance prov;
  prov.graph = g;
  prov.epsilon = eps;
  prov.effective_epsilon = eff_eps;
  for (const auto& d : ti.fan->normal_dirs()) {
    std::vector<int> attr;
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (primitive_up_to_sign(g.edge_vector((int)e)) == d) attr.push_back((int)e);
    prov.hyperplane_edges.push_back(attr);
  }
  ti.provenance = std::move(prov);
  return ti;
}

ToricInclusion inclusion_from_normals(const QMat& normals, double delta, int n) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  ToricInclusion ti;
  if (normals.empty()) {
    if (n <= 0) throw std::invalid_argument("dimension required for an empty normal set");
    ti.fan = empty_fan(n);
  } else {
    ti.fan = fan_from_hyperplanes(normals);
  }
  ti.delta = delta;
  return ti;
}

std::set<int> uncertainty_set(const ToricInclusion& ti, const Eigen::VectorXd& X) {
  if (!ti.hyperplane_generated())
    throw std::invalid_argument("uncertainty_set requires a hyperplane-generated fan");
  std::set<int> out;
  const auto& units = ti.fan->unit_normals();
  for (size_t i = 0; i < units.size(); ++i)
    if (std::abs(units[i].dot(X)) <= ti.delta) out.insert((int)i);
  return out;
}

Cone evaluate_hyperplane(const ToricInclusion& ti, const Eigen::VectorXd& X) {
  if (!ti.hyperplane_generated())
    throw std::invalid_argument("evaluate_hyperplane requires a hyperplane-generated fan");
  const auto& units = ti.fan->unit_normals();
  const auto& dirs = ti.fan->normal_dirs();
  QMat gens;
  for (size_t i = 0; i < units.size(); ++i) {
    double d = units[i].dot(X);
    if (std::abs(d) <= ti.delta) {
      gens.push_back(dirs[i]);
      gens.push_back(negated(dirs[i]));
    } else {
      gens.push_back(d > 0 ? negated(dirs[i]) : dirs[i]);
    }
  }
  return Cone::from_generators((int)X.size(), std::move(gens));
}

Cone evaluate_general(const ToricInclusion& ti, const Eigen::VectorXd& X) {
  const std::vector<Cone>& cones = ti.cone_list();
  QMat sum_gens;
  std::vector<const Cone*> close;
  for (const auto& c : cones) {
    if (c.project(X).distance <= ti.delta + 1e-12) close.push_back(&c);
  }
  if (close.empty()) throw std::logic_error("fan is not complete at the sample point");
  int n = (int)X.size();
  std::vector<Constraint> inter_cons;
  for (const Cone* c : close) {
    Cone pol = c->polar();
    for (const auto& g : pol.generators()) sum_gens.push_back(g);
    for (const auto& cc : c->constraints()) inter_cons.push_back(cc);
  }
  Cone via_sum = Cone::from_generators(n, std::move(sum_gens));
  Cone via_intersection = Cone::from_constraints(n, std::move(inter_cons)).polar();
  if (!via_sum.equals(via_intersection))
    throw std::logic_error("sum-of-polars and polar-of-intersection evaluations disagree");
  return via_sum;
}

}  // namespace toric
