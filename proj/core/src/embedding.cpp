#include "toric/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace toric {

namespace {

double default_halfwidth(const SamplerOptions& opt, double delta) {
  return opt.box_halfwidth > 0 ? opt.box_halfwidth : 3 * delta + 5;
}

// polar generator directions (unit) of the piecewise-constant cone for one
// uncertainty signature; cached by the caller
std::vector<Eigen::VectorXd> polar_unit_generators(const QMat& dirs,
                                                   const std::vector<int>& signature) {
  int n = (int)dirs[0].size();
  QMat gens;
  for (size_t i = 0; i < dirs.size(); ++i) {
    if (signature[i] == 0) {
      gens.push_back(dirs[i]);
      gens.push_back(negated(dirs[i]));
    } else {
      gens.push_back(signature[i] > 0 ? negated(dirs[i]) : dirs[i]);
    }
  }
  Cone cone = Cone::from_generators(n, std::move(gens));
  std::vector<Eigen::VectorXd> out;
  Cone pol = cone.polar();
  for (const auto& d : pol.generators()) {
    Eigen::VectorXd u = to_eigen(d);
    out.push_back(u / u.norm());
  }
  return out;
}

struct MembershipChecker {
  const ToricInclusion& ti;
  Semantics mode;
  std::map<std::vector<int>, std::vector<Eigen::VectorXd>> cache;

  // residual of y against the cone at X; <= tol means membership
  double residual(const Eigen::VectorXd& X, const Eigen::VectorXd& y) {
    double ny = y.norm();
    if (ny < 1e-300) return 0.0;
    std::vector<int> sig = signature_at(X);
    auto it = cache.find(sig);
    if (it == cache.end()) {
      std::vector<Eigen::VectorXd> polar;
      if (mode == Semantics::hyperplane) {
        polar = polar_unit_generators(ti.fan->normal_dirs(), sig);
      } else {
        Cone pol = evaluate_general(ti, X).polar();
        for (const auto& d : pol.generators()) {
          Eigen::VectorXd u = to_eigen(d);
          polar.push_back(u / u.norm());
        }
      }
      it = cache.emplace(std::move(sig), std::move(polar)).first;
    }
    double r = 0;
    Eigen::VectorXd yn = y / ny;
    for (const auto& d : it->second) r = std::max(r, yn.dot(d));
    return r;
  }

  std::vector<int> signature_at(const Eigen::VectorXd& X) const {
    const auto& units = ti.fan->unit_normals();
    std::vector<int> sig(units.size());
    for (size_t i = 0; i < units.size(); ++i) {
      double d = units[i].dot(X);
      sig[i] = std::abs(d) <= ti.delta ? 0 : (d > 0 ? 1 : -1);
    }
    if (mode == Semantics::strict) {
      // strict (cone-distance) signatures can be finer near low-dimensional
      // cones, so key on the set of near cones instead
      std::vector<int> key = sig;
      const auto& cones = ti.cone_list();
      for (size_t c = 0; c < cones.size(); ++c)
        key.push_back(cones[c].project(X).distance <= ti.delta + 1e-12 ? 1 : 0);
      return key;
    }
    return sig;
  }
};

}  // namespace

Eigen::VectorXd rhs_direction(const EGraph& g, const Eigen::VectorXd& X,
                              const std::vector<double>& k) {
  int n = g.n;
  size_t m = g.edges.size();
  double amax = -std::numeric_limits<double>::infinity();
  std::vector<double> a(m);
  for (size_t e = 0; e < m; ++e) {
    a[e] = std::log(k[e]) + to_eigen(g.vertices[g.edges[e].first]).dot(X);
    amax = std::max(amax, a[e]);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (size_t e = 0; e < m; ++e)
    y += std::exp(a[e] - amax) * to_eigen(g.edge_vector((int)e));
  return y;
}

EmbeddingReport single_edge_certificate(const QVec& s, const QVec& sp, double eps,
                                   const SamplerOptions& opt) {
  if (s == sp) throw std::invalid_argument("s and s' must differ");
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  Eigen::VectorXd d = to_eigen(sub(sp, s));
  double len = d.norm();
  double delta = 2.0 * std::abs(std::log(eps)) / len;
  double hw = default_halfwidth(opt, delta);
  int n = (int)s.size();

  EmbeddingReport rep;
  rep.seed = opt.seed;
  rep.mode = Semantics::hyperplane;
  rep.delta = delta;
  rep.epsilon = eps;
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> box(-hw, hw);

  const double two_abs_log_eps = 2.0 * std::abs(std::log(eps));
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    Eigen::VectorXd X(n);
    for (int j = 0; j < n; ++j) X[j] = box(rng);
    ++rep.samples;
    double proj = X.dot(d);          // X . (s'-s)
    double dist = std::abs(proj) / len;
    if (dist <= delta) continue;  // uncertainty slab: RHS collinear by form
    // outside the slab the worst rate corner must still be dominated:
    // (1/eps) x^s < eps x^{s'} in log space is |X.(s'-s)| > 2|log eps|
    double margin = std::abs(proj) - two_abs_log_eps;
    rep.max_residual = std::max(rep.max_residual, -margin);
    if (margin <= 0) {
      ++rep.violations;
      if ((int)rep.witnesses.size() < opt.witness_cap)
        rep.witnesses.push_back({X, {1.0 / eps, eps}, proj * d / d.squaredNorm(), -margin});
    }
  }
  return rep;
}

CycleCertificate cycle_order(const QMat& cycle_vertices, const QVec& w, bool strict) {
  if (is_zero(w)) throw std::invalid_argument("direction w must be nonzero");
  int r = (int)cycle_vertices.size();
  std::vector<Rational> proj(r);
  for (int i = 0; i < r; ++i) proj[i] = dot(cycle_vertices[i], w);

  CycleCertificate cert;
  cert.order.resize(r);
  for (int i = 0; i < r; ++i) cert.order[i] = i;
  std::stable_sort(cert.order.begin(), cert.order.end(),
                   [&](int a, int b) { return proj[a] > proj[b]; });

  cert.tie_group.assign(r, 0);
  int group = 0;
  for (int l = 1; l < r; ++l) {
    if (proj[cert.order[l]] == proj[cert.order[l - 1]]) {
      cert.strict = false;
      if (strict)
        throw std::invalid_argument(
            "tied projections between cycle positions " +
            std::to_string(cert.order[l - 1]) + " and " + std::to_string(cert.order[l]));
    } else {
      ++group;
    }
    cert.tie_group[l] = group;
  }
  cert.inverse.resize(r);
  for (int l = 0; l < r; ++l) cert.inverse[cert.order[l]] = l;
  return cert;
}

void phi_decomposition(const QMat& cycle_vertices, CycleCertificate& cert) {
  int r = (int)cycle_vertices.size();
  if ((int)cert.order.size() != r)
    throw std::invalid_argument("ordering length does not match the cycle");
  cert.phi.assign(std::max(0, r - 1), {});
  for (int i = 0; i < r; ++i) {
    int p = cert.inverse[i];
    int q = cert.inverse[(i + 1) % r];
    if (q > p)
      for (int l = p; l < q; ++l) cert.phi[l].push_back({i, +1});
    else
      for (int l = q; l < p; ++l) cert.phi[l].push_back({i, -1});
  }
  // per-level sign balance
  for (const auto& terms : cert.phi) {
    int pos = 0, neg = 0;
    for (const auto& [i, sgn] : terms) (sgn > 0 ? pos : neg)++;
    if (pos != neg || pos == 0)
      throw std::logic_error("unbalanced Phi level in cycle regrouping");
  }
  // exact telescoping reconstruction: each edge difference must equal the
  // signed sum of its levels' (v_{l+1} - v_l)
  cert.telescoping_ok = true;
  int n = (int)cycle_vertices[0].size();
  for (int i = 0; i < r; ++i) {
    QVec acc = zero_vec(n);
    for (int l = 0; l + 1 < r; ++l) {
      int sgn = 0;
      for (const auto& [ei, s] : cert.phi[l])
        if (ei == i) sgn = s;
      if (sgn == 0) continue;
      QVec step = sub(cycle_vertices[cert.order[l + 1]], cycle_vertices[cert.order[l]]);
      acc = add(acc, scaled(step, Rational(sgn)));
    }
    QVec expect = sub(cycle_vertices[(i + 1) % r], cycle_vertices[i]);
    if (acc != expect) {
      cert.telescoping_ok = false;
      throw std::logic_error("telescoping reconstruction mismatch at edge " +
                             std::to_string(i));
    }
  }
}

std::vector<double> phi_values(const QMat& cycle_vertices, const CycleCertificate& cert,
                               const Eigen::VectorXd& X, const std::vector<double>& k) {
  std::vector<double> out;
  for (const auto& terms : cert.phi) {
    double amax = -std::numeric_limits<double>::infinity();
    for (const auto& [i, sgn] : terms)
      amax = std::max(amax, std::log(k[i]) + to_eigen(cycle_vertices[i]).dot(X));
    double v = 0;
    for (const auto& [i, sgn] : terms)
      v += sgn * std::exp(std::log(k[i]) + to_eigen(cycle_vertices[i]).dot(X) - amax);
    out.push_back(v);  // common positive factor e^{amax} removed
  }
  return out;
}

namespace {

EmbeddingReport sampled_check(const EGraph& g, const ToricInclusion& ti, double eps,
                              Semantics mode, const SamplerOptions& opt) {
  EmbeddingReport rep;
  rep.seed = opt.seed;
  rep.mode = mode;
  rep.delta = ti.delta;
  rep.epsilon = eps;
  size_t m = g.edges.size();
  if (m == 0) {
    rep.samples = 0;
    return rep;
  }
  MembershipChecker checker{ti, mode, {}};
  std::mt19937_64 rng(opt.seed);
  double hw = default_halfwidth(opt, ti.delta);
  std::uniform_real_distribution<double> box(-hw, hw);
  double labs = std::abs(std::log(eps));
  std::uniform_real_distribution<double> logk(-labs, labs);

  std::uint64_t corners = m <= 12 ? (std::uint64_t(1) << m) : 0;
  std::vector<double> k(m);
  for (std::uint64_t i = 0; i < opt.samples; ++i) {
    Eigen::VectorXd X(g.n);
    for (int j = 0; j < g.n; ++j) X[j] = box(rng);
    std::uint64_t choice = corners ? i % (corners + 1) : corners;
    if (corners && choice < corners) {
      for (size_t e = 0; e < m; ++e)
        k[e] = (choice >> e) & 1 ? 1.0 / eps : eps;
    } else {
      for (size_t e = 0; e < m; ++e) k[e] = std::exp(logk(rng));
    }
    Eigen::VectorXd y = rhs_direction(g, X, k);
    double res = checker.residual(X, y);
    rep.max_residual = std::max(rep.max_residual, res);
    ++rep.samples;
    if (res > opt.tol) {
      ++rep.violations;
      if ((int)rep.witnesses.size() < opt.witness_cap)
        rep.witnesses.push_back({X, k, y, res});
    }
  }
  return rep;
}

}  // namespace

EmbeddingReport verify_embedding(const EGraph& g, double eps, Semantics mode,
                                 const SamplerOptions& opt) {
  if (!is_weakly_reversible(g))
    throw std::invalid_argument("verify_embedding requires a weakly reversible graph");
  if (g.edges.empty()) {
    EmbeddingReport rep;
    rep.seed = opt.seed;
    rep.mode = mode;
    rep.epsilon = eps;
    return rep;
  }
  ToricInclusion ti = build_weakly_reversible(g, eps);
  return sampled_check(g, ti, eps, mode, opt);
}

EmbeddingReport counterexample_search(const EGraph& g, double eps,
                                      const SamplerOptions& opt) {
  if (is_weakly_reversible(g) && !g.edges.empty())
    throw std::invalid_argument(
        "graph is weakly reversible; use verify_embedding instead");
  if (g.edges.empty()) {
    EmbeddingReport rep;
    rep.seed = opt.seed;
    rep.epsilon = eps;
    return rep;
  }
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  QMat normals;
  double delta = 0;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    QVec v = g.edge_vector((int)e);
    normals.push_back(v);
    delta = std::max(delta, 2.0 * std::abs(std::log(eps)) / to_eigen(v).norm());
  }
  ToricInclusion ti = inclusion_from_normals(normals, delta);
  return sampled_check(g, ti, eps, Semantics::hyperplane, opt);
}

}  // namespace toric
