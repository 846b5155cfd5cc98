#include "toric/cone.hpp"

#include <algorithm>
#include <stdexcept>

namespace toric {

namespace {

struct Ray {
  QVec vec;
  std::vector<bool> tight;  // per processed inequality
};

bool lex_less(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

bool tight_subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  // a subset of b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

void double_description(int n, const std::vector<Constraint>& constraints,
                        QMat& lineality_out, QMat& rays_out) {
  QMat eq_normals;
  QMat ineq;
  for (const auto& c : constraints) {
    if (is_zero(c.normal)) {
      if (c.equality) continue;  // 0 >= 0, vacuous
      continue;                  // 0 >= 0 as inequality, vacuous too
    }
    if (c.equality)
      eq_normals.push_back(c.normal);
    else
      ineq.push_back(c.normal);
  }

  QMat L;
  if (eq_normals.empty()) {
    for (int i = 0; i < n; ++i) {
      QVec e = zero_vec(n);
      e[i] = 1;
      L.push_back(e);
    }
  } else {
    L = nullspace(eq_normals, n);
  }
  std::vector<Ray> R;

  for (size_t idx = 0; idx < ineq.size(); ++idx) {
    const QVec& a = ineq[idx];

    // lineality reduction if some basis line leaves the hyperplane of a
    int hit = -1;
    for (size_t i = 0; i < L.size(); ++i)
      if (dot(a, L[i]) != 0) { hit = (int)i; break; }

    if (hit >= 0) {
      QVec l0 = L[hit];
      Rational al0 = dot(a, l0);
      if (al0 < 0) { l0 = negated(l0); al0 = -al0; }
      QMat newL;
      for (size_t i = 0; i < L.size(); ++i) {
        if ((int)i == hit) continue;
        Rational c = dot(a, L[i]) / al0;
        newL.push_back(primitive(sub(L[i], scaled(l0, c))));
      }
      for (auto& r : R) {
        Rational c = dot(a, r.vec) / al0;
        r.vec = primitive(sub(r.vec, scaled(l0, c)));
        r.tight.push_back(true);
      }
      Ray nr;
      nr.vec = primitive(l0);
      nr.tight.assign(idx, true);
      nr.tight.push_back(false);
      R.push_back(nr);
      L = newL;
      continue;
    }

    std::vector<int> sgn(R.size());
    bool any_neg = false;
    for (size_t i = 0; i < R.size(); ++i) {
      Rational d = dot(a, R[i].vec);
      sgn[i] = d > 0 ? 1 : (d < 0 ? -1 : 0);
      if (sgn[i] < 0) any_neg = true;
    }
    if (!any_neg) {
      for (size_t i = 0; i < R.size(); ++i) R[i].tight.push_back(sgn[i] == 0);
      continue;
    }

    std::vector<Ray> next;
    for (size_t i = 0; i < R.size(); ++i) {
      if (sgn[i] < 0) continue;
      Ray r = R[i];
      r.tight.push_back(sgn[i] == 0);
      next.push_back(std::move(r));
    }
    for (size_t p = 0; p < R.size(); ++p) {
      if (sgn[p] <= 0) continue;
      for (size_t q = 0; q < R.size(); ++q) {
        if (sgn[q] >= 0) continue;
        // adjacency: no third ray tight everywhere p and q are both tight
        std::vector<bool> common(idx);
        for (size_t t = 0; t < idx; ++t) common[t] = R[p].tight[t] && R[q].tight[t];
        bool adjacent = true;
        for (size_t o = 0; o < R.size(); ++o) {
          if (o == p || o == q) continue;
          if (tight_subset(common, R[o].tight)) { adjacent = false; break; }
        }
        if (!adjacent) continue;
        Rational ap = dot(a, R[p].vec);
        Rational aq = dot(a, R[q].vec);
        Ray nr;
        nr.vec = primitive(sub(scaled(R[q].vec, ap), scaled(R[p].vec, aq)));
        if (is_zero(nr.vec)) continue;
        nr.tight = common;
        nr.tight.push_back(true);
        next.push_back(std::move(nr));
      }
    }
    R = std::move(next);
  }

  lineality_out.clear();
  for (const auto& l : L) lineality_out.push_back(primitive_up_to_sign(l));
  rays_out.clear();
  for (const auto& r : R) rays_out.push_back(primitive(r.vec));

  std::sort(lineality_out.begin(), lineality_out.end(), lex_less);
  std::sort(rays_out.begin(), rays_out.end(), lex_less);
  rays_out.erase(std::unique(rays_out.begin(), rays_out.end()), rays_out.end());
}

Cone Cone::from_generators(int n, QMat generators) {
  Cone c(n);
  QMat gens;
  for (auto& g : generators)
    if (!is_zero(g)) gens.push_back(primitive(g));
  c.raw_generators_ = std::move(gens);
  return c;
}

Cone Cone::from_constraints(int n, std::vector<Constraint> constraints) {
  Cone c(n);
  for (auto& cc : constraints) {
    if (cc.normal.size() != (size_t)n)
      throw std::invalid_argument("constraint dimension mismatch");
    cc.normal = primitive(cc.normal);
  }
  c.constraints_ = std::move(constraints);
  return c;
}

Cone Cone::full_space(int n) { return from_constraints(n, {}); }

Cone Cone::origin_only(int n) { return from_generators(n, {}); }

void Cone::ensure_constraints() const {
  if (constraints_) return;
  // polar of the generated cone: DD on { y : -g.y >= 0 }
  std::vector<Constraint> polar_cons;
  for (const auto& g : *raw_generators_) polar_cons.push_back({negated(g), false});
  QMat Lp, Rp;
  double_description(n_, polar_cons, Lp, Rp);
  std::vector<Constraint> cons;
  for (const auto& r : Rp) cons.push_back({negated(r), false});
  for (const auto& l : Lp) cons.push_back({l, true});
  constraints_ = std::move(cons);
}

void Cone::ensure_canonical() const {
  if (canonical_generators_) return;
  ensure_constraints();
  QMat L, R;
  double_description(n_, *constraints_, L, R);
  QMat gens;
  for (const auto& l : L) {
    gens.push_back(l);
    gens.push_back(negated(l));
  }
  for (const auto& r : R) gens.push_back(r);
  lineality_ = std::move(L);
  extreme_rays_ = std::move(R);
  canonical_generators_ = std::move(gens);
}

const QMat& Cone::generators() const {
  ensure_canonical();
  return *canonical_generators_;
}

const std::vector<Constraint>& Cone::constraints() const {
  ensure_constraints();
  return *constraints_;
}

const QMat& Cone::lineality() const {
  ensure_canonical();
  return *lineality_;
}

const QMat& Cone::extreme_rays() const {
  ensure_canonical();
  return *extreme_rays_;
}

Cone Cone::polar() const {
  Cone p(n_);
  if (constraints_) {
    QMat gens;
    for (const auto& c : *constraints_) {
      if (c.equality) {
        gens.push_back(c.normal);
        gens.push_back(negated(c.normal));
      } else {
        gens.push_back(negated(c.normal));
      }
    }
    p.raw_generators_ = std::move(gens);
  }
  const QMat* gens = nullptr;
  if (canonical_generators_)
    gens = &*canonical_generators_;
  else if (raw_generators_)
    gens = &*raw_generators_;
  if (gens) {
    std::vector<Constraint> cons;
    for (const auto& g : *gens) cons.push_back({negated(g), false});
    p.constraints_ = std::move(cons);
  }
  if (!p.raw_generators_ && !p.constraints_) {
    ensure_constraints();
    return polar();
  }
  return p;
}

bool Cone::contains(const QVec& v) const {
  ensure_constraints();
  for (const auto& c : *constraints_) {
    Rational d = dot(c.normal, v);
    if (c.equality ? d != 0 : d < 0) return false;
  }
  return true;
}

bool Cone::contains(const Eigen::VectorXd& v, double tol) const {
  ensure_constraints();
  for (const auto& c : *constraints_) {
    Eigen::VectorXd h = to_eigen(c.normal);
    double d = h.dot(v) / h.norm();
    if (c.equality ? std::abs(d) > tol : d < -tol) return false;
  }
  return true;
}

Cone::Projection Cone::project(const Eigen::VectorXd& X) const {
  ensure_constraints();
  std::vector<Eigen::VectorXd> eqs, ineqs;
  for (const auto& c : *constraints_) {
    Eigen::VectorXd h = to_eigen(c.normal);
    h.normalize();
    (c.equality ? eqs : ineqs).push_back(h);
  }
  const double feas_tol = 1e-9 * (1.0 + X.norm());
  auto feasible = [&](const Eigen::VectorXd& p) {
    for (const auto& h : eqs)
      if (std::abs(h.dot(p)) > feas_tol) return false;
    for (const auto& h : ineqs)
      if (h.dot(p) < -feas_tol) return false;
    return true;
  };
  auto subspace_project = [&](const std::vector<const Eigen::VectorXd*>& normals) {
    if (normals.empty()) return X;
    Eigen::MatrixXd N((int)normals.size(), n_);
    for (size_t i = 0; i < normals.size(); ++i) N.row((int)i) = *normals[i];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(N, Eigen::ComputeFullV);
    double thresh = 1e-12 * svd.singularValues()(0);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > thresh) ++r;
    Eigen::MatrixXd V = svd.matrixV().leftCols(r);
    return Eigen::VectorXd(X - V * (V.transpose() * X));
  };

  size_t m = ineqs.size();
  Projection best{Eigen::VectorXd::Zero(n_), X.norm()};  // apex fallback
  bool apex_feasible = feasible(Eigen::VectorXd::Zero(n_));
  bool have = apex_feasible;
  if (m <= 16) {
    for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
      std::vector<const Eigen::VectorXd*> act;
      for (const auto& h : eqs) act.push_back(&h);
      for (size_t i = 0; i < m; ++i)
        if (mask & (size_t(1) << i)) act.push_back(&ineqs[i]);
      Eigen::VectorXd p = subspace_project(act);
      if (!feasible(p)) continue;
      double d = (X - p).norm();
      if (!have || d < best.distance) {
        best = {p, d};
        have = true;
      }
    }
    if (have) return best;
  }
  // Dykstra's alternating projections for large constraint counts
  Eigen::VectorXd p = X;
  size_t k = eqs.size() + ineqs.size();
  std::vector<Eigen::VectorXd> corr(k, Eigen::VectorXd::Zero(n_));
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd prev = p;
    size_t ci = 0;
    for (const auto& h : eqs) {
      Eigen::VectorXd y = p + corr[ci];
      Eigen::VectorXd proj = y - h.dot(y) * h;
      corr[ci] = y - proj;
      p = proj;
      ++ci;
    }
    for (const auto& h : ineqs) {
      Eigen::VectorXd y = p + corr[ci];
      double d = h.dot(y);
      Eigen::VectorXd proj = d < 0 ? Eigen::VectorXd(y - d * h) : y;
      corr[ci] = y - proj;
      p = proj;
      ++ci;
    }
    if ((p - prev).norm() < 1e-12 * (1 + p.norm())) break;
  }
  return {p, (X - p).norm()};
}

bool Cone::is_subset_of(const Cone& other) const {
  for (const auto& g : generators())
    if (!other.contains(g)) return false;
  return true;
}

bool Cone::equals(const Cone& other) const {
  return is_subset_of(other) && other.is_subset_of(*this);
}

bool Cone::is_full_space() const {
  ensure_canonical();
  return (int)lineality_->size() == n_;
}

bool Cone::is_origin_only() const {
  ensure_canonical();
  return lineality_->empty() && extreme_rays_->empty();
}

Cone sum(const Cone& a, const Cone& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("cone dimension mismatch in sum");
  QMat gens = a.generators();
  for (const auto& g : b.generators()) gens.push_back(g);
  return Cone::from_generators(a.dimension(), std::move(gens));
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("cone dimension mismatch in intersect");
  std::vector<Constraint> cons = a.constraints();
  for (const auto& c : b.constraints()) cons.push_back(c);
  return Cone::from_constraints(a.dimension(), std::move(cons));
}

}  // namespace toric
