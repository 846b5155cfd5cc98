#include "toric/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace toric {

namespace {

const double kScheduleSpan = 4096.0;  // schedules wrap beyond this time

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RateSchedule::RateSchedule(ScheduleKind kind, double eps, std::uint64_t seed,
                           int num_edges)
    : kind_(kind), eps_(eps), seed_(seed), edges_(num_edges) {
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("epsilon must lie in (0,1)");
  double labs = std::abs(std::log(eps));
  for (int e = 0; e < num_edges; ++e) {
    std::mt19937_64 rng(splitmix(seed ^ (0x777 + (std::uint64_t)e)));
    EdgeData& d = edges_[e];
    switch (kind) {
      case ScheduleKind::constant:
        break;
      case ScheduleKind::piecewise_constant: {
        std::exponential_distribution<double> dwell(1.0);  // mean dwell 1.0
        std::uniform_real_distribution<double> logk(-labs, labs);
        double t = 0;
        while (t < kScheduleSpan) {
          t += dwell(rng);
          d.breakpoints.push_back(t);
          d.values.push_back(std::exp(logk(rng)));
        }
        break;
      }
      case ScheduleKind::sinusoidal: {
        std::uniform_real_distribution<double> om(0.3, 3.0), ph(0, 2 * M_PI);
        d.omega = om(rng);
        d.phase = ph(rng);
        break;
      }
      case ScheduleKind::corner_adversarial:
        break;  // stateless via hashing
    }
  }
}

double RateSchedule::value(int edge, double t) const {
  const EdgeData& d = edges_[edge];
  double labs = std::abs(std::log(eps_));
  switch (kind_) {
    case ScheduleKind::constant:
      return 1.0;
    case ScheduleKind::piecewise_constant: {
      double tt = std::fmod(std::max(t, 0.0), d.breakpoints.back());
      size_t i = std::upper_bound(d.breakpoints.begin(), d.breakpoints.end(), tt) -
                 d.breakpoints.begin();
      return d.values[std::min(i, d.values.size() - 1)];
    }
    case ScheduleKind::sinusoidal:
      return std::exp(std::sin(d.omega * t + d.phase) * labs);
    case ScheduleKind::corner_adversarial: {
      // one corner assignment per unit dwell period
      std::uint64_t period = (std::uint64_t)std::floor(std::max(t, 0.0));
      std::uint64_t bit = splitmix(seed_ ^ (period * 0x10001ULL) ^ (std::uint64_t)edge) & 1;
      return bit ? 1.0 / eps_ : eps_;
    }
  }
  return 1.0;
}

RateSchedule sample_schedule(const EGraph& g, double eps, ScheduleKind kind,
                             std::uint64_t seed) {
  return RateSchedule(kind, eps, seed, (int)g.edges.size());
}

Eigen::VectorXd rhs(const PolySystem& sys, const Eigen::VectorXd& x) {
  for (int i = 0; i < x.size(); ++i)
    if (!(x[i] > 0)) throw std::invalid_argument("rhs requires strictly positive x");
  Eigen::VectorXd X = x.array().log();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(sys.n);
  for (const auto& t : sys.terms)
    out += to_double(t.rate) * std::exp(to_eigen(t.exponent).dot(X)) * to_eigen(t.direction);
  return out;
}

QVec rhs_exact(const PolySystem& sys, const QVec& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  QVec out = zero_vec(sys.n);
  for (const auto& t : sys.terms) {
    Rational mono = t.rate;
    for (int i = 0; i < sys.n; ++i) {
      const Rational& e = t.exponent[i];
      if (denominator(e) != 1)
        throw std::invalid_argument("rhs_exact requires integer exponents");
      long p = e.convert_to<long>();
      Rational base = x[i];
      if (p < 0) {
        base = 1 / base;
        p = -p;
      }
      for (long j = 0; j < p; ++j) mono *= base;
    }
    out = add(out, scaled(t.direction, mono));
  }
  return out;
}

namespace {

// Dormand-Prince 5(4) tableau
const double A[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
const double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
const double B5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
const double B4[7] = {5179.0 / 57600, 0,           7571.0 / 16695, 393.0 / 640,
                      -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

Trajectory simulate(const EGraph& g, const RateSchedule& schedule,
                    const Eigen::VectorXd& x0, double horizon, const SimOptions& opt) {
  for (int i = 0; i < x0.size(); ++i)
    if (!(x0[i] > 0)) throw std::invalid_argument("x0 must be strictly positive");
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
  if ((int)g.edges.size() != schedule.num_edges())
    throw std::invalid_argument("schedule edge count mismatch");

  int n = g.n;
  size_t m = g.edges.size();
  std::vector<Eigen::VectorXd> src(m), dir(m);
  for (size_t e = 0; e < m; ++e) {
    src[e] = to_eigen(g.vertices[g.edges[e].first]);
    dir[e] = to_eigen(g.edge_vector((int)e));
  }
  // dX_i/dt = sum_e k_e(t) exp(X.s_e - X_i) v_{e,i}
  auto f = [&](double t, const Eigen::VectorXd& X) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (size_t e = 0; e < m; ++e) {
      double a = src[e].dot(X);
      double k = schedule.value((int)e, t);
      for (int i = 0; i < n; ++i)
        if (dir[e][i] != 0) out[i] += k * std::exp(a - X[i]) * dir[e][i];
    }
    return out;
  };

  Trajectory traj;
  auto [span, perp] = edge_space(g);
  traj.conservation_basis = perp;
  std::vector<Eigen::VectorXd> cons;
  for (const auto& c : perp) cons.push_back(to_eigen(c));
  traj.conservation_residual.assign(cons.size(), 0.0);

  Eigen::VectorXd X = x0.array().log();
  double t = 0, dt = opt.initial_step;
  traj.times.push_back(0);
  traj.states_log.push_back(X);

  Eigen::VectorXd k[7];
  while (t < horizon && traj.accepted_steps + traj.rejected_steps < opt.max_steps) {
    dt = std::min({dt, opt.max_step, horizon - t});
    k[0] = f(t, X);
    for (int s = 1; s < 7; ++s) {
      Eigen::VectorXd Xs = X;
      for (int j = 0; j < s; ++j) Xs += dt * A[s][j] * k[j];
      k[s] = f(t + C[s] * dt, Xs);
    }
    Eigen::VectorXd X5 = X, X4 = X;
    for (int s = 0; s < 7; ++s) {
      X5 += dt * B5[s] * k[s];
      X4 += dt * B4[s] * k[s];
    }
    double err = 0;
    for (int i = 0; i < n; ++i) {
      double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(X[i]), std::abs(X5[i]));
      err = std::max(err, std::abs(X5[i] - X4[i]) / sc);
    }
    if (err <= 1.0 || dt <= 1e-14 * std::max(1.0, t)) {
      if (err > 1.0 || X5.array().abs().maxCoeff() > 500) {
        traj.blow_up = true;
        traj.blow_up_time = t;
        break;
      }
      t += dt;
      X = X5;
      ++traj.accepted_steps;
      traj.times.push_back(t);
      traj.states_log.push_back(X);
      Eigen::VectorXd x = X.array().exp();
      for (size_t c = 0; c < cons.size(); ++c)
        traj.conservation_residual[c] =
            std::max(traj.conservation_residual[c], std::abs(cons[c].dot(x - x0)));
    } else {
      ++traj.rejected_steps;
    }
    double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    dt *= std::clamp(fac, 0.2, 5.0);
  }
  return traj;
}

EquilibriumResult check_vertex_balanced(const EGraph& g, const std::vector<Rational>& rates,
                                        const Eigen::VectorXd& x_bar, double tol) {
  for (int i = 0; i < x_bar.size(); ++i)
    if (!(x_bar[i] > 0)) throw std::invalid_argument("x_bar must be strictly positive");
  EquilibriumResult res;
  res.x_bar = x_bar;
  Eigen::VectorXd X = x_bar.array().log();
  size_t nv = g.vertices.size();
  std::vector<double> mono(nv);
  for (size_t v = 0; v < nv; ++v) mono[v] = std::exp(to_eigen(g.vertices[v]).dot(X));
  res.vertex_residuals.assign(nv, 0.0);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [s, t] = g.edges[e];
    double flow = to_double(rates[e]) * mono[s];
    res.vertex_residuals[s] += flow;  // outgoing
    res.vertex_residuals[t] -= flow;  // incoming
  }
  res.balanced = true;
  for (double r : res.vertex_residuals)
    if (std::abs(r) > tol) res.balanced = false;
  res.consistent = res.balanced;
  return res;
}

EquilibriumResult find_vertex_balanced(const EGraph& g, const std::vector<Rational>& rates,
                                       double tol) {
  if (!is_weakly_reversible(g))
    throw std::invalid_argument("vertex balance requires a weakly reversible graph");
  if (rates.size() != g.edges.size())
    throw std::invalid_argument("one rate per edge required");
  size_t nv = g.vertices.size();
  std::vector<int> comp = scc_components(g);
  int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;

  // strictly positive kernel of the weighted Laplacian, per linkage class
  std::vector<Rational> kernel(nv, Rational(0));
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> verts;
    for (size_t v = 0; v < nv; ++v)
      if (comp[v] == c) verts.push_back((int)v);
    std::vector<int> local(nv, -1);
    for (size_t i = 0; i < verts.size(); ++i) local[verts[i]] = (int)i;
    QMat rows(verts.size(), zero_vec((int)verts.size()));
    for (size_t e = 0; e < g.edges.size(); ++e) {
      auto [s, t] = g.edges[e];
      if (comp[s] != c) continue;
      rows[local[t]][local[s]] += rates[e];
      rows[local[s]][local[s]] -= rates[e];
    }
    QMat null = nullspace(rows, (int)verts.size());
    if (null.size() != 1)
      throw std::logic_error("Laplacian kernel not one-dimensional on a linkage class");
    QVec kv = null[0];
    bool neg = false, pos = false;
    for (const auto& x : kv) (x < 0 ? neg : pos) = true;
    if (neg && pos) throw std::logic_error("mixed-sign Laplacian kernel");
    if (neg) kv = negated(kv);
    for (const auto& x : kv)
      if (x <= 0) throw std::logic_error("non-positive Laplacian kernel entry");
    for (size_t i = 0; i < verts.size(); ++i) kernel[verts[i]] = kv[i];
  }

  EquilibriumResult res;
  res.laplacian_kernel.resize(nv);
  for (size_t v = 0; v < nv; ++v) res.laplacian_kernel[v] = to_double(kernel[v]);

  // least squares: s_v . z - alpha_{class(v)} = log kernel_v
  int n = g.n;
  Eigen::MatrixXd Amat((int)nv, n + ncomp);
  Eigen::VectorXd b((int)nv);
  Amat.setZero();
  for (size_t v = 0; v < nv; ++v) {
    Amat.block((int)v, 0, 1, n) = to_eigen(g.vertices[v]).transpose();
    Amat((int)v, n + comp[v]) = -1.0;
    b((int)v) = std::log(to_double(kernel[v]));
  }
  Eigen::VectorXd sol = Amat.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  res.ls_residual = (Amat * sol - b).lpNorm<Eigen::Infinity>();
  res.consistent = res.ls_residual <= tol;
  if (!res.consistent) {
    res.x_bar = Eigen::VectorXd();
    res.balanced = false;
    return res;
  }
  Eigen::VectorXd x_bar = sol.head(n).array().exp();
  EquilibriumResult checked = check_vertex_balanced(g, rates, x_bar, tol);
  checked.consistent = true;
  checked.ls_residual = res.ls_residual;
  checked.laplacian_kernel = res.laplacian_kernel;
  return checked;
}

std::vector<double> lyapunov_monitor(const Trajectory& traj, const Eigen::VectorXd& x_bar) {
  for (int i = 0; i < x_bar.size(); ++i)
    if (!(x_bar[i] > 0)) throw std::invalid_argument("x_bar must be strictly positive");
  std::vector<double> out;
  out.reserve(traj.times.size());
  for (size_t s = 0; s < traj.times.size(); ++s) {
    Eigen::VectorXd x = traj.state(s);
    double h = 0;
    for (int i = 0; i < x.size(); ++i)
      h += x[i] * (std::log(x[i] / x_bar[i]) - 1.0) + x_bar[i];
    out.push_back(h);
  }
  return out;
}

PersistenceReport persistence_stats(const EGraph& g, double eps, int runs, double horizon,
                                    std::uint64_t seed) {
  if (!is_weakly_reversible(g))
    throw std::invalid_argument("persistence_stats requires a weakly reversible graph");
  PersistenceReport rep;
  auto [span, perp] = edge_space(g);
  std::vector<Eigen::VectorXd> basis;
  for (const auto& v : span) {
    Eigen::VectorXd b = to_eigen(v);
    basis.push_back(b / b.norm());
  }
  for (int r = 0; r < runs; ++r) {
    std::uint64_t run_seed = seed + (std::uint64_t)r;
    PersistenceReport::Run run{run_seed, 0.0, false, ""};
    try {
      std::mt19937_64 rng(splitmix(run_seed));
      std::uniform_real_distribution<double> u(-0.4, 0.4);
      // random start on the affine invariant set through the all-ones point
      Eigen::VectorXd x0 = Eigen::VectorXd::Ones(g.n);
      for (int tries = 0; tries < 100; ++tries) {
        Eigen::VectorXd cand = Eigen::VectorXd::Ones(g.n);
        for (const auto& b : basis) cand += u(rng) * b;
        if (cand.minCoeff() > 0.05) {
          x0 = cand;
          break;
        }
      }
      RateSchedule sched(ScheduleKind::piecewise_constant, eps, run_seed,
                         (int)g.edges.size());
      Trajectory traj = simulate(g, sched, x0, horizon);
      run.blow_up = traj.blow_up;
      double mn = std::numeric_limits<double>::infinity();
      for (const auto& X : traj.states_log) mn = std::min(mn, X.minCoeff());
      run.min_coordinate = std::exp(mn);
    } catch (const std::exception& e) {
      run.error = e.what();
    }
    rep.runs.push_back(run);
  }
  return rep;
}

}  // namespace toric
