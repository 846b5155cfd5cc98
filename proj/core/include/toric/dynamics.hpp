#ifndef TORIC_DYNAMICS_HPP
#define TORIC_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "toric/egraph.hpp"

namespace toric {

enum class ScheduleKind { constant, piecewise_constant, sinusoidal, corner_adversarial };

// Bounded time-varying edge rates, eps <= k_e(t) <= 1/eps, reproducible
// from the seed.
class RateSchedule {
 public:
  RateSchedule() = default;
  RateSchedule(ScheduleKind kind, double eps, std::uint64_t seed, int num_edges);

  double value(int edge, double t) const;
  int num_edges() const { return (int)edges_.size(); }
  double eps() const { return eps_; }
  ScheduleKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }

 private:
  ScheduleKind kind_ = ScheduleKind::constant;
  double eps_ = 0.5;
  std::uint64_t seed_ = 0;
  struct EdgeData {
    std::vector<double> breakpoints;  // piecewise: interval ends
    std::vector<double> values;
    double omega = 1, phase = 0;  // sinusoidal
  };
  std::vector<EdgeData> edges_;
};

RateSchedule sample_schedule(const EGraph& g, double eps, ScheduleKind kind,
                             std::uint64_t seed);

// RHS of the polynomial system at x > 0 (log-domain evaluation).
Eigen::VectorXd rhs(const PolySystem& sys, const Eigen::VectorXd& x);
// Exact rational RHS; requires integer exponent vectors.
QVec rhs_exact(const PolySystem& sys, const QVec& x);

struct SimOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double initial_step = 1e-3;
  double max_step = 1.0;
  std::uint64_t max_steps = 50'000'000;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states_log;  // X(t) = log x(t)
  std::vector<double> conservation_residual;  // max |c.(x - x0)| per basis vector
  QMat conservation_basis;
  std::uint64_t accepted_steps = 0, rejected_steps = 0;
  bool blow_up = false;
  double blow_up_time = 0;

  Eigen::VectorXd state(size_t i) const { return states_log[i].array().exp(); }
};

Trajectory simulate(const EGraph& g, const RateSchedule& schedule,
                    const Eigen::VectorXd& x0, double horizon,
                    const SimOptions& opt = {});

struct EquilibriumResult {
  Eigen::VectorXd x_bar;
  std::vector<double> vertex_residuals;
  bool balanced = false;
  bool consistent = false;
  double ls_residual = 0;
  std::vector<double> laplacian_kernel;  // per vertex, x_bar^{s_v} target
};

EquilibriumResult check_vertex_balanced(const EGraph& g, const std::vector<Rational>& rates,
                                        const Eigen::VectorXd& x_bar, double tol = 1e-9);

EquilibriumResult find_vertex_balanced(const EGraph& g, const std::vector<Rational>& rates,
                                       double tol = 1e-9);

// Classical entropy-like Lyapunov values h(x(t)) relative to x_bar.
std::vector<double> lyapunov_monitor(const Trajectory& traj, const Eigen::VectorXd& x_bar);

struct PersistenceReport {
  struct Run {
    std::uint64_t seed;
    double min_coordinate;  // min_i inf_t x_i(t)
    bool blow_up;
    std::string error;
  };
  std::vector<Run> runs;
};

PersistenceReport persistence_stats(const EGraph& g, double eps, int runs, double horizon,
                                    std::uint64_t seed);

}  // namespace toric

#endif
