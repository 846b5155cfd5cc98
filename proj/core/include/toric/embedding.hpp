#ifndef TORIC_EMBEDDING_HPP
#define TORIC_EMBEDDING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "toric/inclusion.hpp"

namespace toric {

enum class Semantics { hyperplane, strict };

struct SamplerOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  double box_halfwidth = 0;  // 0 -> default 3*delta + 5
  double tol = 1e-9;
  int witness_cap = 32;
};

struct EmbeddingReport {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  struct Witness {
    Eigen::VectorXd X;
    std::vector<double> k;
    Eigen::VectorXd rhs;
    double residual = 0;
  };
  std::vector<Witness> witnesses;  // capped
  double max_residual = 0;
  std::uint64_t seed = 0;
  Semantics mode = Semantics::hyperplane;
  double delta = 0;
  double epsilon = 0;
};

// Certificate for the ordering/regrouping argument on one cover cycle.
struct CycleCertificate {
  std::vector<int> order;    // order[l] = cycle position named v_{l+1}
  std::vector<int> inverse;  // inverse[i] = level index of cycle position i
  std::vector<int> tie_group;  // per level; equal values mean tied projections
  bool strict = true;          // no ties
  // phi[l] = (cycle position i, sign) pairs: the formal sum
  // Phi_{l+1} = sum sign * k_i x^{s_i}
  std::vector<std::vector<std::pair<int, int>>> phi;
  bool telescoping_ok = false;
};

// Monte-Carlo witness that a single reversible edge s <-> s' stays inside
// its slab inclusion: outside the width-delta slab the dominant monomial
// fixes the sign of the right-hand side.
EmbeddingReport single_edge_certificate(const QVec& s, const QVec& sp, double eps,
                                        const SamplerOptions& opt);

// Orders the cycle's vertices by descending projection onto w.
// strict=true rejects ties; otherwise tied vertices are grouped.
CycleCertificate cycle_order(const QMat& cycle_vertices, const QVec& w, bool strict);

// Fills the Phi regrouping of the certificate and checks the telescoping
// reconstruction exactly.
void phi_decomposition(const QMat& cycle_vertices, CycleCertificate& cert);

// Evaluates every Phi_l at the point X (log coordinates) with rates k.
std::vector<double> phi_values(const QMat& cycle_vertices, const CycleCertificate& cert,
                               const Eigen::VectorXd& X, const std::vector<double>& k);

EmbeddingReport verify_embedding(const EGraph& g, double eps, Semantics mode,
                                 const SamplerOptions& opt);

// Negative control for graphs that are not weakly reversible.
EmbeddingReport counterexample_search(const EGraph& g, double eps,
                                      const SamplerOptions& opt);

// Right-hand side direction at log-point X (common positive factor removed),
// with one rate per edge.
Eigen::VectorXd rhs_direction(const EGraph& g, const Eigen::VectorXd& X,
                              const std::vector<double>& k);

}  // namespace toric

#endif
