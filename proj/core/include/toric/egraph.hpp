#ifndef TORIC_EGRAPH_HPP
#define TORIC_EGRAPH_HPP

#include <utility>
#include <vector>

#include "toric/rational.hpp"

namespace toric {

// Euclidean embedded graph: vertices are distinct points of R^n, edges are
// ordered pairs of vertex indices.
struct EGraph {
  int n = 0;
  QMat vertices;
  std::vector<std::pair<int, int>> edges;

  // Throws std::invalid_argument on duplicate labels, bad indices,
  // self-loops or duplicate edges.
  void validate() const;

  QVec edge_vector(int e) const;  // t - s
};

// One monomial term k * x^s * v of a polynomial/power-law system.
struct Term {
  QVec exponent;   // s
  QVec direction;  // v
  Rational rate;   // k > 0
};

struct PolySystem {
  int n = 0;
  std::vector<Term> terms;
};

struct CycleCover {
  // vertex-index cycles, each listed without repeating the start
  std::vector<std::vector<int>> cycles;
  // edge_weights[e] = (cycle index, fraction) pairs; fractions sum to 1
  std::vector<std::vector<std::pair<int, Rational>>> edge_weights;
};

// "Simplest" E-graph generating the given (s, v) term list: vertices
// {s_i} u {s_i + v_i}, one edge per term.
EGraph graph_from_terms(const std::vector<std::pair<QVec, QVec>>& terms);

PolySystem system_of(const EGraph& g, const std::vector<Rational>& rates);

bool is_reversible(const EGraph& g);
bool is_weakly_reversible(const EGraph& g);

// Strongly connected component index per vertex (deterministic for a fixed
// input ordering).
std::vector<int> scc_components(const EGraph& g);

// Covers every edge by a shortest directed cycle through it; weight of an
// edge split equally among the retained cycles containing it.
CycleCover cycle_cover(const EGraph& g);

// (basis of the edge span S, basis of its orthogonal complement)
std::pair<QMat, QMat> edge_space(const EGraph& g);

EGraph shift_vertices(const EGraph& g, const QVec& offset);

}  // namespace toric

#endif
