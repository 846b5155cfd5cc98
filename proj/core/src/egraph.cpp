#include "toric/egraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace toric {

void EGraph::validate() const {
  for (const auto& v : vertices)
    if ((int)v.size() != n) throw std::invalid_argument("vertex dimension mismatch");
  for (size_t i = 0; i < vertices.size(); ++i)
    for (size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j])
        throw std::invalid_argument("duplicate vertex labels at indices " +
                                    std::to_string(i) + " and " + std::to_string(j));
  std::set<std::pair<int, int>> seen;
  for (const auto& [s, t] : edges) {
    if (s < 0 || t < 0 || s >= (int)vertices.size() || t >= (int)vertices.size())
      throw std::invalid_argument("edge references invalid vertex index");
    if (s == t) throw std::invalid_argument("self-loop at vertex " + std::to_string(s));
    if (!seen.insert({s, t}).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(s) + "," +
                                  std::to_string(t) + ")");
  }
}

QVec EGraph::edge_vector(int e) const {
  return sub(vertices[edges[e].second], vertices[edges[e].first]);
}

EGraph graph_from_terms(const std::vector<std::pair<QVec, QVec>>& terms) {
  for (size_t i = 0; i < terms.size(); ++i) {
    if (is_zero(terms[i].second))
      throw std::invalid_argument("zero direction vector in term " + std::to_string(i));
    for (size_t j = i + 1; j < terms.size(); ++j)
      if (terms[i] == terms[j])
        throw std::invalid_argument("duplicate (s,v) pair at index " + std::to_string(j));
  }
  EGraph g;
  g.n = terms.empty() ? 0 : (int)terms[0].first.size();
  std::map<QVec, int> index;
  auto vertex = [&](const QVec& p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int id = (int)g.vertices.size();
    g.vertices.push_back(p);
    index.emplace(p, id);
    return id;
  };
  for (const auto& [s, v] : terms) {
    int a = vertex(s);
    int b = vertex(add(s, v));
    g.edges.emplace_back(a, b);
  }
  g.validate();
  return g;
}

PolySystem system_of(const EGraph& g, const std::vector<Rational>& rates) {
  if (rates.size() != g.edges.size())
    throw std::invalid_argument("expected " + std::to_string(g.edges.size()) +
                                " rates, got " + std::to_string(rates.size()));
  for (size_t e = 0; e < rates.size(); ++e)
    if (rates[e] <= 0)
      throw std::invalid_argument("nonpositive rate on edge " + std::to_string(e));
  PolySystem sys;
  sys.n = g.n;
  for (size_t e = 0; e < g.edges.size(); ++e)
    sys.terms.push_back({g.vertices[g.edges[e].first], g.edge_vector((int)e), rates[e]});
  return sys;
}

bool is_reversible(const EGraph& g) {
  std::set<std::pair<int, int>> all(g.edges.begin(), g.edges.end());
  for (const auto& [s, t] : g.edges)
    if (!all.count({t, s})) return false;
  return true;
}

std::vector<int> scc_components(const EGraph& g) {
  int nv = (int)g.vertices.size();
  std::vector<std::vector<int>> adj(nv);
  for (const auto& [s, t] : g.edges) adj[s].push_back(t);

  // iterative Tarjan
  std::vector<int> comp(nv, -1), low(nv), num(nv, -1);
  std::vector<bool> on_stack(nv, false);
  std::vector<int> stk;
  int counter = 0, ncomp = 0;
  for (int root = 0; root < nv; ++root) {
    if (num[root] >= 0) continue;
    std::vector<std::pair<int, size_t>> call{{root, 0}};
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei == 0) {
        num[v] = low[v] = counter++;
        stk.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (ei < adj[v].size()) {
        int w = adj[v][ei++];
        if (num[w] < 0) {
          call.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], num[w]);
      }
      if (descended) continue;
      if (low[v] == num[v]) {
        while (true) {
          int w = stk.back();
          stk.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
      int child = v;
      call.pop_back();
      if (!call.empty()) {
        int parent = call.back().first;
        low[parent] = std::min(low[parent], low[child]);
      }
    }
  }
  return comp;
}

bool is_weakly_reversible(const EGraph& g) {
  std::vector<int> comp = scc_components(g);
  for (const auto& [s, t] : g.edges)
    if (comp[s] != comp[t]) return false;
  return true;
}

namespace {

// shortest cycle through the given edge: edge (s,t) + shortest path t -> s
std::vector<int> shortest_cycle_through(const EGraph& g, int e) {
  auto [s, t] = g.edges[e];
  int nv = (int)g.vertices.size();
  std::vector<std::vector<int>> adj(nv);
  for (const auto& [a, b] : g.edges) adj[a].push_back(b);
  std::vector<int> prev(nv, -1);
  std::deque<int> queue{t};
  std::vector<bool> seen(nv, false);
  seen[t] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == s) break;
    for (int w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      prev[w] = v;
      queue.push_back(w);
    }
  }
  if (!seen[s]) return {};
  std::vector<int> path{s};
  for (int v = s; v != t; v = prev[v]) path.push_back(prev[v]);
  std::reverse(path.begin(), path.end());  // t ... s
  // cycle as s -> t -> ... -> back to s: start at s, then the path after t
  std::vector<int> cycle{s};
  cycle.insert(cycle.end(), path.begin(), path.end() - 1);
  return cycle;  // (s, t, ..., last-before-s)
}

std::vector<int> canonical_rotation(std::vector<int> cycle) {
  auto best = cycle;
  for (size_t r = 1; r < cycle.size(); ++r) {
    std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
    if (cycle < best) best = cycle;
  }
  return best;
}

}  // namespace

CycleCover cycle_cover(const EGraph& g) {
  if (!is_weakly_reversible(g)) {
    std::vector<int> comp = scc_components(g);
    for (size_t e = 0; e < g.edges.size(); ++e)
      if (comp[g.edges[e].first] != comp[g.edges[e].second])
        throw std::invalid_argument("graph not weakly reversible: edge " +
                                    std::to_string(e) + " lies in no cycle");
  }
  CycleCover cover;
  std::map<std::vector<int>, int> cycle_index;
  std::vector<std::vector<int>> per_edge_cycles(g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) {
    std::vector<int> cyc = canonical_rotation(shortest_cycle_through(g, (int)e));
    auto [it, inserted] = cycle_index.try_emplace(cyc, (int)cover.cycles.size());
    if (inserted) cover.cycles.push_back(cyc);
  }
  // membership of each edge in each retained cycle
  cover.edge_weights.resize(g.edges.size());
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto [s, t] = g.edges[e];
    std::vector<int> containing;
    for (size_t c = 0; c < cover.cycles.size(); ++c) {
      const auto& cyc = cover.cycles[c];
      for (size_t i = 0; i < cyc.size(); ++i)
        if (cyc[i] == s && cyc[(i + 1) % cyc.size()] == t) {
          containing.push_back((int)c);
          break;
        }
    }
    if (containing.empty())
      throw std::logic_error("edge " + std::to_string(e) + " not covered");
    Rational w(1, (long)containing.size());
    for (int c : containing) cover.edge_weights[e].push_back({c, w});
  }
  return cover;
}

std::pair<QMat, QMat> edge_space(const EGraph& g) {
  QMat vecs;
  for (size_t e = 0; e < g.edges.size(); ++e) vecs.push_back(g.edge_vector((int)e));
  QMat perp = nullspace(vecs, g.n);
  QMat span = vecs;
  rref(span);
  QMat basis;
  for (const auto& row : span)
    if (!is_zero(row)) basis.push_back(primitive(row));
  return {basis, perp};
}

EGraph shift_vertices(const EGraph& g, const QVec& offset) {
  EGraph out = g;
  for (auto& v : out.vertices) v = add(v, offset);
  return out;
}

}  // namespace toric
