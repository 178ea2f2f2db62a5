#include "graphsum/decomposition.hpp"

#include <algorithm>
#include <limits>

namespace graphsum {

std::string HalfInteger::to_string() const {
  if (denominator() == 1) return std::to_string(numerator());
  return std::to_string(numerator()) + "/2";
}

std::vector<std::size_t> cutting_edges(const DirectedMultigraph& g) {
  // Tarjan low-link on the undirected shadow. The tree edge is skipped by its
  // id rather than by its far endpoint, so a parallel copy still counts as a
  // back edge.
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.vertex_count();
  const auto inc = g.incidence();
  std::vector<std::size_t> order(n, kUnvisited), low(n, 0);
  std::vector<std::size_t> bridges;
  std::size_t clock = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t via_edge;  // kUnvisited for a root
    std::size_t next = 0;  // position in inc[vertex]
  };

  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    std::vector<Frame> stack{{root, kUnvisited}};
    order[root] = low[root] = clock++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < inc[f.vertex].size()) {
        std::size_t e = inc[f.vertex][f.next++];
        const Edge& ed = g.edge(e);
        if (ed.is_loop() || e == f.via_edge) continue;
        std::size_t u = other_end(ed, f.vertex);
        if (order[u] == kUnvisited) {
          order[u] = low[u] = clock++;
          stack.push_back({u, e});
        } else {
          low[f.vertex] = std::min(low[f.vertex], order[u]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        std::size_t parent = stack.back().vertex;
        low[parent] = std::min(low[parent], low[done.vertex]);
        if (low[done.vertex] > order[parent]) bridges.push_back(done.via_edge);
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

std::vector<std::vector<std::size_t>> two_edge_components(const DirectedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> is_bridge(g.edge_count(), false);
  for (std::size_t e : cutting_edges(g)) is_bridge[e] = true;
  const auto inc = g.incidence();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    seen[start] = true;
    std::vector<std::size_t> members{start};
    for (std::size_t head = 0; head < members.size(); ++head) {
      std::size_t v = members[head];
      for (std::size_t e : inc[v]) {
        if (is_bridge[e]) continue;
        std::size_t u = other_end(g.edge(e), v);
        if (!seen[u]) {
          seen[u] = true;
          members.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<std::size_t> Forest::degrees() const {
  std::vector<std::size_t> deg(nodes.size(), 0);
  for (const auto& fe : edges) {
    ++deg[fe.a];
    ++deg[fe.b];
  }
  return deg;
}

Forest forest_of(const DirectedMultigraph& g) {
  Forest f;
  f.nodes = two_edge_components(g);
  f.node_of_vertex.assign(g.vertex_count(), 0);
  for (std::size_t i = 0; i < f.nodes.size(); ++i)
    for (std::size_t v : f.nodes[i]) f.node_of_vertex[v] = i;
  for (std::size_t e : cutting_edges(g)) {
    const Edge& ed = g.edge(e);
    f.edges.push_back({f.node_of_vertex[ed.source], f.node_of_vertex[ed.target], e});
  }

  // Trees: connected components of the quotient, ordered by least node.
  const std::size_t nn = f.nodes.size();
  std::vector<std::vector<std::size_t>> adj(nn);
  for (const auto& fe : f.edges) {
    adj[fe.a].push_back(fe.b);
    adj[fe.b].push_back(fe.a);
  }
  f.tree_of_node.assign(nn, nn);
  for (std::size_t start = 0; start < nn; ++start) {
    if (f.tree_of_node[start] != nn) continue;
    std::vector<std::size_t> members{start};
    f.tree_of_node[start] = f.trees.size();
    for (std::size_t head = 0; head < members.size(); ++head)
      for (std::size_t u : adj[members[head]])
        if (f.tree_of_node[u] == nn) {
          f.tree_of_node[u] = f.trees.size();
          members.push_back(u);
        }
    std::sort(members.begin(), members.end());
    f.trees.push_back(std::move(members));
  }
  return f;
}

const char* to_string(LeafKind kind) {
  switch (kind) {
    case LeafKind::trivial_leaf:
      return "trivial_leaf";
    case LeafKind::tree_leaf:
      return "tree_leaf";
    case LeafKind::internal:
      return "internal";
  }
  return "?";
}

std::vector<LeafKind> classify_leaves(const Forest& f) {
  const auto deg = f.degrees();
  std::vector<LeafKind> kinds(f.nodes.size(), LeafKind::internal);
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    if (f.trees[f.tree_of_node[i]].size() == 1)
      kinds[i] = LeafKind::trivial_leaf;
    else if (deg[i] == 1)
      kinds[i] = LeafKind::tree_leaf;
  }
  return kinds;
}

HalfInteger exponent(const Forest& f) {
  HalfInteger r;
  for (LeafKind k : classify_leaves(f)) {
    if (k == LeafKind::trivial_leaf) r += HalfInteger::whole(1);
    if (k == LeafKind::tree_leaf) r += HalfInteger::from_halves(1);
  }
  return r;
}

HalfInteger exponent(const DirectedMultigraph& g) { return exponent(forest_of(g)); }

std::size_t input_leaf(const Forest& f, std::size_t tree) {
  // Nodes are ordered by least vertex, so the first leaf node in the tree is it.
  const auto kinds = classify_leaves(f);
  for (std::size_t node : f.trees.at(tree))
    if (kinds[node] != LeafKind::internal) return node;
  return f.trees.at(tree).front();
}

}  // namespace graphsum
