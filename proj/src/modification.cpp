#include "graphsum/modification.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "graphsum/decomposition.hpp"
#include "graphsum/errors.hpp"

namespace graphsum {

namespace {

struct WorkEdge {
  std::string id;
  std::size_t s = 0;
  std::size_t t = 0;
  Matrix m;
};

// Mutable copy of a graph of matrices that only changes through sum-preserving
// moves: reversal with transposition, vertex copies joined by identity edges.
class WorkGraph {
 public:
  explicit WorkGraph(const GraphOfMatrices& gom) : dims(gom.dims) {
    const auto& g = gom.graph;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      vid.push_back(g.vertex_id(v));
      origin.push_back(g.vertex_id(v));
      used_vids_.insert(g.vertex_id(v));
      prov.vertices[g.vertex_id(v)] = g.vertex_id(v);
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      edges.push_back({ed.id, ed.source, ed.target, gom.mats[e]});
      used_eids_.insert(ed.id);
      prov.edges[ed.id] = ed.id;
    }
  }

  std::size_t add_copy(std::size_t v) {
    const std::string base = origin[v];
    std::string id;
    do id = base + "_split" + std::to_string(++split_count_[base]);
    while (used_vids_.contains(id));
    used_vids_.insert(id);
    vid.push_back(id);
    origin.push_back(base);
    dims.push_back(dims[v]);
    prov.vertices[id] = base;
    return vid.size() - 1;
  }

  std::size_t add_identity(std::size_t from, std::size_t to) {
    const std::string base = origin[from];
    std::string id;
    do id = base + "_link" + std::to_string(++link_count_[base]);
    while (used_eids_.contains(id));
    used_eids_.insert(id);
    edges.push_back({id, from, to, Matrix::identity(dims[from])});
    prov.edges[id] = "identity@" + base;
    return edges.size() - 1;
  }

  void reverse(std::size_t e) {
    std::swap(edges[e].s, edges[e].t);
    edges[e].m = transpose(edges[e].m);
  }

  // Directs edge e from `from` to `to`; its endpoints must be exactly these two.
  void orient(std::size_t e, std::size_t from, std::size_t to) {
    WorkEdge& ed = edges[e];
    if (ed.s == from && ed.t == to) return;
    if (ed.s == to && ed.t == from) {
      reverse(e);
      return;
    }
    throw std::logic_error("orient: edge '" + ed.id + "' does not join the given vertices");
  }

  GraphOfMatrices finish() const {
    std::vector<Edge> out;
    std::vector<Matrix> mats;
    for (const auto& e : edges) {
      out.push_back({e.id, e.s, e.t});
      mats.push_back(e.m);
    }
    return GraphOfMatrices{DirectedMultigraph(vid, std::move(out)), dims, std::move(mats)};
  }

  std::vector<std::string> vid;
  std::vector<std::string> origin;
  std::vector<std::size_t> dims;
  std::vector<WorkEdge> edges;
  Provenance prov;

 private:
  std::unordered_set<std::string> used_vids_, used_eids_;
  std::map<std::string, int> split_count_, link_count_;
};

std::size_t far_end(const WorkEdge& e, std::size_t v) { return e.s == v ? e.t : e.s; }

// Ear attachment on a two-edge connected piece given by `comp_edges`, starting
// from a breadth-first path input -> output. Only edges in `comp_edges` are
// oriented; other edges touching the piece stay where they are. Returns the
// final output vertex, which changes when the output itself has to be split.
std::size_t orient_component(WorkGraph& w, std::vector<std::size_t> comp_edges, std::size_t input,
                             std::size_t output) {
  std::sort(comp_edges.begin(), comp_edges.end());
  std::vector<char> included(w.edges.size(), 0);
  std::vector<std::size_t> active;  // edges of the current input-output graph
  std::vector<char> on_graph(w.vid.size(), 0);

  // Undirected incidence of the piece; endpoints of not-yet-included edges never move.
  std::vector<std::vector<std::size_t>> inc(w.vid.size());
  for (std::size_t e : comp_edges) {
    inc[w.edges[e].s].push_back(e);
    if (w.edges[e].s != w.edges[e].t) inc[w.edges[e].t].push_back(e);
  }

  auto grow = [&] {
    on_graph.resize(w.vid.size(), 0);
    included.resize(w.edges.size(), 0);
  };

  // Breadth-first search over unused piece edges (skipping `banned`) from
  // `start` to the first vertex satisfying `is_goal`; returns (vertices, edges).
  auto bfs = [&](std::size_t start, std::size_t banned, auto is_goal) {
    std::vector<std::size_t> parent_edge(w.vid.size(), SIZE_MAX), queue{start};
    std::vector<char> seen(w.vid.size(), 0);
    seen[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t u = queue[head];
      if (u != start && is_goal(u)) {
        std::vector<std::size_t> verts{u}, path;
        for (std::size_t cur = u; cur != start;) {
          const std::size_t e = parent_edge[cur];
          path.push_back(e);
          cur = far_end(w.edges[e], cur);
          verts.push_back(cur);
        }
        std::reverse(verts.begin(), verts.end());
        std::reverse(path.begin(), path.end());
        return std::pair{verts, path};
      }
      for (std::size_t e : inc[u]) {
        if (e == banned || included[e] || w.edges[e].s == w.edges[e].t) continue;
        const std::size_t nb = far_end(w.edges[e], u);
        if (!seen[nb]) {
          seen[nb] = 1;
          parent_edge[nb] = e;
          queue.push_back(nb);
        }
      }
    }
    throw InputError("component is not two-edge connected");
  };

  auto reaches = [&](std::size_t from, std::size_t to) {
    std::vector<std::vector<std::size_t>> out(w.vid.size());
    for (std::size_t e : active) out[w.edges[e].s].push_back(w.edges[e].t);
    std::vector<char> seen(w.vid.size(), 0);
    std::vector<std::size_t> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      if (u == to) return true;
      for (std::size_t nb : out[u])
        if (!seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
    }
    return false;
  };

  auto take = [&](const std::vector<std::size_t>& verts, const std::vector<std::size_t>& path) {
    for (std::size_t e : path) {
      included[e] = 1;
      active.push_back(e);
    }
    for (std::size_t v : verts) on_graph[v] = 1;
  };

  // Seed path.
  {
    auto [verts, path] = bfs(input, SIZE_MAX, [&](std::size_t u) { return u == output; });
    for (std::size_t i = 0; i < path.size(); ++i) w.orient(path[i], verts[i], verts[i + 1]);
    take(verts, path);
  }
  on_graph[input] = 1;

  std::size_t remaining = comp_edges.size();
  for (std::size_t e : comp_edges) remaining -= included[e];

  while (remaining > 0) {
    std::size_t e = SIZE_MAX;
    for (std::size_t cand : comp_edges)
      if (!included[cand] && (on_graph[w.edges[cand].s] || on_graph[w.edges[cand].t])) {
        e = cand;
        break;
      }
    if (e == SIZE_MAX) throw InputError("component is not connected");

    const std::size_t x = on_graph[w.edges[e].s] ? w.edges[e].s : w.edges[e].t;
    const std::size_t z = far_end(w.edges[e], x);
    std::vector<std::size_t> verts{x, z}, path{e};
    if (!on_graph[z]) {
      auto [tail_verts, tail_path] = bfs(z, e, [&](std::size_t u) { return on_graph[u] != 0; });
      verts.insert(verts.end(), tail_verts.begin() + 1, tail_verts.end());
      path.insert(path.end(), tail_path.begin(), tail_path.end());
    }
    const std::size_t y = verts.back();

    if (x != y) {
      const bool forward = reaches(x, y) || !reaches(y, x);
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (forward)
          w.orient(path[i], verts[i], verts[i + 1]);
        else
          w.orient(path[i], verts[i + 1], verts[i]);
      }
      take(verts, path);
    } else {
      // The attachment closes a cycle at x: x keeps what enters it, a fresh copy
      // takes what leaves it, and the cycle becomes a directed path x -> copy.
      const std::size_t copy = w.add_copy(x);
      grow();
      for (std::size_t a : active)
        if (w.edges[a].s == x) w.edges[a].s = copy;
      const std::size_t link = w.add_identity(x, copy);
      grow();
      included[link] = 1;
      active.push_back(link);
      for (std::size_t i = 0; i < path.size(); ++i) w.orient(path[i], verts[i], verts[i + 1]);
      WorkEdge& last = w.edges[path.back()];
      last.t = copy;
      take(verts, path);
      on_graph[copy] = 1;
      if (x == output) output = copy;
    }
    remaining -= path.size();
  }
  return output;
}

}  // namespace

GraphOfMatrices reverse_edge(const GraphOfMatrices& gom, const std::string& edge_id) {
  auto e = gom.graph.find_edge(edge_id);
  if (!e) throw InputError("reverse_edge: unknown edge '" + edge_id + "'");
  WorkGraph w(gom);
  w.reverse(*e);
  return w.finish();
}

GraphOfMatrices split_vertex(const GraphOfMatrices& gom, const std::string& vertex_id,
                             const std::vector<EndAssignment>& assignment, LinkDirection direction) {
  auto vv = gom.graph.find_vertex(vertex_id);
  if (!vv) throw InputError("split_vertex: unknown vertex '" + vertex_id + "'");
  const std::size_t v = *vv;

  // Every end at v must be assigned exactly once.
  std::map<std::pair<std::size_t, EdgeEnd>, int> ends;
  for (std::size_t e = 0; e < gom.graph.edge_count(); ++e) {
    if (gom.graph.edge(e).source == v) ends[{e, EdgeEnd::source}] = 0;
    if (gom.graph.edge(e).target == v) ends[{e, EdgeEnd::target}] = 0;
  }
  std::vector<std::pair<std::size_t, EdgeEnd>> moves;
  for (const auto& a : assignment) {
    auto e = gom.graph.find_edge(a.edge_id);
    if (!e) throw InputError("split_vertex: unknown edge '" + a.edge_id + "'");
    auto it = ends.find({*e, a.end});
    if (it == ends.end())
      throw InputError("split_vertex: edge '" + a.edge_id + "' has no " +
                       (a.end == EdgeEnd::source ? "source" : "target") + " end at '" + vertex_id + "'");
    if (++it->second > 1) throw InputError("split_vertex: end of edge '" + a.edge_id + "' assigned twice");
    if (a.move) moves.push_back({*e, a.end});
  }
  for (const auto& [key, count] : ends)
    if (count == 0)
      throw InputError("split_vertex: incomplete assignment, end of edge '" + gom.graph.edge(key.first).id +
                       "' is unassigned");

  bool alone = false;
  for (const auto& c : two_edge_components(gom.graph))
    if (c.size() == 1 && c.front() == v) alone = true;

  WorkGraph w(gom);
  const std::size_t copy = w.add_copy(v);
  for (const auto& [e, end] : moves) (end == EdgeEnd::source ? w.edges[e].s : w.edges[e].t) = copy;
  const std::size_t from = direction == LinkDirection::to_copy ? v : copy;
  const std::size_t to = direction == LinkDirection::to_copy ? copy : v;
  w.add_identity(from, to);
  if (alone) w.add_identity(from, to);
  return w.finish();
}

IOGraph io_of_two_edge_component(const GraphOfMatrices& gom, const std::string& v, const std::string& w) {
  require_valid(gom);
  auto vi = gom.graph.find_vertex(v);
  auto wi = gom.graph.find_vertex(w);
  if (!vi) throw InputError("unknown vertex '" + v + "'");
  if (!wi) throw InputError("unknown vertex '" + w + "'");
  if (*vi == *wi) throw InputError("input and output vertex must differ");
  if (connected_components(gom.graph).size() != 1 || !cutting_edges(gom.graph).empty())
    throw InputError("graph is not two-edge connected");

  WorkGraph work(gom);
  std::vector<std::size_t> all(gom.graph.edge_count());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
  const std::size_t out = orient_component(work, all, *vi, *wi);
  return IOGraph{work.finish(), {*vi}, {out}, work.prov};
}

IOGraph to_input_output(const GraphOfMatrices& gom) {
  require_valid(gom);
  const auto& g = gom.graph;
  if (g.vertex_count() == 0) throw InputError("to_input_output: graph has no vertices");

  const Forest f = forest_of(g);
  const auto kinds = classify_leaves(f);
  std::vector<char> is_cut(g.edge_count(), 0);
  for (const auto& fe : f.edges) is_cut[fe.cut_edge] = 1;

  auto piece_edges = [&](const std::vector<std::size_t>& node) {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
      if (!is_cut[e] && f.node_of_vertex[g.edge(e).source] == f.node_of_vertex[node.front()]) out.push_back(e);
    return out;
  };
  auto least_other = [](const std::vector<std::size_t>& node, std::size_t avoid) {
    for (std::size_t v : node)
      if (v != avoid) return v;
    return node.front();
  };

  WorkGraph w(gom);
  std::vector<std::size_t> inputs, outputs;

  for (std::size_t t = 0; t < f.trees.size(); ++t) {
    const auto& tree = f.trees[t];

    if (tree.size() == 1) {
      const auto& node = f.nodes[tree.front()];
      if (node.size() == 1) {
        // A lone vertex: split off an output copy carrying the loop targets.
        const std::size_t x = node.front();
        const std::size_t copy = w.add_copy(x);
        for (std::size_t e : piece_edges(node)) w.edges[e].t = copy;
        w.add_identity(x, copy);
        w.add_identity(x, copy);
        inputs.push_back(x);
        outputs.push_back(copy);
      } else {
        const std::size_t out = orient_component(w, piece_edges(node), node[0], node[1]);
        inputs.push_back(node[0]);
        outputs.push_back(out);
      }
      continue;
    }

    // Flow from the input leaf outwards fixes the direction of every cutting edge.
    const std::size_t root = input_leaf(f, t);
    std::vector<std::size_t> order{root};
    std::vector<std::size_t> parent_cut(f.nodes.size(), SIZE_MAX);
    std::vector<std::vector<std::size_t>> child_cuts(f.nodes.size());
    std::vector<char> seen(f.nodes.size(), 0);
    seen[root] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const std::size_t node = order[head];
      for (const auto& fe : f.edges) {
        if (fe.a != node && fe.b != node) continue;
        const std::size_t other = fe.a == node ? fe.b : fe.a;
        if (seen[other]) continue;
        seen[other] = 1;
        order.push_back(other);
        parent_cut[other] = fe.cut_edge;
        child_cuts[node].push_back(fe.cut_edge);
        const Edge& ed = g.edge(fe.cut_edge);
        const bool source_in_parent = f.node_of_vertex[ed.source] == node;
        const std::size_t pv = source_in_parent ? ed.source : ed.target;
        const std::size_t cv = source_in_parent ? ed.target : ed.source;
        w.orient(fe.cut_edge, pv, cv);
      }
    }

    for (std::size_t node : order) {
      const auto& members = f.nodes[node];
      auto& outs = child_cuts[node];
      std::sort(outs.begin(), outs.end());
      const bool is_root = node == root;
      const bool is_output_leaf = !is_root && kinds[node] == LeafKind::tree_leaf;
      const std::size_t chosen = outs.empty() ? SIZE_MAX : outs.front();
      std::size_t in_v = is_root ? SIZE_MAX : w.edges[parent_cut[node]].t;
      std::size_t out_v = chosen == SIZE_MAX ? SIZE_MAX : w.edges[chosen].s;

      if (members.size() == 1) {
        const std::size_t x = members.front();
        const auto loops = piece_edges(members);
        std::size_t out_final = x;
        if (!loops.empty()) {
          const std::size_t copy = w.add_copy(x);
          for (std::size_t e : outs) w.edges[e].s = copy;
          for (std::size_t e : loops) w.edges[e].t = copy;
          w.add_identity(x, copy);
          w.add_identity(x, copy);
          out_final = copy;
        }
        if (is_root) inputs.push_back(x);
        if (is_output_leaf) outputs.push_back(out_final);
        continue;
      }

      auto comp = piece_edges(members);
      if (is_root) in_v = least_other(members, out_v);
      if (is_output_leaf) out_v = least_other(members, in_v);
      if (in_v == out_v) {
        // Both roles fall on one vertex: hand the chosen outgoing cutting edge and
        // one piece edge to a copy so the identity link lies on a cycle.
        const std::size_t x = in_v;
        const std::size_t copy = w.add_copy(x);
        w.edges[chosen].s = copy;
        std::size_t moved = SIZE_MAX;
        for (std::size_t e : comp)
          if (!(w.edges[e].s == x && w.edges[e].t == x) && (w.edges[e].s == x || w.edges[e].t == x)) {
            moved = e;
            break;
          }
        if (w.edges[moved].s == x)
          w.edges[moved].s = copy;
        else
          w.edges[moved].t = copy;
        comp.push_back(w.add_identity(x, copy));
        out_v = copy;
      }
      const std::size_t out_final = orient_component(w, comp, in_v, out_v);
      if (chosen != SIZE_MAX) w.edges[chosen].s = out_final;
      if (is_root) inputs.push_back(in_v);
      if (is_output_leaf) outputs.push_back(out_final);
    }
  }

  std::sort(inputs.begin(), inputs.end());
  std::sort(outputs.begin(), outputs.end());
  return IOGraph{w.finish(), std::move(inputs), std::move(outputs), w.prov};
}

std::vector<std::string> check_io(const IOGraph& io) {
  std::vector<std::string> out;
  const auto& g = io.gom.graph;
  const std::size_t n = g.vertex_count();
  if (io.inputs.empty()) out.push_back("no input vertices");
  if (io.outputs.empty()) out.push_back("no output vertices");
  std::vector<char> is_in(n, 0), is_out(n, 0);
  for (std::size_t v : io.inputs) {
    if (v >= n) {
      out.push_back("input vertex out of range");
      return out;
    }
    is_in[v] = 1;
  }
  for (std::size_t v : io.outputs) {
    if (v >= n) {
      out.push_back("output vertex out of range");
      return out;
    }
    if (is_in[v]) out.push_back("vertex '" + g.vertex_id(v) + "' is both input and output");
    is_out[v] = 1;
  }

  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  std::vector<std::vector<std::size_t>> succ(n), pred(n);
  for (const auto& e : g.edges()) {
    ++outdeg[e.source];
    ++indeg[e.target];
    succ[e.source].push_back(e.target);
    pred[e.target].push_back(e.source);
  }

  // Kahn's algorithm; leftovers lie on or behind a directed cycle.
  {
    std::vector<std::size_t> deg = indeg, queue;
    for (std::size_t v = 0; v < n; ++v)
      if (deg[v] == 0) queue.push_back(v);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t u : succ[queue[head]])
        if (--deg[u] == 0) queue.push_back(u);
    if (queue.size() != n) out.push_back("directed cycle");
  }

  auto sweep = [&](const std::vector<char>& seeds, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<char> seen(seeds);
    std::vector<std::size_t> stack;
    for (std::size_t v = 0; v < n; ++v)
      if (seen[v]) stack.push_back(v);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t nb : adj[u])
        if (!seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
    }
    return seen;
  };
  const auto from_inputs = sweep(is_in, succ);
  const auto to_outputs = sweep(is_out, pred);

  for (std::size_t v = 0; v < n; ++v) {
    const std::string& id = g.vertex_id(v);
    if (!from_inputs[v] || !to_outputs[v]) out.push_back("vertex '" + id + "' is not on an input-output path");
    if (is_in[v] && indeg[v] > 0) out.push_back("input vertex '" + id + "' has incoming edges");
    if (is_out[v] && outdeg[v] > 0) out.push_back("output vertex '" + id + "' has outgoing edges");
    if (!is_in[v] && !is_out[v] && (indeg[v] == 0 || outdeg[v] == 0))
      out.push_back("internal vertex '" + id + "' lacks an incoming or outgoing edge");
  }
  return out;
}

}  // namespace graphsum
