#include "graphsum/graph.hpp"

#include <algorithm>

#include "graphsum/errors.hpp"

namespace graphsum {

DirectedMultigraph::DirectedMultigraph(std::vector<std::string> vertex_ids, std::vector<Edge> edges)
    : vertex_ids_(std::move(vertex_ids)), edges_(std::move(edges)) {
  for (std::size_t v = 0; v < vertex_ids_.size(); ++v)
    if (!vertex_index_.emplace(vertex_ids_[v], v).second)
      throw InputError("duplicate vertex id '" + vertex_ids_[v] + "'");
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (!edge_index_.emplace(ed.id, e).second) throw InputError("duplicate edge id '" + ed.id + "'");
    if (ed.source >= vertex_ids_.size() || ed.target >= vertex_ids_.size())
      throw InputError("edge '" + ed.id + "' has a dangling endpoint");
  }
}

std::optional<std::size_t> DirectedMultigraph::find_vertex(const std::string& id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> DirectedMultigraph::find_edge(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::size_t>> DirectedMultigraph::incidence() const {
  std::vector<std::vector<std::size_t>> inc(vertex_ids_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    inc[edges_[e].source].push_back(e);
    if (!edges_[e].is_loop()) inc[edges_[e].target].push_back(e);
  }
  return inc;
}

DirectedMultigraph build_graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (!index.emplace(vertices[v], v).second) throw InputError("duplicate vertex id '" + vertices[v] + "'");
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& spec : edges) {
    auto s = index.find(spec.source);
    auto t = index.find(spec.target);
    if (s == index.end()) throw InputError("edge '" + spec.id + "': unknown source '" + spec.source + "'");
    if (t == index.end()) throw InputError("edge '" + spec.id + "': unknown target '" + spec.target + "'");
    out.push_back({spec.id, s->second, t->second});
  }
  return DirectedMultigraph(std::move(vertices), std::move(out));
}

std::vector<std::vector<std::size_t>> connected_components(const DirectedMultigraph& g) {
  const std::size_t n = g.vertex_count();
  const auto inc = g.incidence();
  std::vector<std::size_t> comp(n, n);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] != n) continue;
    std::vector<std::size_t> members{start};
    comp[start] = out.size();
    for (std::size_t head = 0; head < members.size(); ++head) {
      std::size_t v = members[head];
      for (std::size_t e : inc[v]) {
        std::size_t u = other_end(g.edge(e), v);
        if (comp[u] == n) {
          comp[u] = out.size();
          members.push_back(u);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace graphsum
