#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace graphsum {

struct Edge {
  std::string id;
  std::size_t source = 0;
  std::size_t target = 0;

  bool is_loop() const noexcept { return source == target; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge description by vertex ids, as accepted by build_graph.
struct EdgeSpec {
  std::string id;
  std::string source;
  std::string target;
};

/// Which end of an edge touches a vertex.
enum class EdgeEnd { source, target };

/// Directed multigraph: loops and parallel edges are allowed and never merged.
/// Vertices and edges are addressed by their position; ids are stable labels.
/// "Least vertex" everywhere in this library means least position.
class DirectedMultigraph {
 public:
  DirectedMultigraph() = default;

  /// Throws InputError on duplicate ids or dangling endpoints.
  DirectedMultigraph(std::vector<std::string> vertex_ids, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& vertex_id(std::size_t v) const { return vertex_ids_.at(v); }
  const std::vector<std::string>& vertex_ids() const noexcept { return vertex_ids_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;

  /// Edge positions incident to each vertex (a loop is listed once).
  std::vector<std::vector<std::size_t>> incidence() const;

  friend bool operator==(const DirectedMultigraph& a, const DirectedMultigraph& b) {
    return a.vertex_ids_ == b.vertex_ids_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> vertex_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
};

DirectedMultigraph build_graph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges);

/// Undirected connected components, each sorted ascending, ordered by least vertex.
std::vector<std::vector<std::size_t>> connected_components(const DirectedMultigraph& g);

/// The endpoint of edge `e` opposite to vertex `v` (v itself for a loop).
inline std::size_t other_end(const Edge& e, std::size_t v) { return e.source == v ? e.target : e.source; }

}  // namespace graphsum
