#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "graphsum/graph_of_matrices.hpp"

namespace graphsum {

/// Maps ids created by rewrites back to the ids they came from. Ids that were
/// never rewritten map to themselves; identity edges map to "identity@<vertex>".
struct Provenance {
  std::map<std::string, std::string> vertices;
  std::map<std::string, std::string> edges;
};

/// A graph of matrices with designated input and output vertices (positions).
struct IOGraph {
  GraphOfMatrices gom;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> outputs;
  Provenance provenance;
};

/// Flips edge `edge_id` and transposes its matrix. Throws InputError if unknown.
GraphOfMatrices reverse_edge(const GraphOfMatrices& gom, const std::string& edge_id);

/// Which edge ends at the split vertex move to the new copy. Every edge end at
/// the vertex must be listed exactly once (a loop contributes two ends).
struct EndAssignment {
  std::string edge_id;
  EdgeEnd end;
  bool move = false;
};

enum class LinkDirection { to_copy, from_copy };

/// Splits `vertex_id` into itself and a copy "<id>_split<k>" with the same
/// dimension, redistributing edge ends and linking the two by an identity edge
/// (two parallel ones when the vertex is a two-edge connected component alone).
GraphOfMatrices split_vertex(const GraphOfMatrices& gom, const std::string& vertex_id,
                             const std::vector<EndAssignment>& assignment,
                             LinkDirection direction = LinkDirection::to_copy);

/// Rewrites any valid graph of matrices into an input-output graph using only
/// reversals and splits: one input per tree, one output per further leaf.
IOGraph to_input_output(const GraphOfMatrices& gom);

/// Orients a two-edge connected graph of matrices from `v` to `w` by ear
/// attachment. Throws InputError if the graph is not two-edge connected or v == w.
IOGraph io_of_two_edge_component(const GraphOfMatrices& gom, const std::string& v, const std::string& w);

/// Empty iff `io` satisfies every input-output graph condition.
std::vector<std::string> check_io(const IOGraph& io);

}  // namespace graphsum
