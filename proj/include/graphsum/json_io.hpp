#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "graphsum/graph_of_matrices.hpp"
#include "graphsum/modification.hpp"

// Graph JSON:
//   {"vertices":[{"id":"i1","dim":4},...],
//    "edges":[{"id":"e1","source":"i1","target":"i2","matrix":<spec>},...]}
// with <spec> one of "identity", "witness_V", "witness_Vt", {"rows":[[...]]}
// or {"random":"uniform","seed":<int>}. An optional top-level "N" (or the
// caller's default) fills omitted dims; a missing matrix means "identity".

namespace graphsum {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct LoadOptions {
  std::optional<std::size_t> default_dim;
  /// Used for {"random":"uniform"} specs that carry no seed: seed = base + edge position.
  std::uint64_t seed_base = 0;
};

/// Deterministic entries uniform in [-1, 1) from a 64-bit Mersenne twister.
Matrix random_uniform_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Expands a matrix spec for an edge with the given shape. `where` prefixes errors.
Matrix matrix_from_spec(const json& spec, std::size_t rows, std::size_t cols, std::uint64_t default_seed,
                        const std::string& where);

/// Vertex ids and edges only; dims and matrix specs are ignored.
DirectedMultigraph graph_structure_from_json(const json& doc);

/// Parses the graph schema. Shape mismatches in explicit "rows" specs are kept
/// so validate() can report them; everything else throws InputError.
GraphOfMatrices graph_from_json(const json& doc, const LoadOptions& opts = {});

/// Also reads "inputs" and "outputs" (vertex ids) and "provenance" when present.
IOGraph io_graph_from_json(const json& doc, const LoadOptions& opts = {});

json to_json(const GraphOfMatrices& gom);
json to_json(const IOGraph& io);

}  // namespace graphsum
