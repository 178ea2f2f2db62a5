#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graphsum/graph.hpp"
#include "graphsum/matrix.hpp"

namespace graphsum {

/// Largest matrix side accepted by validate().
inline constexpr std::size_t kMaxMatrixSide = 64;

/// A directed multigraph with a space C^{N_v} per vertex and a matrix
/// T_e : H_{s(e)} -> H_{t(e)} per edge. dims and mats are indexed by position.
struct GraphOfMatrices {
  DirectedMultigraph graph;
  std::vector<std::size_t> dims;
  std::vector<Matrix> mats;

  const Matrix& matrix(const std::string& edge_id) const;
  std::size_t dim(const std::string& vertex_id) const;
};

/// All vertices get dimension n.
GraphOfMatrices with_uniform_dim(DirectedMultigraph g, std::size_t n, std::vector<Matrix> mats);

struct Violation {
  std::string subject;  ///< edge or vertex id, or "graph"
  std::string message;
};

/// Empty when the shapes are consistent: rows = N_{t(e)}, cols = N_{s(e)}.
std::vector<Violation> validate(const GraphOfMatrices& gom);

/// Throws InputError carrying the first violation.
void require_valid(const GraphOfMatrices& gom);

/// Product of the operator norms of all edge matrices.
double norm_product(const GraphOfMatrices& gom);

}  // namespace graphsum
