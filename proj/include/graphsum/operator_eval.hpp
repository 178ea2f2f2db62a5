#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "graphsum/matrix.hpp"
#include "graphsum/modification.hpp"

namespace graphsum {

struct LevelDecomposition {
  std::size_t depth = 0;
  std::vector<std::size_t> vertex_levels;  ///< d(v) per vertex position
  std::vector<std::size_t> edge_levels;    ///< d(t(e)) per edge position
};

/// Longest directed path length from the inputs to every vertex. Throws
/// InputError if a directed cycle is found.
std::vector<std::size_t> distance_levels(const IOGraph& io);

/// Subdivides edges spanning more than one level (identity prefix segments,
/// original matrix on the last one) and lifts every output to the top level.
std::pair<IOGraph, LevelDecomposition> normalize_levels(const IOGraph& io);

struct OperatorOptions {
  /// Maximum tensor-product width at any level.
  std::size_t level_width_cap = std::size_t{1} << 20;
  /// Maximum number of entries of any intermediate dense matrix.
  std::size_t entry_cap = std::size_t{1} << 24;
};

/// T_G as a dense matrix from the tensor product of input spaces to that of the
/// output spaces, both ordered by ascending vertex position of the normalized graph.
struct GraphOperator {
  Matrix op;
  std::vector<std::string> input_order;
  std::vector<std::string> output_order;
  LevelDecomposition levels;
};

GraphOperator build_operator(const IOGraph& io, const OperatorOptions& opts = {});

/// <(x)_w xi^w, T_G (x)_v xi^v> with all-ones xi.
double graph_sum_via_operator(const IOGraph& io, const OperatorOptions& opts = {});

struct NormCheck {
  double norm_t = 0.0;
  double product_norms = 0.0;
};

NormCheck operator_norm_check(const IOGraph& io, const OperatorOptions& opts = {});

/// prod_{v in V_in u V_out} N_v^{1/2} * prod_e ||T_e||.
double io_sum_bound(const IOGraph& io);

/// L_v = sum_i |xi_i^{(x)out}><xi_i^{(x)in}| as a dim^out x dim^in matrix.
Matrix vertex_isometry(std::size_t dim, std::size_t in_degree, std::size_t out_degree);

/// Dense factors [L_0, T_1, L_1, ..., T_r, L_r] of a normalized io graph, with
/// the same slot ordering as build_operator. Intended for small instances.
std::vector<Matrix> level_factors(const IOGraph& normalized, const LevelDecomposition& levels,
                                  const OperatorOptions& opts = {});

}  // namespace graphsum
