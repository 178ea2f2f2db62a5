#include "graphsum/witness.hpp"

#include <cmath>

#include "graphsum/errors.hpp"

namespace graphsum {

Matrix witness_v_matrix(std::size_t n) {
  if (n < 1) throw InputError("witness_v_matrix: N must be at least 1");
  Matrix v(n, n);
  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = c;
  return v;
}

GraphOfMatrices witness_matrices(const DirectedMultigraph& g, std::size_t n) {
  if (n < 1) throw InputError("witness_matrices: N must be at least 1");
  const Forest f = forest_of(g);
  const auto kinds = classify_leaves(f);
  const Matrix v = witness_v_matrix(n);
  const Matrix vt = transpose(v);

  std::vector<Matrix> mats(g.edge_count(), Matrix::identity(n));
  for (const ForestEdge& fe : f.edges) {
    const Edge& e = g.edge(fe.cut_edge);
    const bool source_internal = kinds[f.node_of_vertex[e.source]] == LeafKind::internal;
    const bool target_internal = kinds[f.node_of_vertex[e.target]] == LeafKind::internal;
    if (source_internal && target_internal) continue;
    if (!source_internal && !target_internal) {
      // Two-leaf tree: J/N has norm one and pairs the all-ones vectors to N.
      mats[fe.cut_edge] = Matrix(n, n, 1.0 / static_cast<double>(n));
    } else {
      // T[i_t, i_s] is non-zero only when the internal-side index is the first one.
      mats[fe.cut_edge] = source_internal ? v : vt;
    }
  }
  return with_uniform_dim(g, n, std::move(mats));
}

OptimalityReport verify_optimality(const DirectedMultigraph& g, std::size_t n, const EvalOptions& opts) {
  const GraphOfMatrices w = witness_matrices(g, n);
  OptimalityReport r;
  r.exponent = exponent(g);
  r.norms_ok = true;
  for (const Matrix& m : w.mats)
    if (std::abs(operator_norm(m) - 1.0) > 1e-10) r.norms_ok = false;
  r.sum = graph_sum_bruteforce(w, opts);
  r.target = std::pow(static_cast<double>(n), r.exponent.to_double());
  r.pass = r.norms_ok && std::abs(r.sum - r.target) <= 1e-12 * r.target;
  return r;
}

}  // namespace graphsum
