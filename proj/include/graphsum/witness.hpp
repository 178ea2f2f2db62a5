#pragma once

#include <cstddef>

#include "graphsum/decomposition.hpp"
#include "graphsum/evaluation.hpp"
#include "graphsum/graph_of_matrices.hpp"

namespace graphsum {

/// N x N matrix with first column 1/sqrt(N), zero elsewhere.
Matrix witness_v_matrix(std::size_t n);

/// Norm-one matrices on g (all dims n) for which S = n^{r(g)}.
GraphOfMatrices witness_matrices(const DirectedMultigraph& g, std::size_t n);

struct OptimalityReport {
  double sum = 0.0;
  double target = 0.0;
  bool norms_ok = false;
  bool pass = false;
  HalfInteger exponent;
};

OptimalityReport verify_optimality(const DirectedMultigraph& g, std::size_t n, const EvalOptions& opts = {});

}  // namespace graphsum
