#pragma once

#include <cstdint>
#include <vector>

#include "graphsum/graph_of_matrices.hpp"
#include "graphsum/partition.hpp"

namespace graphsum {

struct EvalOptions {
  /// Maximum number of index functions, i.e. product of all N_v.
  double term_cap = 1e8;
  /// Worker threads; chunks are taken over the first vertex's index.
  unsigned threads = 1;
};

/// S = sum over i: V -> [N_v] of prod_e T_e[i(t(e)), i(s(e))], by enumeration.
double graph_sum_bruteforce(const GraphOfMatrices& gom, const EvalOptions& opts = {});

/// S_pi(N) by direct summation over all j in [N]^{2m} with ker j >= pi.
double partition_sum(const std::vector<Matrix>& matrices, const Partition& pi, std::size_t n,
                     const EvalOptions& opts = {});

/// prod over leaves l of (max_{v in l} N_v)^{r(l)} times prod_e ||T_e||.
double bound(const GraphOfMatrices& gom);

}  // namespace graphsum
