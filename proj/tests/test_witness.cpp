#include <doctest.h>

#include "graphsum/decomposition.hpp"
#include "graphsum/errors.hpp"
#include "graphsum/evaluation.hpp"
#include "graphsum/partition.hpp"
#include "graphsum/witness.hpp"
#include "oracles.hpp"

using namespace graphsum;

namespace {

DirectedMultigraph tau_graph() {
  return graph_of_partition(parse_partition("{2,4,11}{3,5,10}{6,7,8}{9,12,14,16,20}{13,15,17,18}{19,22,24}{21,23}{1}"));
}

}  // namespace

TEST_CASE("the V matrix") {
  CHECK(witness_v_matrix(1) == Matrix::from_rows({{1}}));
  const Matrix v = witness_v_matrix(4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(v(i, 0) == 0.5);
    for (std::size_t j = 1; j < 4; ++j) CHECK(v(i, j) == 0.0);
  }
  CHECK_THROWS_AS(witness_v_matrix(0), InputError);
}

TEST_CASE("witness matrices of the tau graph") {
  const DirectedMultigraph g = tau_graph();
  const GraphOfMatrices w = witness_matrices(g, 4);
  const Matrix v = witness_v_matrix(4);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const std::string& id = g.edge(e).id;
    if (id == "e1" || id == "e10") {
      CHECK(w.mats[e] == v);
    } else if (id == "e3") {
      CHECK(w.mats[e] == transpose(v));
    } else {
      CHECK(w.mats[e] == Matrix::identity(4));
    }
  }
  CHECK(graph_sum_bruteforce(w) == doctest::Approx(8.0).epsilon(1e-12));
  const OptimalityReport r = verify_optimality(g, 4);
  CHECK(r.pass);
  CHECK(r.norms_ok);
  CHECK(r.exponent == HalfInteger::from_halves(3));
  CHECK(r.target == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("simple witnesses") {
  const auto loop = build_graph({"v"}, {{"e1", "v", "v"}});
  CHECK(witness_matrices(loop, 3).mats[0] == Matrix::identity(3));
  for (std::size_t n = 1; n <= 5; ++n) {
    const OptimalityReport r = verify_optimality(loop, n);
    CHECK(r.pass);
    CHECK(r.sum == doctest::Approx(double(n)).epsilon(1e-12));
  }

  const auto edge = build_graph({"a", "b"}, {{"e1", "a", "b"}});
  CHECK(witness_matrices(edge, 3).mats[0] == Matrix(3, 3, 1.0 / 3.0));
  CHECK(verify_optimality(edge, 3).pass);

  for (int m = 2; m <= 5; ++m) {
    std::vector<std::vector<int>> blocks;
    for (int l = 1; l < m; ++l) blocks.push_back({2 * l, 2 * l + 1});
    blocks.push_back({1, 2 * m});
    const OptimalityReport r = verify_optimality(graph_of_partition(Partition(blocks)), 3);
    CHECK(r.pass);
    CHECK(r.sum == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("witnesses are optimal on random graphs") {
  oracle::Rng rng(91);
  for (int round = 0; round < 200; ++round) {
    const DirectedMultigraph g = oracle::random_multigraph(rng, 6, 8);
    for (std::size_t n = 1; n <= 4; ++n) {
      const OptimalityReport r = verify_optimality(g, n);
      CHECK(r.norms_ok);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("witnesses pin every internal index to the first basis vector") {
  oracle::Rng rng(92);
  int checked = 0;
  while (checked < 60) {
    const DirectedMultigraph g = oracle::random_connected_multigraph(rng, 6, 8);
    const Forest f = forest_of(g);
    const auto kinds = classify_leaves(f);
    std::vector<std::size_t> internal;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
      if (kinds[f.node_of_vertex[v]] == LeafKind::internal) internal.push_back(v);
    if (internal.empty()) continue;
    ++checked;
    const GraphOfMatrices w = witness_matrices(g, 3);
    const double off = oracle::naive_sum(w, [&](const std::vector<std::size_t>& a) {
      return std::any_of(internal.begin(), internal.end(), [&](std::size_t v) { return a[v] != 0; });
    });
    CHECK(off == 0.0);
  }
}
