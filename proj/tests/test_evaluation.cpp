#include <doctest.h>

#include "graphsum/decomposition.hpp"
#include "graphsum/errors.hpp"
#include "graphsum/evaluation.hpp"
#include "graphsum/partition.hpp"
#include "graphsum/witness.hpp"
#include "oracles.hpp"

using namespace graphsum;

TEST_CASE("small graph sums") {
  const auto loop = build_graph({"v"}, {{"e1", "v", "v"}});
  CHECK(graph_sum_bruteforce(with_uniform_dim(loop, 3, {Matrix::identity(3)})) == 3.0);

  const auto edge = build_graph({"a", "b"}, {{"e1", "a", "b"}});
  CHECK(graph_sum_bruteforce(with_uniform_dim(edge, 2, {Matrix(2, 2, 1.0)})) == 4.0);

  const auto lonely = build_graph({"a", "b"}, {});
  CHECK(graph_sum_bruteforce(GraphOfMatrices{lonely, {3, 4}, {}}) == 12.0);
  CHECK(graph_sum_bruteforce(GraphOfMatrices{}) == 1.0);
}

TEST_CASE("cycle sums are traces of products") {
  oracle::Rng rng(61);
  for (int m = 1; m <= 5; ++m) {
    std::vector<std::string> vs;
    std::vector<EdgeSpec> es;
    for (int i = 0; i < m; ++i) vs.push_back("c" + std::to_string(i));
    // Edge l runs from c_{l+1} to c_l, so S = sum t1[c0,c1] t2[c1,c2] ... = Tr(T1 T2 ... Tm).
    for (int i = 0; i < m; ++i) es.push_back({"e" + std::to_string(i + 1), vs[(i + 1) % m], vs[i]});
    const auto g = build_graph(vs, es);
    std::vector<Matrix> mats;
    for (int i = 0; i < m; ++i) mats.push_back(oracle::random_matrix(rng, 3, 3));
    Matrix prod = Matrix::identity(3);
    for (const Matrix& t : mats) prod = oracle::naive_product(prod, t);
    CHECK(graph_sum_bruteforce(with_uniform_dim(g, 3, mats)) == doctest::Approx(oracle::trace(prod)).epsilon(1e-12));
  }
}

TEST_CASE("brute force matches the naive definition") {
  oracle::Rng rng(62);
  for (int round = 0; round < 200; ++round) {
    const DirectedMultigraph g = oracle::random_multigraph(rng, 5, 7);
    std::vector<std::size_t> dims;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) dims.push_back(oracle::uniform_index(rng, 1, 3));
    const GraphOfMatrices gom = oracle::random_gom(rng, g, dims);
    const double expected = oracle::naive_sum(gom);
    CHECK(oracle::close(graph_sum_bruteforce(gom), expected, 1e-12, oracle::cancellation_floor(gom, 1e-14)));
  }
}

TEST_CASE("threaded evaluation is deterministic") {
  oracle::Rng rng(63);
  for (int round = 0; round < 20; ++round) {
    const GraphOfMatrices gom = oracle::random_square_gom(rng, oracle::random_multigraph(rng, 5, 8), 4);
    const double one = graph_sum_bruteforce(gom);
    for (unsigned t : {2u, 3u, 8u}) {
      EvalOptions opts;
      opts.threads = t;
      CHECK(graph_sum_bruteforce(gom, opts) == one);
    }
  }
}

TEST_CASE("term cap") {
  const auto g = build_graph({"a", "b", "c"}, {});
  EvalOptions opts;
  opts.term_cap = 100;
  CHECK_THROWS_AS(graph_sum_bruteforce(GraphOfMatrices{g, {5, 5, 5}, {}}, opts), CapExceeded);
  CHECK(graph_sum_bruteforce(GraphOfMatrices{g, {4, 5, 5}, {}}, opts) == 100.0);
}

TEST_CASE("partition sums") {
  oracle::Rng rng(64);
  const Matrix t = oracle::random_matrix(rng, 3, 3);
  CHECK(partition_sum({t}, Partition({{1, 2}}), 3) == doctest::Approx(oracle::trace(t)).epsilon(1e-12));

  std::vector<Matrix> ts;
  for (int i = 0; i < 3; ++i) ts.push_back(oracle::random_matrix(rng, 3, 3));
  const Matrix p = oracle::naive_product(oracle::naive_product(ts[0], ts[1]), ts[2]);
  CHECK(partition_sum(ts, parse_partition("{2,3}{4,5}{6,1}"), 3) == doctest::Approx(oracle::trace(p)).epsilon(1e-12));

  CHECK(partition_sum({Matrix::identity(2), Matrix::identity(2)}, Partition::singletons(4), 2) == 4.0);
  CHECK_THROWS_AS(partition_sum({t}, Partition::singletons(4), 3), InputError);
  CHECK_THROWS_AS(partition_sum({t}, Partition({{1, 2}}), 2), InputError);
}

TEST_CASE("partition sums equal graph sums of the partition graph") {
  oracle::Rng rng(65);
  for (int round = 0; round < 100; ++round) {
    const int m = static_cast<int>(oracle::uniform_index(rng, 1, 4));
    const std::size_t n = oracle::uniform_index(rng, 1, 3);
    const Partition pi = oracle::random_partition(rng, 2 * m);
    std::vector<Matrix> ts;
    for (int i = 0; i < m; ++i) ts.push_back(oracle::random_matrix(rng, n, n));
    const GraphOfMatrices gom = with_uniform_dim(graph_of_partition(pi), n, ts);
    CHECK(oracle::close(partition_sum(ts, pi, n), graph_sum_bruteforce(gom), 1e-9,
                        oracle::cancellation_floor(gom, 1e-13)));
  }
}

TEST_CASE("sums factorize over disjoint unions and survive reversal") {
  oracle::Rng rng(66);
  for (int round = 0; round < 50; ++round) {
    const GraphOfMatrices a = oracle::random_square_gom(rng, oracle::random_connected_multigraph(rng, 3, 4), 3);
    const GraphOfMatrices b = oracle::random_square_gom(rng, oracle::random_connected_multigraph(rng, 3, 4), 3);
    std::vector<std::string> ids;
    for (const auto& id : a.graph.vertex_ids()) ids.push_back("a" + id);
    for (const auto& id : b.graph.vertex_ids()) ids.push_back("b" + id);
    std::vector<Edge> es;
    for (const Edge& e : a.graph.edges()) es.push_back({"a" + e.id, e.source, e.target});
    const std::size_t off = a.graph.vertex_count();
    for (const Edge& e : b.graph.edges()) es.push_back({"b" + e.id, e.source + off, e.target + off});
    std::vector<Matrix> mats = a.mats;
    mats.insert(mats.end(), b.mats.begin(), b.mats.end());
    const GraphOfMatrices u = with_uniform_dim(DirectedMultigraph(ids, es), 3, mats);
    CHECK(oracle::close(graph_sum_bruteforce(u), graph_sum_bruteforce(a) * graph_sum_bruteforce(b), 1e-12,
                        oracle::cancellation_floor(u, 1e-14)));

    // Reversing an edge and transposing its matrix is invisible to the sum.
    if (a.graph.edge_count() == 0) continue;
    const std::size_t e = oracle::uniform_index(rng, 0, a.graph.edge_count() - 1);
    std::vector<Edge> rev = a.graph.edges();
    std::swap(rev[e].source, rev[e].target);
    std::vector<Matrix> rmats = a.mats;
    rmats[e] = transpose(rmats[e]);
    const GraphOfMatrices r{DirectedMultigraph(a.graph.vertex_ids(), rev), a.dims, rmats};
    CHECK(oracle::close(graph_sum_bruteforce(r), graph_sum_bruteforce(a), 1e-12, oracle::cancellation_floor(a, 1e-14)));
  }
}

TEST_CASE("bound examples") {
  const auto tau = graph_of_partition(parse_partition("{2,4,11}{3,5,10}{6,7,8}{9,12,14,16,20}{13,15,17,18}{19,22,24}{21,23}{1}"));
  CHECK(bound(witness_matrices(tau, 4)) == doctest::Approx(8.0).epsilon(1e-12));

  const auto loop = build_graph({"v"}, {{"e1", "v", "v"}});
  CHECK(bound(with_uniform_dim(loop, 5, {Matrix::identity(5)})) == doctest::Approx(5.0).epsilon(1e-12));

  // One edge a -> b with N_a = 2, N_b = 3: the optimum over norm-one T is the
  // normalized all-ones matrix, pairing to |xi_b| |xi_a| = sqrt(6).
  const auto edge = build_graph({"a", "b"}, {{"e1", "a", "b"}});
  const GraphOfMatrices rect{edge, {2, 3}, {Matrix(3, 2, 1.0 / std::sqrt(6.0))}};
  CHECK(bound(rect) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
  CHECK(graph_sum_bruteforce(rect) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));

  // No other norm-one matrix does better.
  oracle::Rng rng(67);
  for (int round = 0; round < 200; ++round) {
    Matrix t = oracle::random_matrix(rng, 3, 2);
    const double n = operator_norm(t);
    for (double& x : t.data()) x /= n;
    CHECK(graph_sum_bruteforce(GraphOfMatrices{edge, {2, 3}, {t}}) <= std::sqrt(6.0) * (1 + 1e-12));
  }
}

TEST_CASE("the bound holds on random instances") {
  oracle::Rng rng(68);
  for (int round = 0; round < 300; ++round) {
    const DirectedMultigraph g = oracle::random_multigraph(rng, 5, 7);
    std::vector<std::size_t> dims;
    const bool square = round % 2 == 0;
    const std::size_t n = oracle::uniform_index(rng, 1, 4);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) dims.push_back(square ? n : oracle::uniform_index(rng, 1, 4));
    const GraphOfMatrices gom = oracle::random_gom(rng, g, dims);
    CHECK(std::abs(graph_sum_bruteforce(gom)) <= bound(gom) * (1 + 1e-9));
    if (square)
      CHECK(bound(gom) == doctest::Approx(std::pow(double(n), exponent(g).to_double()) * norm_product(gom)).epsilon(1e-12));
  }
}
