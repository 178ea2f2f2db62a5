#pragma once

// Random instance generators and slow reference computations shared by the
// unit tests and the acceptance runner. Nothing here calls the code it checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "graphsum/graph.hpp"
#include "graphsum/graph_of_matrices.hpp"
#include "graphsum/matrix.hpp"
#include "graphsum/modification.hpp"
#include "graphsum/partition.hpp"

namespace oracle {

using graphsum::DirectedMultigraph;
using graphsum::Edge;
using graphsum::GraphOfMatrices;
using graphsum::Matrix;

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_entry(Rng& rng) { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.data()) x = uniform_entry(rng);
  return m;
}

inline std::vector<std::string> vertex_names(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t v = 0; v < n; ++v) ids.push_back("v" + std::to_string(v));
  return ids;
}

/// Arbitrary multigraph: loops, parallel and antiparallel edges all show up
/// with reasonable frequency. May be disconnected.
inline DirectedMultigraph random_multigraph(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  const std::size_t n = uniform_index(rng, 1, max_vertices);
  const std::size_t m = uniform_index(rng, 0, max_edges);
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < m; ++e) {
    const std::size_t kind = uniform_index(rng, 0, 9);
    std::size_t s = uniform_index(rng, 0, n - 1), t = uniform_index(rng, 0, n - 1);
    if (kind == 0) t = s;
    if (kind == 1 && !edges.empty()) {
      const Edge& p = edges[uniform_index(rng, 0, edges.size() - 1)];
      s = p.source;
      t = p.target;
      if (uniform_index(rng, 0, 1)) std::swap(s, t);
    }
    edges.push_back({"e" + std::to_string(e + 1), s, t});
  }
  return DirectedMultigraph(vertex_names(n), std::move(edges));
}

/// Connected multigraph: a random spanning tree plus extra edges.
inline DirectedMultigraph random_connected_multigraph(Rng& rng, std::size_t max_vertices, std::size_t max_edges) {
  const std::size_t n = uniform_index(rng, 1, max_vertices);
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::size_t u = uniform_index(rng, 0, v - 1), w = v;
    if (uniform_index(rng, 0, 1)) std::swap(u, w);
    edges.push_back({"", u, w});
  }
  const std::size_t extra = max_edges > edges.size() ? uniform_index(rng, 0, max_edges - edges.size()) : 0;
  for (std::size_t e = 0; e < extra; ++e) {
    std::size_t s = uniform_index(rng, 0, n - 1), t = uniform_index(rng, 0, n - 1);
    if (uniform_index(rng, 0, 5) == 0) t = s;
    edges.push_back({"", s, t});
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  for (std::size_t e = 0; e < edges.size(); ++e) edges[e].id = "e" + std::to_string(e + 1);
  return DirectedMultigraph(vertex_names(n), std::move(edges));
}

inline GraphOfMatrices random_gom(Rng& rng, DirectedMultigraph g, std::vector<std::size_t> dims) {
  std::vector<Matrix> mats;
  for (const Edge& e : g.edges()) mats.push_back(random_matrix(rng, dims[e.target], dims[e.source]));
  return GraphOfMatrices{std::move(g), std::move(dims), std::move(mats)};
}

inline GraphOfMatrices random_square_gom(Rng& rng, DirectedMultigraph g, std::size_t n) {
  std::vector<std::size_t> dims(g.vertex_count(), n);
  return random_gom(rng, std::move(g), std::move(dims));
}

inline graphsum::Partition random_partition(Rng& rng, int k) {
  std::vector<int> labels(static_cast<std::size_t>(k));
  for (int& x : labels) x = static_cast<int>(uniform_index(rng, 1, static_cast<std::size_t>(k)));
  std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k) + 1);
  for (int p = 0; p < k; ++p) blocks[static_cast<std::size_t>(labels[static_cast<std::size_t>(p)])].push_back(p + 1);
  std::erase_if(blocks, [](const auto& b) { return b.empty(); });
  return graphsum::Partition(std::move(blocks));
}

// ---------------------------------------------------------------------------
// Reference computations

/// Union-find connectivity of the undirected shadow with edge `skip` removed.
inline bool connected_without(const DirectedMultigraph& g, std::size_t skip, std::size_t a, std::size_t b) {
  std::vector<std::size_t> parent(g.vertex_count());
  for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (e != skip) parent[find(g.edge(e).source)] = find(g.edge(e).target);
  return find(a) == find(b);
}

/// An edge is a bridge iff deleting it separates its endpoints.
inline std::vector<std::size_t> bridges_by_deletion(const DirectedMultigraph& g) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (!connected_without(g, e, g.edge(e).source, g.edge(e).target)) out.push_back(e);
  return out;
}

/// Visits every index function i: V -> [N_v] in odometer order.
template <class F>
void for_each_assignment(const std::vector<std::size_t>& dims, F&& visit) {
  std::vector<std::size_t> a(dims.size(), 0);
  for (;;) {
    visit(a);
    std::size_t p = dims.size();
    for (;;) {
      if (p == 0) return;
      --p;
      if (++a[p] < dims[p]) break;
      a[p] = 0;
    }
  }
}

inline double term(const GraphOfMatrices& gom, const std::vector<std::size_t>& a) {
  double prod = 1.0;
  for (std::size_t e = 0; e < gom.graph.edge_count(); ++e) {
    const Edge& ed = gom.graph.edge(e);
    prod *= gom.mats[e](a[ed.target], a[ed.source]);
  }
  return prod;
}

/// The graph sum straight from its definition, with an optional filter on assignments.
inline double naive_sum(const GraphOfMatrices& gom,
                        const std::function<bool(const std::vector<std::size_t>&)>& keep = {}) {
  double s = 0.0;
  for_each_assignment(gom.dims, [&](const std::vector<std::size_t>& a) {
    if (!keep || keep(a)) s += term(gom, a);
  });
  return s;
}

inline Matrix naive_product(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline double trace(const Matrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

/// Largest singular value of a matrix with at most 3 columns: the largest root
/// of the characteristic polynomial of the 3x3 Gram matrix, via the
/// trigonometric form of the cubic.
inline double norm_by_characteristic_polynomial(const Matrix& m) {
  std::array<std::array<double, 3>, 3> g{};
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t r = 0; r < m.rows(); ++r) g[i][j] += m(r, i) * m(r, j);
  const double p1 = g[0][1] * g[0][1] + g[0][2] * g[0][2] + g[1][2] * g[1][2];
  const double q = (g[0][0] + g[1][1] + g[2][2]) / 3.0;
  const double p2 = (g[0][0] - q) * (g[0][0] - q) + (g[1][1] - q) * (g[1][1] - q) + (g[2][2] - q) * (g[2][2] - q) + 2 * p1;
  const double p = std::sqrt(p2 / 6.0);
  if (p == 0.0) return std::sqrt(std::max(q, 0.0));
  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (g[i][j] - (i == j ? q : 0.0)) / p;
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double phi = std::acos(std::clamp(det / 2.0, -1.0, 1.0)) / 3.0;
  return std::sqrt(std::max(q + 2.0 * p * std::cos(phi), 0.0));
}

/// <xi_out, T xi_in> for every basis pair, from the defining sum over all
/// index functions with the input and output indices held fixed. Inputs and
/// outputs are ordered by position, the first one most significant.
inline Matrix operator_by_definition(const graphsum::IOGraph& io) {
  auto ins = io.inputs, outs = io.outputs;
  std::sort(ins.begin(), ins.end());
  std::sort(outs.begin(), outs.end());
  auto flat = [&](const std::vector<std::size_t>& vs, const std::vector<std::size_t>& a) {
    std::size_t idx = 0;
    for (std::size_t v : vs) idx = idx * io.gom.dims[v] + a[v];
    return idx;
  };
  std::size_t rows = 1, cols = 1;
  for (std::size_t v : outs) rows *= io.gom.dims[v];
  for (std::size_t v : ins) cols *= io.gom.dims[v];
  Matrix t(rows, cols);
  for_each_assignment(io.gom.dims, [&](const std::vector<std::size_t>& a) {
    t(flat(outs, a), flat(ins, a)) += term(io.gom, a);
  });
  return t;
}

inline bool close(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

/// Absolute slack for comparisons of sums that can cancel: the sum of the
/// absolute values of all terms times `rel`.
inline double cancellation_floor(const GraphOfMatrices& gom, double rel) {
  double s = 0.0;
  for_each_assignment(gom.dims, [&](const std::vector<std::size_t>& a) { s += std::abs(term(gom, a)); });
  return rel * s;
}

}  // namespace oracle
