#include "graphsum/graph_of_matrices.hpp"

#include "graphsum/errors.hpp"

namespace graphsum {

const Matrix& GraphOfMatrices::matrix(const std::string& edge_id) const {
  auto e = graph.find_edge(edge_id);
  if (!e) throw InputError("unknown edge '" + edge_id + "'");
  return mats.at(*e);
}

std::size_t GraphOfMatrices::dim(const std::string& vertex_id) const {
  auto v = graph.find_vertex(vertex_id);
  if (!v) throw InputError("unknown vertex '" + vertex_id + "'");
  return dims.at(*v);
}

GraphOfMatrices with_uniform_dim(DirectedMultigraph g, std::size_t n, std::vector<Matrix> mats) {
  GraphOfMatrices gom{std::move(g), {}, std::move(mats)};
  gom.dims.assign(gom.graph.vertex_count(), n);
  return gom;
}

namespace {

std::string shape(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

}  // namespace

std::vector<Violation> validate(const GraphOfMatrices& gom) {
  std::vector<Violation> out;
  const auto& g = gom.graph;
  if (gom.dims.size() != g.vertex_count())
    out.push_back({"graph", std::to_string(gom.dims.size()) + " dimensions for " +
                                std::to_string(g.vertex_count()) + " vertices"});
  if (gom.mats.size() != g.edge_count())
    out.push_back({"graph", std::to_string(gom.mats.size()) + " matrices for " + std::to_string(g.edge_count()) +
                                " edges"});
  if (!out.empty()) return out;

  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (gom.dims[v] == 0) out.push_back({g.vertex_id(v), "dimension must be positive"});
    if (gom.dims[v] > kMaxMatrixSide)
      out.push_back({g.vertex_id(v), "dimension " + std::to_string(gom.dims[v]) + " exceeds the supported maximum " +
                                         std::to_string(kMaxMatrixSide)});
  }
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    const Matrix& m = gom.mats[e];
    const std::size_t rows = gom.dims[ed.target];
    const std::size_t cols = gom.dims[ed.source];
    if (m.rows() != rows || m.cols() != cols)
      out.push_back({ed.id, "expected " + shape(rows, cols) + " (dim " + g.vertex_id(ed.target) + " x dim " +
                                g.vertex_id(ed.source) + "), got " + shape(m.rows(), m.cols())});
  }
  return out;
}

void require_valid(const GraphOfMatrices& gom) {
  auto v = validate(gom);
  if (!v.empty()) throw InputError(v.front().subject + ": " + v.front().message);
}

double norm_product(const GraphOfMatrices& gom) {
  double p = 1.0;
  for (const auto& m : gom.mats) p *= operator_norm(m);
  return p;
}

}  // namespace graphsum
