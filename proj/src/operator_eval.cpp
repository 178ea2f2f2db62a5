#include "graphsum/operator_eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "graphsum/errors.hpp"
#include "graphsum/kernels.hpp"

namespace graphsum {

namespace {

constexpr std::size_t kUnreached = SIZE_MAX;

std::size_t checked_product(const std::vector<std::size_t>& dims, std::size_t cap, const std::string& what) {
  std::size_t p = 1;
  for (std::size_t d : dims) {
    if (d != 0 && p > cap / d) throw CapExceeded(what + " exceeds the cap of " + std::to_string(cap));
    p *= d;
  }
  if (p > cap) throw CapExceeded(what + " exceeds the cap of " + std::to_string(cap));
  return p;
}

// Rows of `r` are indexed by a multi-index over `in_slots` (first slot most
// significant), each slot tied to a vertex. Produces the matrix whose rows are
// indexed by `out_slots`: a row is copied when all slots of each vertex agree,
// which is the action of the tensor product of the vertex partial isometries.
Matrix apply_vertex_map(const Matrix& r, const std::vector<std::size_t>& in_slots,
                        const std::vector<std::size_t>& out_slots, const std::vector<std::size_t>& dims,
                        const OperatorOptions& opts) {
  std::vector<std::size_t> vertices(in_slots);
  vertices.insert(vertices.end(), out_slots.begin(), out_slots.end());
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  auto strides = [&](const std::vector<std::size_t>& slots) {
    std::vector<std::size_t> s(slots.size(), 1);
    for (std::size_t j = slots.size(); j-- > 1;) s[j - 1] = s[j] * dims[slots[j]];
    return s;
  };
  std::vector<std::size_t> out_dims;
  for (std::size_t v : out_slots) out_dims.push_back(dims[v]);
  const std::size_t out_width = checked_product(out_dims, opts.level_width_cap, "level width");
  checked_product({out_width, r.cols()}, opts.entry_cap, "operator size");

  const auto in_stride = strides(in_slots);
  const auto out_stride = strides(out_slots);
  Matrix out(out_width, r.cols());

  std::vector<std::size_t> value(dims.size(), 0);
  for (;;) {
    std::size_t in_row = 0, out_row = 0;
    for (std::size_t j = 0; j < in_slots.size(); ++j) in_row += value[in_slots[j]] * in_stride[j];
    for (std::size_t j = 0; j < out_slots.size(); ++j) out_row += value[out_slots[j]] * out_stride[j];
    std::copy(r.row(in_row).begin(), r.row(in_row).end(), out.row(out_row).begin());
    std::size_t pos = vertices.size();
    for (;;) {
      if (pos == 0) return out;
      --pos;
      if (++value[vertices[pos]] < dims[vertices[pos]]) break;
      value[vertices[pos]] = 0;
    }
  }
}

// Applies `a` to tensor slot `slot`; slot_dims is updated to the new shape.
Matrix apply_edge(const Matrix& r, std::vector<std::size_t>& slot_dims, std::size_t slot, const Matrix& a,
                  const OperatorOptions& opts) {
  std::size_t pre = 1, post = r.cols();
  for (std::size_t j = 0; j < slot; ++j) pre *= slot_dims[j];
  for (std::size_t j = slot + 1; j < slot_dims.size(); ++j) post *= slot_dims[j];
  const std::size_t n_in = slot_dims[slot];
  const std::size_t n_out = a.rows();
  slot_dims[slot] = n_out;
  checked_product(slot_dims, opts.level_width_cap, "level width");
  const std::size_t rows = checked_product({pre, n_out, post / r.cols()}, opts.level_width_cap, "level width");
  checked_product({rows, r.cols()}, opts.entry_cap, "operator size");

  Matrix out(rows, r.cols());
  const auto src = r.data();
  auto dst = out.data();
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t b = 0; b < n_out; ++b) {
      auto target = dst.subspan((p * n_out + b) * post, post);
      for (std::size_t i = 0; i < n_in; ++i) {
        const double c = a(b, i);
        if (c != 0.0) kernels::axpy(c, src.subspan((p * n_in + i) * post, post), target);
      }
    }
  return out;
}

struct Layers {
  std::vector<std::vector<std::size_t>> edges;  // E_1..E_r at positions 1..r
  std::vector<std::size_t> inputs, outputs;
};

Layers layers_of(const IOGraph& io, const LevelDecomposition& lev) {
  Layers l;
  l.edges.resize(lev.depth + 1);
  for (std::size_t e = 0; e < lev.edge_levels.size(); ++e) l.edges[lev.edge_levels[e]].push_back(e);
  l.inputs = io.inputs;
  l.outputs = io.outputs;
  std::sort(l.inputs.begin(), l.inputs.end());
  std::sort(l.outputs.begin(), l.outputs.end());
  return l;
}

std::vector<std::size_t> sources_of(const DirectedMultigraph& g, const std::vector<std::size_t>& edges) {
  std::vector<std::size_t> v;
  for (std::size_t e : edges) v.push_back(g.edge(e).source);
  return v;
}

std::vector<std::size_t> targets_of(const DirectedMultigraph& g, const std::vector<std::size_t>& edges) {
  std::vector<std::size_t> v;
  for (std::size_t e : edges) v.push_back(g.edge(e).target);
  return v;
}

void require_io(const IOGraph& io) {
  const auto problems = check_io(io);
  if (!problems.empty()) throw InputError("not an input-output graph: " + problems.front());
}

}  // namespace

std::vector<std::size_t> distance_levels(const IOGraph& io) {
  const auto& g = io.gom.graph;
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : g.edges()) {
    ++indeg[e.target];
    succ[e.source].push_back(e.target);
  }
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0) order.push_back(v);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::size_t u : succ[order[head]])
      if (--indeg[u] == 0) order.push_back(u);
  if (order.size() != n) throw InputError("distance_levels: directed cycle");

  std::vector<std::size_t> d(n, kUnreached);
  for (std::size_t v : io.inputs) d.at(v) = 0;
  for (std::size_t v : order) {
    if (d[v] == kUnreached) continue;
    for (std::size_t u : succ[v])
      if (d[u] == kUnreached || d[u] < d[v] + 1) d[u] = d[v] + 1;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (d[v] == kUnreached) throw InputError("distance_levels: vertex '" + g.vertex_id(v) + "' is not reachable");
  return d;
}

std::pair<IOGraph, LevelDecomposition> normalize_levels(const IOGraph& io) {
  require_io(io);
  const auto& g = io.gom.graph;
  auto level = distance_levels(io);
  std::size_t depth = 0;
  for (std::size_t v : io.outputs) depth = std::max(depth, level[v]);
  for (std::size_t v : io.outputs) level[v] = depth;

  std::vector<std::string> vids = g.vertex_ids();
  std::vector<std::size_t> dims = io.gom.dims;
  std::vector<Edge> edges = g.edges();
  std::vector<Matrix> mats = io.gom.mats;
  Provenance prov = io.provenance;
  std::unordered_set<std::string> used_v(vids.begin(), vids.end());
  std::unordered_set<std::string> used_e;
  for (const auto& e : edges) used_e.insert(e.id);
  auto fresh = [](std::unordered_set<std::string>& used, const std::string& base) {
    std::string id = base;
    for (int k = 2; used.contains(id); ++k) id = base + "_" + std::to_string(k);
    used.insert(id);
    return id;
  };
  auto origin = [](const std::map<std::string, std::string>& m, const std::string& id) {
    auto it = m.find(id);
    return it == m.end() ? id : it->second;
  };

  const std::size_t original_edges = edges.size();
  for (std::size_t e = 0; e < original_edges; ++e) {
    const std::size_t s = edges[e].source, t = edges[e].target;
    const std::size_t span = level[t] - level[s];
    if (span <= 1) continue;
    // Identity segments first, the original matrix on the last piece.
    const std::string eid = edges[e].id;
    const std::string src_origin = origin(prov.vertices, vids[s]);
    std::size_t prev = s;
    for (std::size_t k = 1; k < span; ++k) {
      const std::string vid = fresh(used_v, eid + "_lvl" + std::to_string(k));
      vids.push_back(vid);
      dims.push_back(dims[s]);
      level.push_back(level[s] + k);
      prov.vertices[vid] = src_origin;
      const std::size_t cur = vids.size() - 1;
      const std::string seg = fresh(used_e, eid + "_seg" + std::to_string(k));
      edges.push_back({seg, prev, cur});
      mats.push_back(Matrix::identity(dims[s]));
      prov.edges[seg] = "identity@" + src_origin;
      prev = cur;
    }
    edges[e].source = prev;
  }

  IOGraph out{GraphOfMatrices{DirectedMultigraph(std::move(vids), std::move(edges)), std::move(dims), std::move(mats)},
              io.inputs, io.outputs, std::move(prov)};
  LevelDecomposition lev;
  lev.depth = depth;
  lev.vertex_levels = level;
  for (const auto& e : out.gom.graph.edges()) lev.edge_levels.push_back(level[e.target]);
  return {std::move(out), std::move(lev)};
}

GraphOperator build_operator(const IOGraph& io, const OperatorOptions& opts) {
  auto [norm, lev] = normalize_levels(io);
  const auto& g = norm.gom.graph;
  const auto& dims = norm.gom.dims;
  const Layers layers = layers_of(norm, lev);

  std::vector<std::size_t> in_dims;
  for (std::size_t v : layers.inputs) in_dims.push_back(dims[v]);
  const std::size_t in_width = checked_product(in_dims, opts.level_width_cap, "input width");
  checked_product({in_width, in_width}, opts.entry_cap, "operator size");

  Matrix r = apply_vertex_map(Matrix::identity(in_width), layers.inputs, sources_of(g, layers.edges[1]), dims, opts);
  for (std::size_t k = 1; k <= lev.depth; ++k) {
    const auto& level_edges = layers.edges[k];
    std::vector<std::size_t> slot_dims;
    for (std::size_t e : level_edges) slot_dims.push_back(dims[g.edge(e).source]);
    for (std::size_t j = 0; j < level_edges.size(); ++j) r = apply_edge(r, slot_dims, j, norm.gom.mats[level_edges[j]], opts);
    const auto next = k < lev.depth ? sources_of(g, layers.edges[k + 1]) : layers.outputs;
    r = apply_vertex_map(r, targets_of(g, level_edges), next, dims, opts);
  }

  GraphOperator out;
  out.op = std::move(r);
  for (std::size_t v : layers.inputs) out.input_order.push_back(g.vertex_id(v));
  for (std::size_t v : layers.outputs) out.output_order.push_back(g.vertex_id(v));
  out.levels = std::move(lev);
  return out;
}

double graph_sum_via_operator(const IOGraph& io, const OperatorOptions& opts) {
  return entry_sum(build_operator(io, opts).op);
}

NormCheck operator_norm_check(const IOGraph& io, const OperatorOptions& opts) {
  const GraphOperator op = build_operator(io, opts);
  return {operator_norm(op.op), norm_product(io.gom)};
}

double io_sum_bound(const IOGraph& io) {
  double b = norm_product(io.gom);
  for (std::size_t v : io.inputs) b *= std::sqrt(static_cast<double>(io.gom.dims.at(v)));
  for (std::size_t v : io.outputs) b *= std::sqrt(static_cast<double>(io.gom.dims.at(v)));
  return b;
}

Matrix vertex_isometry(std::size_t dim, std::size_t in_degree, std::size_t out_degree) {
  auto power = [](std::size_t base, std::size_t exp) {
    std::size_t p = 1;
    for (std::size_t i = 0; i < exp; ++i) p *= base;
    return p;
  };
  auto diagonal_index = [&](std::size_t i, std::size_t degree) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < degree; ++j) idx = idx * dim + i;
    return idx;
  };
  Matrix l(power(dim, out_degree), power(dim, in_degree));
  for (std::size_t i = 0; i < dim; ++i) l(diagonal_index(i, out_degree), diagonal_index(i, in_degree)) = 1.0;
  return l;
}

std::vector<Matrix> level_factors(const IOGraph& normalized, const LevelDecomposition& lev,
                                  const OperatorOptions& opts) {
  const auto& g = normalized.gom.graph;
  const auto& dims = normalized.gom.dims;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (lev.vertex_levels.at(g.edge(e).target) != lev.vertex_levels.at(g.edge(e).source) + 1)
      throw InputError("level_factors: edge '" + g.edge(e).id + "' spans more than one level");
  const Layers layers = layers_of(normalized, lev);

  auto width = [&](const std::vector<std::size_t>& vs) {
    std::vector<std::size_t> d;
    for (std::size_t v : vs) d.push_back(dims[v]);
    return checked_product(d, opts.level_width_cap, "level width");
  };

  std::vector<Matrix> factors;
  factors.push_back(apply_vertex_map(Matrix::identity(width(layers.inputs)), layers.inputs,
                                     sources_of(g, layers.edges[1]), dims, opts));
  for (std::size_t k = 1; k <= lev.depth; ++k) {
    Matrix t(1, 1, 1.0);
    for (std::size_t e : layers.edges[k]) t = kron(t, normalized.gom.mats[e]);
    checked_product({t.rows(), t.cols()}, opts.entry_cap, "level operator size");
    factors.push_back(std::move(t));
    const auto ins = targets_of(g, layers.edges[k]);
    const auto next = k < lev.depth ? sources_of(g, layers.edges[k + 1]) : layers.outputs;
    factors.push_back(apply_vertex_map(Matrix::identity(width(ins)), ins, next, dims, opts));
  }
  return factors;
}

}  // namespace graphsum
