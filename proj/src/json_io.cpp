#include "graphsum/json_io.hpp"

#include <random>

#include "graphsum/errors.hpp"
#include "graphsum/witness.hpp"

namespace graphsum {

namespace {

std::string shape(std::size_t rows, std::size_t cols) { return std::to_string(rows) + "x" + std::to_string(cols); }

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_string()) throw InputError(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

std::size_t positive_size(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 1) throw InputError(where + " must be a positive integer");
  return v.get<std::size_t>();
}

std::size_t vertex_position(const DirectedMultigraph& g, const json& id, const std::string& where) {
  if (!id.is_string()) throw InputError(where + ": vertex ids must be strings");
  auto v = g.find_vertex(id.get<std::string>());
  if (!v) throw InputError(where + ": unknown vertex '" + id.get<std::string>() + "'");
  return *v;
}

std::vector<std::size_t> vertex_list(const DirectedMultigraph& g, const json& doc, const char* key) {
  std::vector<std::size_t> out;
  auto it = doc.find(key);
  if (it == doc.end()) return out;
  if (!it->is_array()) throw InputError(std::string("\"") + key + "\" must be an array of vertex ids");
  for (const json& id : *it) out.push_back(vertex_position(g, id, key));
  return out;
}

bool is_identity(const Matrix& m) { return m.rows() == m.cols() && m == Matrix::identity(m.rows()); }

}  // namespace

Matrix random_uniform_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix m(rows, cols);
  for (double& x : m.data()) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return m;
}

Matrix matrix_from_spec(const json& spec, std::size_t rows, std::size_t cols, std::uint64_t default_seed,
                        const std::string& where) {
  if (spec.is_string()) {
    const auto name = spec.get<std::string>();
    if (name != "identity" && name != "witness_V" && name != "witness_Vt")
      throw InputError(where + ": unknown matrix spec \"" + name + "\"");
    if (rows != cols)
      throw InputError(where + ": \"" + name + "\" needs a square shape, got " + shape(rows, cols) +
                       " (dim target x dim source)");
    if (name == "identity") return Matrix::identity(rows);
    return name == "witness_V" ? witness_v_matrix(rows) : transpose(witness_v_matrix(rows));
  }
  if (!spec.is_object()) throw InputError(where + ": matrix spec must be a string or an object");
  if (auto it = spec.find("rows"); it != spec.end()) {
    if (!it->is_array()) throw InputError(where + ": \"rows\" must be an array of arrays");
    std::vector<std::vector<double>> data;
    for (const json& row : *it) {
      if (!row.is_array()) throw InputError(where + ": \"rows\" must be an array of arrays");
      auto& out = data.emplace_back();
      for (const json& x : row) {
        if (!x.is_number()) throw InputError(where + ": matrix entries must be numbers");
        out.push_back(x.get<double>());
      }
    }
    try {
      return Matrix::from_rows(data);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (auto it = spec.find("random"); it != spec.end()) {
    if (*it != "uniform") throw InputError(where + ": only {\"random\":\"uniform\"} is supported");
    std::uint64_t seed = default_seed;
    if (auto s = spec.find("seed"); s != spec.end()) {
      if (!s->is_number_integer()) throw InputError(where + ": \"seed\" must be an integer");
      seed = s->is_number_unsigned() ? s->get<std::uint64_t>() : static_cast<std::uint64_t>(s->get<std::int64_t>());
    }
    return random_uniform_matrix(rows, cols, seed);
  }
  throw InputError(where + ": matrix spec needs \"rows\" or \"random\"");
}

DirectedMultigraph graph_structure_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("graph JSON must be an object");
  const json& vs = member(doc, "vertices", "graph");
  if (!vs.is_array()) throw InputError("\"vertices\" must be an array");
  std::vector<std::string> ids;
  for (std::size_t p = 0; p < vs.size(); ++p) {
    const json& v = vs[p];
    const std::string where = "vertices[" + std::to_string(p) + "]";
    if (v.is_string()) {
      ids.push_back(v.get<std::string>());
    } else if (v.is_object()) {
      ids.push_back(string_member(v, "id", where));
    } else {
      throw InputError(where + ": expected an object or an id string");
    }
  }
  const json& es = member(doc, "edges", "graph");
  if (!es.is_array()) throw InputError("\"edges\" must be an array");
  std::vector<EdgeSpec> specs;
  for (std::size_t p = 0; p < es.size(); ++p) {
    const json& e = es[p];
    const std::string where = "edges[" + std::to_string(p) + "]";
    if (!e.is_object()) throw InputError(where + ": expected an object");
    specs.push_back({string_member(e, "id", where), string_member(e, "source", where), string_member(e, "target", where)});
  }
  return build_graph(std::move(ids), specs);
}

GraphOfMatrices graph_from_json(const json& doc, const LoadOptions& opts) {
  DirectedMultigraph g = graph_structure_from_json(doc);
  std::optional<std::size_t> fallback = opts.default_dim;
  if (!fallback) {
    if (auto it = doc.find("N"); it != doc.end()) fallback = positive_size(*it, "\"N\"");
  }

  const json& vs = doc["vertices"];
  std::vector<std::size_t> dims;
  for (std::size_t p = 0; p < vs.size(); ++p) {
    const json& v = vs[p];
    if (v.is_object() && v.contains("dim")) {
      dims.push_back(positive_size(v["dim"], "vertices[" + std::to_string(p) + "].dim"));
    } else if (fallback) {
      dims.push_back(*fallback);
    } else {
      throw InputError("vertex '" + g.vertex_id(p) + "' has no dim and no global N is set");
    }
  }

  const json& es = doc["edges"];
  std::vector<Matrix> mats;
  for (std::size_t p = 0; p < es.size(); ++p) {
    const Edge& e = g.edge(p);
    auto it = es[p].find("matrix");
    const json spec = it == es[p].end() ? json("identity") : *it;
    mats.push_back(matrix_from_spec(spec, dims[e.target], dims[e.source], opts.seed_base + p, "edge '" + e.id + "'"));
  }
  return GraphOfMatrices{std::move(g), std::move(dims), std::move(mats)};
}

IOGraph io_graph_from_json(const json& doc, const LoadOptions& opts) {
  IOGraph io{graph_from_json(doc, opts), {}, {}, {}};
  io.inputs = vertex_list(io.gom.graph, doc, "inputs");
  io.outputs = vertex_list(io.gom.graph, doc, "outputs");
  if (auto it = doc.find("provenance"); it != doc.end()) {
    try {
      if (it->contains("vertices")) io.provenance.vertices = it->at("vertices").get<std::map<std::string, std::string>>();
      if (it->contains("edges")) io.provenance.edges = it->at("edges").get<std::map<std::string, std::string>>();
    } catch (const json::exception&) {
      throw InputError("\"provenance\" must map ids to ids");
    }
  }
  return io;
}

json to_json(const GraphOfMatrices& gom) {
  const auto& g = gom.graph;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  json vs = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) vs.push_back({{"id", g.vertex_id(v)}, {"dim", gom.dims[v]}});
  json es = json::array();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    json edge = {{"id", ed.id}, {"source", g.vertex_id(ed.source)}, {"target", g.vertex_id(ed.target)}};
    const Matrix& m = gom.mats[e];
    if (is_identity(m)) {
      edge["matrix"] = "identity";
    } else {
      json rows = json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
      edge["matrix"] = {{"rows", rows}};
    }
    es.push_back(std::move(edge));
  }
  doc["vertices"] = std::move(vs);
  doc["edges"] = std::move(es);
  return doc;
}

json to_json(const IOGraph& io) {
  json doc = to_json(io.gom);
  const auto& g = io.gom.graph;
  json ins = json::array(), outs = json::array();
  for (std::size_t v : io.inputs) ins.push_back(g.vertex_id(v));
  for (std::size_t v : io.outputs) outs.push_back(g.vertex_id(v));
  doc["inputs"] = std::move(ins);
  doc["outputs"] = std::move(outs);
  doc["provenance"] = {{"vertices", io.provenance.vertices}, {"edges", io.provenance.edges}};
  return doc;
}

}  // namespace graphsum
