#include "graphsum/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "graphsum/decomposition.hpp"
#include "graphsum/errors.hpp"
#include "graphsum/evaluation.hpp"
#include "graphsum/json_io.hpp"
#include "graphsum/modification.hpp"
#include "graphsum/operator_eval.hpp"
#include "graphsum/partition.hpp"
#include "graphsum/witness.hpp"

namespace graphsum::cli {

namespace {

struct Config {
  std::string input;
  std::string partition;
  std::size_t n = 0;
  std::string method = "brute";
  std::string format = "text";
  double term_cap = 1e8;
  std::size_t width_cap = std::size_t{1} << 20;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool check_bound = false;
  std::vector<std::string> matrices;
};

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(15) << x;
  return s.str();
}

json exponent_json(HalfInteger r) {
  return {{"text", r.to_string()}, {"numerator", r.numerator()}, {"denominator", r.denominator()},
          {"value", r.to_double()}};
}

class Runner {
 public:
  Runner(const Config& cfg, std::istream& in, std::ostream& out) : cfg_(cfg), in_(in), out_(out) {}

  int exponent_cmd() {
    const DirectedMultigraph g = structure();
    const Forest f = forest_of(g);
    const auto kinds = classify_leaves(f);
    const auto cuts = cutting_edges(g);
    const HalfInteger r = exponent(f);

    auto vertex_names = [&](const std::vector<std::size_t>& vs) {
      json a = json::array();
      for (std::size_t v : vs) a.push_back(g.vertex_id(v));
      return a;
    };
    auto leaves_of = [&](const std::vector<std::size_t>& tree) {
      std::size_t c = 0;
      for (std::size_t node : tree) c += kinds[node] != LeafKind::internal;
      return c;
    };

    if (json_out()) {
      json doc = header();
      doc["vertex_count"] = g.vertex_count();
      doc["edge_count"] = g.edge_count();
      json ce = json::array();
      for (std::size_t e : cuts) ce.push_back(g.edge(e).id);
      doc["cutting_edges"] = ce;
      json comps = json::array();
      for (std::size_t i = 0; i < f.nodes.size(); ++i)
        comps.push_back({{"vertices", vertex_names(f.nodes[i])}, {"kind", to_string(kinds[i])}, {"tree", f.tree_of_node[i]}});
      doc["components"] = comps;
      json trees = json::array();
      for (std::size_t t = 0; t < f.trees.size(); ++t) {
        json fe = json::array();
        for (const ForestEdge& e : f.edges)
          if (f.tree_of_node[e.a] == t) fe.push_back({{"nodes", {e.a, e.b}}, {"cutting_edge", g.edge(e.cut_edge).id}});
        trees.push_back({{"nodes", f.trees[t]}, {"edges", fe}, {"leaves", leaves_of(f.trees[t])},
                         {"input_leaf", input_leaf(f, t)}});
      }
      doc["trees"] = trees;
      doc["exponent"] = exponent_json(r);
      emit(doc);
      return kExitOk;
    }

    out_ << "vertices: " << g.vertex_count() << ", edges: " << g.edge_count() << "\n";
    out_ << "cutting edges:";
    if (cuts.empty()) out_ << " none";
    for (std::size_t e : cuts) out_ << " " << g.edge(e).id;
    out_ << "\ncomponents:\n";
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
      out_ << "  C" << i + 1 << " {";
      for (std::size_t j = 0; j < f.nodes[i].size(); ++j) out_ << (j ? ", " : "") << g.vertex_id(f.nodes[i][j]);
      out_ << "} " << to_string(kinds[i]) << "\n";
    }
    out_ << "forest: " << f.trees.size() << (f.trees.size() == 1 ? " tree\n" : " trees\n");
    for (std::size_t t = 0; t < f.trees.size(); ++t) {
      std::size_t edges = 0;
      for (const ForestEdge& e : f.edges) edges += f.tree_of_node[e.a] == t;
      out_ << "  tree " << t + 1 << ": " << f.trees[t].size() << " nodes, " << edges << " edges, "
           << leaves_of(f.trees[t]) << " leaves";
      for (const ForestEdge& e : f.edges)
        if (f.tree_of_node[e.a] == t)
          out_ << ", C" << e.a + 1 << "-C" << e.b + 1 << " via " << g.edge(e.cut_edge).id;
      out_ << "\n";
    }
    out_ << "r = " << r.to_string() << " (" << num(r.to_double()) << ")\n";
    return kExitOk;
  }

  int graph_of_partition_cmd() {
    if (cfg_.partition.empty()) throw InputError("graph-of-partition needs --partition");
    const Partition pi = parse_partition(cfg_.partition);
    const DirectedMultigraph g = graph_of_partition(pi);
    std::vector<json> specs;
    for (const std::string& m : cfg_.matrices) {
      json spec = json::parse(m, nullptr, false);
      specs.push_back(spec.is_discarded() ? json(m) : spec);
    }
    if (specs.size() > 1 && specs.size() != g.edge_count())
      throw InputError("got " + std::to_string(specs.size()) + " --matrix specs for " + std::to_string(g.edge_count()) +
                       " edges");

    json doc = header();
    doc["partition"] = pi.to_string();
    if (cfg_.n) doc["N"] = cfg_.n;
    json vs = json::array();
    for (const std::string& id : g.vertex_ids()) vs.push_back({{"id", id}});
    json es = json::array();
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      json edge = {{"id", ed.id}, {"source", g.vertex_id(ed.source)}, {"target", g.vertex_id(ed.target)}};
      if (!specs.empty()) edge["matrix"] = specs.size() == 1 ? specs[0] : specs[e];
      es.push_back(edge);
    }
    doc["vertices"] = vs;
    doc["edges"] = es;
    if (cfg_.n) require_valid(graph_from_json(doc, load_options()));
    out_ << doc.dump(2) << "\n";
    return kExitOk;
  }

  int sum_cmd() {
    const GraphOfMatrices gom = matrices();
    require_valid(gom);
    const bool brute = cfg_.method != "operator";
    const bool op = cfg_.method != "brute";
    json doc = header();
    double sb = 0.0, so = 0.0;
    if (brute) {
      sb = graph_sum_bruteforce(gom, eval_options());
      doc["brute"] = sb;
    }
    if (op) {
      const IOGraph io = to_input_output(gom);
      OperatorOptions oo;
      oo.level_width_cap = cfg_.width_cap;
      const GraphOperator t = build_operator(io, oo);
      so = entry_sum(t.op);
      doc["operator"] = so;
      doc["norm_t"] = operator_norm(t.op);
      doc["product_norms"] = norm_product(io.gom);
    }
    int code = kExitOk;
    if (brute && op) {
      const double scale = std::max(std::abs(sb), std::abs(so));
      const double diff = std::abs(sb - so);
      doc["discrepancy"] = scale > 0.0 ? diff / scale : 0.0;
      const bool ok = diff <= cfg_.tol * scale + 1e-15 * bound(gom);
      doc["pass"] = ok;
      if (!ok) code = kExitCheckFailed;
    }
    if (json_out()) {
      emit(doc);
      return code;
    }
    if (brute) out_ << "S (brute) = " << num(sb) << "\n";
    if (op) {
      out_ << "S (operator) = " << num(so) << "\n";
      out_ << "norm(T_G) = " << num(doc["norm_t"].get<double>())
           << ", product of norms = " << num(doc["product_norms"].get<double>()) << "\n";
    }
    if (brute && op)
      out_ << "relative discrepancy = " << num(doc["discrepancy"].get<double>()) << ", "
           << (code == kExitOk ? "PASS" : "FAIL") << "\n";
    return code;
  }

  int bound_cmd() {
    const GraphOfMatrices gom = matrices();
    require_valid(gom);
    const HalfInteger r = exponent(gom.graph);
    const double b = bound(gom);
    const double np = norm_product(gom);
    const bool uniform = std::adjacent_find(gom.dims.begin(), gom.dims.end(), std::not_equal_to<>()) == gom.dims.end();
    if (json_out()) {
      json doc = header();
      doc["exponent"] = exponent_json(r);
      doc["product_norms"] = np;
      doc["bound"] = b;
      doc["uniform_dim"] = uniform;
      emit(doc);
      return kExitOk;
    }
    out_ << "r = " << r.to_string() << " (" << num(r.to_double()) << ")\n";
    out_ << "product of norms = " << num(np) << "\n";
    out_ << "bound = " << num(b) << (uniform ? "\n" : " (per-leaf max dims)\n");
    return kExitOk;
  }

  int modify_cmd() {
    const GraphOfMatrices gom = matrices();
    require_valid(gom);
    const IOGraph io = to_input_output(gom);
    const auto problems = check_io(io);
    out_ << to_json(io).dump(2) << "\n";
    return problems.empty() ? kExitOk : kExitCheckFailed;
  }

  int witness_cmd() {
    const DirectedMultigraph g = structure();
    out_ << to_json(witness_matrices(g, witness_n())).dump(2) << "\n";
    return kExitOk;
  }

  int verify_cmd() {
    if (cfg_.check_bound) {
      const GraphOfMatrices gom = matrices();
      require_valid(gom);
      const double s = graph_sum_bruteforce(gom, eval_options());
      const double b = bound(gom);
      const bool pass = std::abs(s) <= b * (1.0 + cfg_.tol);
      if (json_out()) {
        json doc = header();
        doc["S"] = s;
        doc["bound"] = b;
        doc["pass"] = pass;
        emit(doc);
      } else {
        out_ << "S = " << num(s) << ", bound = " << num(b) << ", " << (pass ? "PASS" : "FAIL") << "\n";
      }
      return pass ? kExitOk : kExitCheckFailed;
    }
    const DirectedMultigraph g = structure();
    const OptimalityReport rep = verify_optimality(g, witness_n(), eval_options());
    if (json_out()) {
      json doc = header();
      doc["S"] = rep.sum;
      doc["target"] = rep.target;
      doc["exponent"] = exponent_json(rep.exponent);
      doc["norms_ok"] = rep.norms_ok;
      doc["pass"] = rep.pass;
      emit(doc);
    } else {
      out_ << "S = " << num(rep.sum) << ", target = " << num(rep.target) << ", " << (rep.pass ? "PASS" : "FAIL");
      if (!rep.norms_ok) out_ << " (witness norms differ from 1)";
      out_ << "\n";
    }
    return rep.pass ? kExitOk : kExitCheckFailed;
  }

 private:
  bool json_out() const { return cfg_.format == "json"; }

  json header() const { return {{"schema_version", kSchemaVersion}}; }

  void emit(const json& doc) { out_ << doc.dump(2) << "\n"; }

  LoadOptions load_options() const {
    LoadOptions lo;
    if (cfg_.n) lo.default_dim = cfg_.n;
    lo.seed_base = cfg_.seed;
    return lo;
  }

  EvalOptions eval_options() const {
    EvalOptions eo;
    eo.term_cap = cfg_.term_cap;
    eo.threads = cfg_.threads;
    return eo;
  }

  const json& document() {
    if (doc_) return *doc_;
    if (cfg_.input.empty()) throw InputError("no input: give a graph JSON path, '-' for stdin, or --partition");
    std::string text;
    if (cfg_.input == "-") {
      text.assign(std::istreambuf_iterator<char>(in_), {});
    } else {
      std::ifstream f(cfg_.input, std::ios::binary);
      if (!f) throw InputError("cannot open '" + cfg_.input + "'");
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    try {
      doc_ = json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError(cfg_.input + ": invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return *doc_;
  }

  DirectedMultigraph structure() {
    if (!cfg_.partition.empty()) return graph_of_partition(parse_partition(cfg_.partition));
    return graph_structure_from_json(document());
  }

  GraphOfMatrices matrices() {
    if (!cfg_.partition.empty()) {
      if (!cfg_.n) throw InputError("--partition needs --n to attach matrices");
      const DirectedMultigraph g = graph_of_partition(parse_partition(cfg_.partition));
      std::vector<Matrix> mats;
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        json spec = "identity";
        if (!cfg_.matrices.empty()) {
          const std::string& m = cfg_.matrices.size() == 1 ? cfg_.matrices[0] : cfg_.matrices.at(e);
          spec = json::parse(m, nullptr, false);
          if (spec.is_discarded()) spec = m;
        }
        mats.push_back(matrix_from_spec(spec, cfg_.n, cfg_.n, cfg_.seed + e, "edge '" + g.edge(e).id + "'"));
      }
      return with_uniform_dim(g, cfg_.n, std::move(mats));
    }
    return graph_from_json(document(), load_options());
  }

  std::size_t witness_n() {
    if (cfg_.n) return cfg_.n;
    if (cfg_.partition.empty()) {
      const json& doc = document();
      if (auto it = doc.find("N"); it != doc.end() && it->is_number_integer() && it->get<long long>() >= 1)
        return it->get<std::size_t>();
    }
    throw InputError("no dimension: pass --n or a top-level \"N\"");
  }

  const Config& cfg_;
  std::istream& in_;
  std::ostream& out_;
  std::optional<json> doc_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Sharp exponents, graph sums and witness matrices for graphs of matrices", "graphsum"};
  app.require_subcommand(1);

  auto add_input = [&](CLI::App* sub, bool with_partition) {
    sub->add_option("input", cfg.input, "graph JSON file, or - for standard input");
    if (with_partition) sub->add_option("--partition", cfg.partition, "partition such as {1,3}{2,4} instead of a graph");
    sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_dims = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "dimension for vertices without an explicit dim")->check(CLI::Range(1, 64));
    sub->add_option("--seed", cfg.seed, "base seed for random matrix specs without a seed");
    sub->add_option("--matrix", cfg.matrices, "matrix spec per edge, or one spec for all (with --partition)");
  };
  auto add_eval = [&](CLI::App* sub) {
    sub->add_option("--term-cap", cfg.term_cap, "maximum number of brute-force index functions")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "brute-force worker threads")->check(CLI::Range(1u, 256u));
  };

  auto* exp = app.add_subcommand("exponent", "forest of two-edge connected components and r(G)");
  add_input(exp, true);

  auto* gop = app.add_subcommand("graph-of-partition", "emit the graph of a partition as JSON");
  gop->add_option("--partition", cfg.partition, "partition such as {1,3}{2,4}")->required();
  gop->add_option("--n", cfg.n, "dimension of every vertex")->check(CLI::Range(1, 64));
  gop->add_option("--matrix", cfg.matrices, "matrix spec per edge, or one spec for all");
  gop->add_option("--seed", cfg.seed, "base seed for random matrix specs without a seed");

  auto* sum = app.add_subcommand("sum", "evaluate the graph sum");
  add_input(sum, true);
  add_dims(sum);
  add_eval(sum);
  sum->add_option("--method", cfg.method, "evaluation method")->check(CLI::IsMember({"brute", "operator", "both"}));
  sum->add_option("--width-cap", cfg.width_cap, "maximum tensor width per level")->check(CLI::PositiveNumber);
  sum->add_option("--tol", cfg.tol, "relative tolerance for --method both")->check(CLI::PositiveNumber);

  auto* bnd = app.add_subcommand("bound", "sharp bound N^r times the product of norms");
  add_input(bnd, true);
  add_dims(bnd);

  auto* mod = app.add_subcommand("modify", "rewrite into an input-output graph");
  add_input(mod, true);
  add_dims(mod);

  auto* wit = app.add_subcommand("witness", "emit the norm-one matrices attaining N^r");
  add_input(wit, true);
  wit->add_option("--n", cfg.n, "dimension of every vertex")->check(CLI::Range(1, 64));

  auto* ver = app.add_subcommand("verify", "check optimality, or the bound with --bound");
  add_input(ver, true);
  add_dims(ver);
  add_eval(ver);
  ver->add_flag("--bound", cfg.check_bound, "check |S| <= bound on the given matrices instead");
  ver->add_option("--tol", cfg.tol, "relative slack for --bound")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  Runner runner(cfg, in, out);
  try {
    if (exp->parsed()) return runner.exponent_cmd();
    if (gop->parsed()) return runner.graph_of_partition_cmd();
    if (sum->parsed()) return runner.sum_cmd();
    if (bnd->parsed()) return runner.bound_cmd();
    if (mod->parsed()) return runner.modify_cmd();
    if (wit->parsed()) return runner.witness_cmd();
    return runner.verify_cmd();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace graphsum::cli
