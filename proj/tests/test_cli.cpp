#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graphsum/cli.hpp"
#include "graphsum/evaluation.hpp"
#include "graphsum/json_io.hpp"
#include "graphsum/witness.hpp"
#include "oracles.hpp"

using namespace graphsum;

namespace {

const char* kTau = "{2,4,11}{3,5,10}{6,7,8}{9,12,14,16,20}{13,15,17,18}{19,22,24}{21,23}{1}";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "graphsum");
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kCycle = R"({"N":5,"vertices":["a","b","c"],"edges":[
  {"id":"e1","source":"a","target":"b"},{"id":"e2","source":"b","target":"c"},{"id":"e3","source":"c","target":"a"}]})";

}  // namespace

TEST_CASE("exponent report") {
  const Result r = run({"exponent", "--partition", kTau});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("r = 3/2 (1.5)") != std::string::npos);
  CHECK(r.out.find("cutting edges: e1 e3 e10") != std::string::npos);
  CHECK(r.out.find("forest: 1 tree") != std::string::npos);

  const Result j = run({"exponent", "--partition", kTau, "--format", "json"});
  const json doc = json::parse(j.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["exponent"]["text"] == "3/2");
  CHECK(doc["trees"].size() == 1);
  CHECK(doc["trees"][0]["nodes"].size() == 4);
  CHECK(doc["trees"][0]["leaves"] == 3);

  const Result s = run({"exponent", "-"}, kCycle);
  CHECK(s.code == cli::kExitOk);
  CHECK(s.out.find("r = 1 (1)") != std::string::npos);
}

TEST_CASE("sum with both methods") {
  const Result r = run({"sum", "-", "--method", "both"}, kCycle);
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("S (brute) = 5\n") != std::string::npos);
  CHECK(r.out.find("S (operator) = 5\n") != std::string::npos);

  const Result j = run({"sum", "--partition", kTau, "--n", "2", "--matrix", R"({"random":"uniform"})", "--method",
                        "both", "--format", "json"});
  CHECK(j.code == cli::kExitOk);
  const json doc = json::parse(j.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["norm_t"].get<double>() <= doc["product_norms"].get<double>() * (1 + 1e-9));
}

TEST_CASE("bound, verify and witness") {
  const Result b = run({"bound", "--partition", kTau, "--n", "4"});
  CHECK(b.code == cli::kExitOk);
  CHECK(b.out.find("bound = 8\n") != std::string::npos);

  const Result v = run({"verify", "--partition", kTau, "--n", "4"});
  CHECK(v.code == cli::kExitOk);
  CHECK(v.out == "S = 8, target = 8, PASS\n");

  const Result vb = run({"verify", "--bound", "--partition", kTau, "--n", "2", "--matrix", R"({"random":"uniform"})"});
  CHECK(vb.code == cli::kExitOk);
  CHECK(vb.out.find("PASS") != std::string::npos);

  const Result w = run({"witness", "--partition", kTau, "--n", "4"});
  CHECK(w.code == cli::kExitOk);
  const GraphOfMatrices g = graph_from_json(json::parse(w.out));
  CHECK(g.mats[0] == witness_v_matrix(4));
  CHECK(graph_sum_bruteforce(g) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("modify output re-reads with the same sum") {
  const std::string doc = R"({"N":2,"vertices":["a","b","c"],"edges":[
    {"id":"e1","source":"a","target":"b","matrix":{"random":"uniform","seed":1}},
    {"id":"e2","source":"b","target":"a","matrix":{"random":"uniform","seed":2}},
    {"id":"e3","source":"b","target":"c","matrix":{"random":"uniform","seed":3}},
    {"id":"e4","source":"c","target":"c","matrix":{"random":"uniform","seed":4}}]})";
  const Result m = run({"modify", "-"}, doc);
  CHECK(m.code == cli::kExitOk);
  const IOGraph io = io_graph_from_json(json::parse(m.out));
  CHECK(check_io(io).empty());
  const double original = graph_sum_bruteforce(graph_from_json(json::parse(doc)));
  CHECK(graph_sum_bruteforce(io.gom) == doctest::Approx(original).epsilon(1e-12));
}

TEST_CASE("graph-of-partition") {
  const Result r = run({"graph-of-partition", "--partition", "{2,3}{4,5}{6,1}", "--n", "3", "--matrix", "identity"});
  CHECK(r.code == cli::kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["vertices"].size() == 3);
  CHECK(doc["edges"].size() == 3);
  CHECK(graph_sum_bruteforce(graph_from_json(doc)) == 3.0);
  CHECK(run({"graph-of-partition", "--partition", "{1,2}{3}"}).code == cli::kExitInputError);
  CHECK(run({"graph-of-partition", "--partition", "{1,2}{3,4}", "--matrix", "identity", "--matrix", "identity",
             "--matrix", "identity"})
            .code == cli::kExitInputError);
}

TEST_CASE("files on disk") {
  const auto path = std::filesystem::temp_directory_path() / "graphsum_cli_test.json";
  {
    std::ofstream f(path);
    f << kCycle;
  }
  const Result r = run({"sum", path.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "S (brute) = 5\n");
  std::filesystem::remove(path);
  CHECK(run({"sum", path.string()}).code == cli::kExitInputError);
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run({"exponent", "--partition", "{1,2}{2}"}).code == cli::kExitInputError);
  CHECK(run({"exponent"}).code == cli::kExitInputError);
  CHECK(run({"sum", "-"}, "{not json").code == cli::kExitInputError);
  CHECK(run({"sum", "-"}, R"({"vertices":["a"],"edges":[]})").code == cli::kExitInputError);
  CHECK(run({"sum", "-", "--n", "2"}, R"({"vertices":["a","b"],"edges":[{"id":"e1","source":"a","target":"b","matrix":{"rows":[[1,2,3]]}}]})")
            .code == cli::kExitInputError);
  CHECK(run({"sum", "-", "--term-cap", "10"}, kCycle).code == cli::kExitInputError);
  CHECK(run({"sum", "-", "--method", "magic"}, kCycle).code == cli::kExitInputError);
  CHECK(run({"frobnicate"}).code == cli::kExitInputError);
  CHECK(run({}).code == cli::kExitInputError);
  const Result e = run({"sum", "-", "--n", "2"}, R"({"vertices":["a","b"],"edges":[{"id":"e1","source":"a","target":"b","matrix":{"rows":[[1,2,3]]}}]})");
  CHECK(e.err.find("e1") != std::string::npos);
}

TEST_CASE("help") {
  const Result r = run({"--help"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("verify") != std::string::npos);
  CHECK(run({"verify", "--bound", "-"}, kCycle).code == cli::kExitOk);
}
