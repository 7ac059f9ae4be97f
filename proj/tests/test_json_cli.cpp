#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "erp/instances.hpp"
#include "erp/json_io.hpp"
#include "erp/transform.hpp"

using namespace erp;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_tool(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_out_" + std::to_string(counter++) + ".json";
  const std::string cmd =
      std::string(ERPTOOL_PATH) + " " + args + " > " + out_path + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::remove(out_path.c_str());
  return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::ofstream out(name);
  out << body;
  return name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("json_cli") {

TEST_CASE("complex numbers travel as [re, im]") {
  const Json j = to_json(Complex(1.5, -2.0));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0].get<double>() == 1.5);
  CHECK(j[1].get<double>() == -2.0);
  CHECK(complex_from_json(j) == Complex(1.5, -2.0));
}

TEST_CASE("graphs and fragments round trip") {
  Multigraph g;
  g.vertex_count = 3;
  g.edges = {{0, 1}, {1, 1}, {2, 0}};
  g.circles = 2;
  const Json j = to_json(g);
  CHECK(j.at("vertices") == 3);
  CHECK(j.at("circles") == 2);
  CHECK(to_json(graph_from_json(j)).dump() == j.dump());

  Fragment f;
  f.graph.vertex_count = 3;
  f.graph.edges = {{0, 1}, {0, 2}};
  f.open_ends = {1, 2};
  const Json jf = to_json(f);
  CHECK(jf.at("open_ends").size() == 2);
  CHECK(to_json(fragment_from_json(jf)).dump() == jf.dump());

  // circles default to zero when the field is absent
  const Multigraph bare = graph_from_json(Json{{"vertices", 1}, {"edges", Json::array()}});
  CHECK(bare.circles == 0);
}

TEST_CASE("models round trip") {
  Rng rng(71);
  const VertexModel m = random_complex_model(3, rng);
  const Json jm = to_json(m);
  CHECK(to_json(vertex_model_from_json(jm)).dump() == jm.dump());

  const EdgeModelEval h = random_eval_model(2, 3, rng);
  const Json jh = to_json(h);
  CHECK(to_json(edge_model_eval_from_json(jh)).dump() == jh.dump());

  const EdgeModelTable t = materialize(h, 4);
  const Json jt = to_json(t);
  CHECK(to_json(edge_model_table_from_json(jt)).dump() == jt.dump());

  const Eigen::MatrixXcd u = random_complex_orthogonal(3, 0.4, 5);
  CHECK(to_json(cmatrix_from_json(to_json(u))).dump() == to_json(u).dump());
}

TEST_CASE("table coefficients serialize in graded order") {
  EdgeModelTable t;
  t.k = 2;
  t.d = 2;
  t.coeffs[{0, 2}] = Complex(1, 0);
  t.coeffs[{0, 0}] = Complex(2, 0);
  t.coeffs[{1, 1}] = Complex(3, 0);
  t.coeffs[{1, 0}] = Complex(4, 0);
  const std::string dumped = to_json(t).dump();
  const auto p_const = dumped.find("\"0,0\"");
  const auto p_x = dumped.find("\"1,0\"");
  const auto p_xy = dumped.find("\"1,1\"");
  const auto p_yy = dumped.find("\"0,2\"");
  REQUIRE(p_const != std::string::npos);
  CHECK(p_const < p_x);
  CHECK(p_x < p_yy);
  CHECK(p_yy < p_xy);
}

TEST_CASE("eval subcommand computes the fixture value") {
  for (const char* flag : {"--model", "--vertex-model"}) {
    const RunResult r = run_tool(std::string("eval ") + flag + " " + fixture("m3.json") +
                                 " --graph " + fixture("c4.json"));
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc.at("value")[0].get<double>() == doctest::Approx(18.0).epsilon(1e-12));
    CHECK(doc.at("value")[1].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
    // single JSON document, re-parse stable
    CHECK(doc.dump(2) + "\n" == r.out);
  }
}

TEST_CASE("eval works on edge models and rejects circle values for them") {
  const RunResult ok = run_tool("eval --edge-model " + fixture("closed_edge.json") + " --graph " +
                                fixture("k2_graph.json"));
  REQUIRE(ok.exit_code == 0);
  CHECK(Json::parse(ok.out).contains("value"));

  const RunResult bad = run_tool("eval --edge-model " + fixture("closed_edge.json") + " --graph " +
                                 fixture("k2_graph.json") + " --circle-value 2");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("transform emits an edge model that matches the library") {
  const RunResult r = run_tool("transform --model " + fixture("k2.json"));
  REQUIRE(r.exit_code == 0);
  const EdgeModelEval h = edge_model_eval_from_json(Json::parse(r.out));
  CHECK(h.k == 2);
  CHECK(h.terms.size() == 2);
  const Multigraph c4 = graph_from_json(Json::parse(read_file(fixture("c4.json"))));
  CHECK(std::abs(eval_edge(h, c4) - Complex(2, 0)) < 1e-9);
}

TEST_CASE("erp-check reports verdicts as data with exit zero") {
  const RunResult pos = run_tool("erp-check --model " + fixture("k2.json"));
  REQUIRE(pos.exit_code == 0);
  const Json jpos = Json::parse(pos.out);
  CHECK(jpos.at("status") == "ERP");
  CHECK_FALSE(jpos.at("certificate").is_null());

  const RunResult neg = run_tool("erp-check --model " + fixture("indepset.json"));
  REQUIRE(neg.exit_code == 0);
  const Json jneg = Json::parse(neg.out);
  CHECK(jneg.at("status") == "NOT_ERP");
  CHECK_FALSE(jneg.at("witness").is_null());
}

TEST_CASE("twin-reduce merges the fixture down to two colors") {
  const RunResult r = run_tool("twin-reduce --model " + fixture("twins.json"));
  REQUIRE(r.exit_code == 0);
  const VertexModel m = vertex_model_from_json(Json::parse(r.out));
  CHECK(m.colors() == 2);
  CHECK(m.a(0) == Complex(3, 0));
  CHECK(m.a(1) == Complex(3, 0));
}

TEST_CASE("witness finds the negated matching violation with defaults") {
  const RunResult r = run_tool("witness --model " + fixture("negmatch.json"));
  REQUIRE(r.exit_code == 0);
  const Json doc = Json::parse(r.out);
  REQUIRE(doc.at("found").get<bool>());
  CHECK(doc.at("witness").at("l") == 1);
  CHECK(doc.at("witness").at("quadratic_form").get<double>() ==
        doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("connection-matrix emits the corpus and psd report") {
  const RunResult r = run_tool("connection-matrix --model " + fixture("k2.json") + " --l 1");
  REQUIRE(r.exit_code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc.at("l") == 1);
  CHECK(doc.at("m").is_array());
  CHECK(doc.at("fragment_keys").size() == doc.at("m").size());
  CHECK(doc.at("psd").is_boolean());
  CHECK(doc.at("psd").get<bool>());
}

TEST_CASE("kempf-ness-search output is byte deterministic per seed") {
  const std::string args = "kempf-ness-search --edge-model " + fixture("closed_edge.json") +
                           " --budget 200 --seed 7";
  const RunResult a = run_tool(args);
  const RunResult b = run_tool(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);
  const Json doc = Json::parse(a.out);
  CHECK(doc.at("found").get<bool>());
  CHECK_FALSE(doc.at("g").is_null());
}

TEST_CASE("bad inputs exit with code one") {
  CHECK(run_tool("eval --model does_not_exist.json --graph " + fixture("c4.json")).exit_code == 1);
  const std::string garbage = write_temp("garbage.json", "{ not json");
  CHECK(run_tool("eval --model " + garbage + " --graph " + fixture("c4.json")).exit_code == 1);
  std::remove(garbage.c_str());
  CHECK(run_tool("eval --model " + fixture("m3.json")).exit_code == 1);  // --graph missing
  CHECK(run_tool("eval --model " + fixture("m3.json") + " --edge-model " +
                 fixture("closed_edge.json") + " --graph " + fixture("c4.json"))
            .exit_code == 1);
  CHECK(run_tool("eval --graph " + fixture("c4.json")).exit_code == 1);  // no model at all
  CHECK(run_tool("eval --no-such-flag").exit_code == 1);
  CHECK(run_tool("no-such-subcommand").exit_code == 1);
  const std::string malformed = write_temp("asym.json",
                                           R"({"a": [[1,0]], "B": [[[1,0],[2,0]]]})");
  CHECK(run_tool("eval --model " + malformed + " --graph " + fixture("c4.json")).exit_code == 1);
  std::remove(malformed.c_str());
}

}  // TEST_SUITE
