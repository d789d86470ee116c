#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "test_support.hpp"

#include "layerdag/cli.hpp"

using namespace layerdag;
using nlohmann::json;
using testsup::dag_from;
using testsup::ld;
using testsup::ns;

namespace {

struct TempFile {
  std::filesystem::path path;
  TempFile(const std::string& name, const std::string& contents) {
    path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  std::string str() const { return path.string(); }
};

int run_cli(const std::vector<std::string>& args, std::string* out_s = nullptr,
            std::string* err_s = nullptr) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  if (out_s) *out_s = out.str();
  if (err_s) *err_s = err.str();
  return code;
}

}  // namespace

TEST_CASE("decomposition JSON shape") {
  Dag chain = dag_from("A B\n");
  LayerDecomposition d = ld(2, {{{1}, {1}}, {{0}, {0}}});
  auto j = decomposition_to_json(chain, d);
  REQUIRE(j.dump() ==
          R"({"blocks":[{"T":["B"],"S":["B"]},{"T":["A"],"S":["A"]}],"width":1})");
  REQUIRE(decomposition_from_json(chain, j) == d);

  SECTION("name sorting is alphabetical within a set") {
    Dag g = dag_from("#nodes: b a\n");
    auto one = decomposition_to_json(g, ld(2, {{{0, 1}, {}}}));
    REQUIRE(one["blocks"][0]["T"] == json::array({"a", "b"}));
  }
  SECTION("bad inputs") {
    REQUIRE_THROWS_AS(decomposition_from_json(chain, json::array()),
                      format_error);
    REQUIRE_THROWS_AS(decomposition_from_json(chain, json::parse(R"({"x":1})")),
                      format_error);
    REQUIRE_THROWS_AS(
        decomposition_from_json(
            chain, json::parse(R"({"blocks":[{"T":["A","B"]}],"width":2})")),
        format_error);
    REQUIRE_THROWS_AS(
        decomposition_from_json(
            chain,
            json::parse(R"({"blocks":[{"T":["A","B"],"S":[]}],"width":7})")),
        format_error);
    REQUIRE_THROWS_AS(
        decomposition_from_json(
            chain, json::parse(R"({"blocks":[{"T":["Z"],"S":[]}],"width":1})")),
        format_error);
    REQUIRE_THROWS_AS(
        decomposition_from_json(
            chain, json::parse(R"({"blocks":[{"T":[3],"S":[]}],"width":1})")),
        format_error);
    REQUIRE_THROWS_AS(
        decomposition_from_json(
            chain, json::parse(R"({"blocks":[{"T":["A","B"],"S":[]}]})")),
        format_error);
  }
}

TEST_CASE("solve result and violation JSON") {
  Dag chain = dag_from("A B\n");
  SECTION("full result") {
    SolveResult r = solve(chain);
    auto j = solve_result_to_json(chain, r);
    REQUIRE(j["width"] == 1);
    REQUIRE(j["optimal"] == true);
    REQUIRE(j["decomposition"]["width"] == 1);
    REQUIRE(j["nodes_expanded"].get<long long>() > 0);
  }
  SECTION("empty handed result") {
    SolveConfig cfg;
    cfg.time_budget = std::chrono::milliseconds(0);
    auto j = solve_result_to_json(chain, solve(chain, cfg));
    REQUIRE(j["width"].is_null());
    REQUIRE(j["decomposition"].is_null());
    REQUIRE(j["optimal"] == false);
  }
  SECTION("violation") {
    auto v = validate(chain, ld(2, {{{0, 1}, {1}}}), NodeSet::full(2));
    REQUIRE(v);
    auto j = violation_to_json(chain, *v);
    REQUIRE(j["ok"] == false);
    REQUIRE(j["condition"] == "parent_placement");
    REQUIRE(j["witnesses"].is_array());
    REQUIRE_FALSE(j["witnesses"].empty());
    REQUIRE(j["message"].is_string());
  }
}

TEST_CASE("numeric instance JSON") {
  auto inst = three_partition_from_json(
      json::parse(R"({"sizes":[2,2,3],"bound":7})"));
  REQUIRE(inst.sizes == std::vector<long long>{2, 2, 3});
  REQUIRE(inst.bound == 7);
  REQUIRE_THROWS_AS(three_partition_from_json(json::parse(R"({"sizes":[2]})")),
                    format_error);
  REQUIRE_THROWS_AS(
      three_partition_from_json(json::parse(R"({"sizes":["x"],"bound":7})")),
      format_error);

  auto roles = roles_to_json(reduction_graph(inst));
  REQUIRE(roles["c"] == 12);
  REQUIRE(roles["k"] == 175);
  REQUIRE(roles["tip"] == "tip");
  REQUIRE(roles["spine"].size() == 1);
  REQUIRE(roles["arms"].size() == 3);
  REQUIRE(roles["hands"][0].size() == 24);
}

TEST_CASE("cli basics") {
  std::string out, err;
  REQUIRE(run_cli({"--help"}, &out) == 0);
  REQUIRE(out.find("solve") != std::string::npos);
  // The block ordering convention is part of the interface contract.
  REQUIRE(out.find("index 0 is the rightmost block") != std::string::npos);
  REQUIRE(run_cli({}, &out, &err) == 2);
  REQUIRE(run_cli({"solve", "--bogus"}, &out, &err) == 2);
  REQUIRE(run_cli({"frobnicate"}, &out, &err) == 2);
  REQUIRE(run_cli({"solve", "/no/such/file"}, &out, &err) == 2);
  REQUIRE(err.find("cannot open") != std::string::npos);
}

TEST_CASE("cli generate") {
  std::string out, err;
  SECTION("family") {
    REQUIRE(run_cli({"generate", "--family", "chord_chain", "--param", "5"},
                    &out) == 0);
    Dag g = parse_edge_list(out);
    REQUIRE(g.node_count() == 5);
    REQUIRE(g.arc_count() == 5);
    REQUIRE(g.label(0) == "v1");
  }
  SECTION("family errors") {
    REQUIRE(run_cli({"generate", "--family", "star", "--param", "1"}, &out,
                    &err) == 2);
    REQUIRE(run_cli({"generate", "--family", "star"}, &out, &err) == 2);
    REQUIRE(run_cli({"generate"}, &out, &err) == 2);
    REQUIRE(err.find("generate needs") != std::string::npos);
  }
  SECTION("random") {
    REQUIRE(run_cli({"generate", "--random", "4", "0", "7"}, &out) == 0);
    REQUIRE(parse_edge_list(out).node_count() == 4);
    REQUIRE(parse_edge_list(out).arc_count() == 0);
    REQUIRE(run_cli({"generate", "--random", "4", "2", "7"}, &out, &err) == 2);
  }
  SECTION("reduction with roles") {
    TempFile inst("ld_cli_inst.json", R"({"sizes":[2,2,3],"bound":7})");
    auto roles_path =
        std::filesystem::temp_directory_path() / "ld_cli_roles.json";
    REQUIRE(run_cli({"generate", "--reduction", inst.str(), "--roles",
                     roles_path.string()},
                    &out) == 0);
    REQUIRE(parse_edge_list(out).node_count() == 526);
    std::ifstream rf(roles_path);
    json roles = json::parse(rf);
    REQUIRE(roles["k"] == 175);
    std::filesystem::remove(roles_path);
  }
}

TEST_CASE("cli solve") {
  TempFile chain("ld_cli_chain.txt", write_edge_list(dag_from("A B\n")));
  std::string out, err;

  SECTION("plain") {
    REQUIRE(run_cli({"solve", chain.str()}, &out) == 0);
    json j = json::parse(out);
    REQUIRE(j["width"] == 1);
    REQUIRE(j["optimal"] == true);
    REQUIRE(j["decomposition"]["blocks"].size() == 2);
  }
  SECTION("deterministic output") {
    std::string again;
    REQUIRE(run_cli({"solve", chain.str()}, &out) == 0);
    REQUIRE(run_cli({"solve", chain.str()}, &again) == 0);
    REQUIRE(out == again);
  }
  SECTION("no prune") {
    REQUIRE(run_cli({"solve", chain.str(), "--no-prune"}, &out) == 0);
    REQUIRE(json::parse(out)["width"] == 1);
  }
  SECTION("impossible cause") {
    REQUIRE(run_cli({"solve", chain.str(), "--cause", "B"}, &out) == 1);
    json j = json::parse(out);
    REQUIRE(j["width"].is_null());
    REQUIRE(j["optimal"] == true);
  }
  SECTION("unknown constraint label") {
    REQUIRE(run_cli({"solve", chain.str(), "--cause", "Q"}, &out, &err) == 2);
    REQUIRE(err.find("unknown node label") != std::string::npos);
  }
  SECTION("zero time limit") {
    TempFile g6("ld_cli_cc6.txt", write_edge_list(family("chord_chain", 6)));
    REQUIRE(run_cli({"solve", g6.str(), "--time-limit-ms", "0"}, &out) == 1);
    json j = json::parse(out);
    REQUIRE(j["width"].is_null());
    REQUIRE(j["optimal"] == false);
  }
  SECTION("reads stdin when asked") {
    std::istringstream fake(write_edge_list(dag_from("A B\n")));
    auto* old = std::cin.rdbuf(fake.rdbuf());
    int code = run_cli({"solve", "-"}, &out);
    std::cin.rdbuf(old);
    REQUIRE(code == 0);
    REQUIRE(json::parse(out)["width"] == 1);
  }
}

TEST_CASE("cli verify") {
  Dag chain = dag_from("A B\n");
  TempFile gfile("ld_cli_vchain.txt", write_edge_list(chain));
  std::string out, err;

  SECTION("accepts") {
    TempFile dfile("ld_cli_good.json",
                   decomposition_to_json(
                       chain, ld(2, {{{1}, {1}}, {{0}, {0}}})).dump());
    REQUIRE(run_cli({"verify", gfile.str(), dfile.str()}, &out, &err) == 0);
    REQUIRE(json::parse(out)["ok"] == true);
    REQUIRE(err == "Ok\n");
  }
  SECTION("rejects with the failed condition") {
    TempFile dfile(
        "ld_cli_bad.json",
        R"({"blocks":[{"T":["A","B"],"S":["B"]}],"width":2})");
    REQUIRE(run_cli({"verify", gfile.str(), dfile.str()}, &out, &err) == 1);
    json j = json::parse(out);
    REQUIRE(j["ok"] == false);
    REQUIRE(j["condition"] == "parent_placement");
    REQUIRE_FALSE(err.empty());
  }
  SECTION("width mismatch is an input error") {
    TempFile dfile(
        "ld_cli_mismatch.json",
        R"({"blocks":[{"T":["A","B"],"S":[]}],"width":1})");
    REQUIRE(run_cli({"verify", gfile.str(), dfile.str()}, &out, &err) == 2);
  }
  SECTION("malformed JSON is an input error") {
    TempFile dfile("ld_cli_malformed.json", "{");
    REQUIRE(run_cli({"verify", gfile.str(), dfile.str()}, &out, &err) == 2);
    REQUIRE(err.find("bad JSON") != std::string::npos);
  }
}

TEST_CASE("verify accepts whatever solve emits") {
  const Dag graphs[] = {dag_from("A B\n"), family("chord_chain", 5),
                        family("bipartite_stack", 2), random_dag(6, 0.4, 9)};
  for (const Dag& g : graphs) {
    TempFile gfile("ld_cli_rt_graph.txt", write_edge_list(g));
    std::string out;
    REQUIRE(run_cli({"solve", gfile.str()}, &out) == 0);
    TempFile dfile("ld_cli_rt_decomp.json",
                   json::parse(out)["decomposition"].dump());
    std::string verdict;
    REQUIRE(run_cli({"verify", gfile.str(), dfile.str()}, &verdict) == 0);
    REQUIRE(json::parse(verdict)["ok"] == true);
  }
}

TEST_CASE("cli enumerate and metrics") {
  std::string out, err;
  SECTION("enumerate lists every decomposition") {
    TempFile gfile("ld_cli_echain.txt", write_edge_list(dag_from("A B\n")));
    REQUIRE(run_cli({"enumerate", gfile.str()}, &out) == 0);
    std::istringstream lines(out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
      REQUIRE(json::parse(line).contains("blocks"));
      ++count;
    }
    REQUIRE(count == 4);
  }
  SECTION("enumerate respects the cap") {
    TempFile gfile("ld_cli_ecap.txt", write_edge_list(dag_from("A B\n")));
    REQUIRE(run_cli({"enumerate", gfile.str(), "--cap", "1"}, &out, &err) == 2);
  }
  SECTION("metrics reports the three widths") {
    TempFile gfile("ld_cli_bip2.txt", write_edge_list(family("bipartite", 2)));
    REQUIRE(run_cli({"metrics", gfile.str()}, &out, &err) == 0);
    json j = json::parse(out);
    REQUIRE(j.size() == 4);
    REQUIRE(j["layerwidth"] == 2);
    REQUIRE(j["treewidth"] == 2);
    REQUIRE(j["bandwidth"] == 3);
    REQUIRE(j["bounds_hold"] == true);
    REQUIRE(err.empty());
  }
}
