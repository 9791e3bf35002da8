#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "segal/app.hpp"

namespace fs = std::filesystem;
using segal::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kCorpus = SEGAL_CORPUS_DIR;

std::string type_file(const std::string& name) { return kCorpus + "/types/" + name + ".json"; }

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("segal_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("every library operation is reachable from the dispatch table") {
  // Written out independently of commands().
  const std::vector<std::string> operations{
      "validate_type",   "compose_types",    "disjoint_union",       "is_stable",
      "euler_characteristic", "mu_of_linear", "dilatation_K",        "transform_mu",
      "pullback_mu",     "teichmuller_distance", "field_distance",   "acs_from_frame",
      "mu_from_acs",     "sew_sections",     "qs_bound",             "corner_map",
      "smooth_twist",    "bump",             "normalize_quad",       "module_sc",
      "module_rect",     "check_geometric_qc", "shuffle_product",    "boundary",
      "check_chain_map", "check_associativity", "order_step",        "order_sequence",
      "tau_minus1",      "flatten_step",     "verify_orders",        "run_acceptance"};
  std::set<std::string> reachable;
  for (const auto& c : segal::cli::commands()) reachable.insert(c.operations.begin(), c.operations.end());
  for (const auto& op : operations) {
    INFO(op);
    CHECK(reachable.contains(op));
  }
}

TEST_CASE("every dispatch row is a live subcommand") {
  const std::set<std::pair<std::string, std::string>> required{
      {"types", "validate"}, {"types", "compose"}, {"types", "union"},  {"types", "stability"},
      {"belt", "distance"},  {"belt", "transform"}, {"belt", "pullback"}, {"belt", "sew"},
      {"qs", "bound"},       {"qs", "corner"},     {"qs", "twist"},     {"module", "compute"},
      {"module", "check-qc"}, {"chains", "product"}, {"chains", "check"}, {"appb", "orders"},
      {"appb", "flatten"},   {"", "accept"}};
  std::set<std::pair<std::string, std::string>> present;
  for (const auto& c : segal::cli::commands()) {
    present.insert({c.group, c.name});
    std::vector<std::string> args;
    if (!c.group.empty()) args.push_back(c.group);
    args.push_back(c.name);
    args.push_back("--help");
    const auto r = cli(args);
    INFO(c.group << " " << c.name);
    CHECK(r.code == 0);
    CHECK(r.out.find(c.summary) != std::string::npos);
  }
  for (const auto& r : required) {
    INFO(r.first << " " << r.second);
    CHECK(present.contains(r));
  }
}

TEST_CASE("types compose of two corpus files exits 0 with a composed type") {
  const auto r = cli({"types", "compose", type_file("pants_merge"), type_file("pants_split"), "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == "segal.octype/1");
  const auto t = segal::cobordism::parse_type(r.out);
  CHECK(segal::cobordism::validate_type(t).ok());
  CHECK(t.components.size() == 1);
  CHECK(t.components[0].genus == 0);
  CHECK(t.components[0].boundary_circles == 4);

  const auto loop = cli({"types", "compose", type_file("pants_split"), type_file("pants_merge"), "--format", "json"});
  REQUIRE(loop.code == 0);
  const auto torus = segal::cobordism::parse_type(loop.out);
  CHECK(torus.components[0].genus == 1);
  CHECK(torus.components[0].boundary_circles == 2);
}

TEST_CASE("chains check up to degree 4 passes") {
  const auto r = cli({"chains", "check", "--max-degree", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("pass") != std::string::npos);
}

TEST_CASE("input errors exit 2") {
  const fs::path dir = scratch_dir("input");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{\"components\": [\n";

  SECTION("malformed JSON reports its location") {
    const auto r = cli({"types", "validate", bad.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
  }
  SECTION("missing file") { CHECK(cli({"types", "validate", (dir / "absent.json").string()}).code == 2); }
  SECTION("unknown subcommand") { CHECK(cli({"frobnicate"}).code == 2); }
  SECTION("bad option value") { CHECK(cli({"--format", "xml", "appb", "orders"}).code == 2); }
  SECTION("bad number") { CHECK(cli({"module", "compute", "--quad", "0,1,x,3"}).code == 2); }
  SECTION("unknown tolerance name") { CHECK(cli({"accept", "--only", "1", "--tol", "nope=1"}).code == 2); }
  SECTION("non-positive tolerance") { CHECK(cli({"accept", "--only", "3", "--tol", "stretch_fd=-1"}).code == 2); }
  SECTION("missing corpus") { CHECK(cli({"accept", "--corpus", (dir / "nowhere").string()}).code == 2); }
}

std::string broken_cylinder() {
  auto j = nlohmann::json::parse(std::ifstream(type_file("cylinder")));
  j["components"][0]["boundary_circles"] = 3;
  return j.dump(2);
}

TEST_CASE("check failures exit 1") {
  const fs::path dir = scratch_dir("check");
  const fs::path bad = dir / "broken.json";
  std::ofstream(bad) << broken_cylinder();

  SECTION("types validate reports the violation") {
    const auto r = cli({"types", "validate", type_file("cylinder"), bad.string(), "--format", "json"});
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("files")[0].at("valid") == true);
    CHECK(j.at("files")[1].at("valid") == false);
    CHECK(j.at("files")[1].at("violations")[0].at("code") == "boundary count mismatch");
  }
  SECTION("an invalid operand is an input error for compose") {
    CHECK(cli({"types", "compose", type_file("cylinder"), bad.string()}).code == 2);
  }
}

TEST_CASE("a corpus with a broken type fails criterion 2 by name") {
  const fs::path dir = scratch_dir("broken_corpus");
  fs::copy(kCorpus, dir / "corpus", fs::copy_options::recursive);
  std::ofstream(dir / "corpus" / "types" / "broken_cylinder.json") << broken_cylinder();
  const auto r = cli({"accept", "--corpus", (dir / "corpus").string(), "--only", "2", "--format", "json"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("criteria").size() == 1);
  const auto& c = j.at("criteria")[0];
  CHECK(c.at("id") == 2);
  CHECK(c.at("status") == "FAIL");
  CHECK(c.at("detail").get<std::string>().find("types/broken_cylinder") != std::string::npos);
  CHECK(j.at("ok") == false);
}

TEST_CASE("acceptance JSON report has a stable schema") {
  const auto r = cli({"accept", "--only", "1,5,9", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema") == "segal.acceptance/1");
  std::set<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.insert(k);
  CHECK(keys == std::set<std::string>{"schema", "seed", "criteria", "summary", "ok"});
  REQUIRE(j.at("criteria").size() == 3);
  for (const auto& c : j.at("criteria")) {
    std::set<std::string> ck;
    for (const auto& [k, v] : c.items()) ck.insert(k);
    CHECK(ck == std::set<std::string>{"id", "name", "status", "measured", "tolerance", "detail"});
    CHECK(c.at("status") == "PASS");
  }
  CHECK(j.at("summary").at("pass") == 3);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands{
      {"accept", "--only", "1,4,5,10", "--seed", "7", "--format", "json"},
      {"module", "check-qc", "3", "--corpus", kCorpus + "/quads.json", "--format", "csv"},
      {"qs", "bound", kCorpus + "/functions/exp_window.csv", "--format", "json"},
      {"appb", "flatten", "--rho", "sine:0.1", "--k", "1", "--format", "json"},
      {"belt", "sew", kCorpus + "/fields/left_a.json", kCorpus + "/fields/right_a.json"},
      {"chains", "product", "2", "1", "--boundary", "--format", "csv"}};
  for (const auto& args : commands) {
    const auto a = cli(args), b = cli(args);
    INFO(args[0] << " " << args[1]);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("seeded acceptance runs repeat exactly") {
  const auto a = cli({"accept", "--only", "1", "--seed", "3", "--format", "json"});
  const auto b = cli({"accept", "--only", "1", "--seed", "3", "--format", "json"});
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out).at("seed") == 3);
}

TEST_CASE("--out writes the report to a file") {
  const fs::path dir = scratch_dir("out");
  const fs::path file = dir / "orders.csv";
  const auto r = cli({"appb", "orders", "--k", "3", "--format", "csv", "--out", file.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ostringstream s;
  s << std::ifstream(file).rdbuf();
  CHECK(s.str() == "step,m,n,min\n0,inf,0,0\n1,1,2,1\n2,3,2,2\n3,3,4,3\n");
}

TEST_CASE("subcommand outputs carry the expected values") {
  SECTION("module of a rectangle") {
    const auto j = nlohmann::json::parse(cli({"module", "compute", "--rect", "3,1", "--format", "json"}).out);
    CHECK(j.at("module").get<double>() == Catch::Approx(3.0));
  }
  SECTION("symmetric quad has module 1") {
    const auto r = cli({"module", "compute", "--quad", "0,1,2,inf", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("module").get<double>() == Catch::Approx(1.0).epsilon(1e-12));
  }
  SECTION("dilatation of a horizontal stretch") {
    const auto j = nlohmann::json::parse(cli({"belt", "mu", "--matrix", "3,0,0,1", "--format", "json"}).out);
    CHECK(j.at("K").get<double>() == Catch::Approx(3.0));
  }
  SECTION("shuffle product of two 1-simplices has two terms") {
    const auto r = cli({"chains", "product", "1", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("terms").size() == 2);
  }
  SECTION("boundary reparametrisation keeps heights") {
    const auto j =
        nlohmann::json::parse(cli({"appb", "tau", "--rho", "linear:2", "--points", "1,0.1", "--format", "json"}).out);
    CHECK(j.at("points")[0].at("image")[0].get<double>() == Catch::Approx(2.0));
    CHECK(j.at("points")[0].at("image")[1].get<double>() == Catch::Approx(0.1));
  }
  SECTION("flatten reports the predicted orders") {
    const auto r = cli({"appb", "flatten", "--rho", "sine:0.1", "--k", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("flatten").at("ok") == true);
    for (const auto& row : j.at("order_fits"))
      if (row.at("k") == 1) CHECK(row.at("predicted") == (row.at("component") == "A" ? 3 : 2));
  }
}
