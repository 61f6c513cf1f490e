#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "doctest.h"
#include "sublin/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = sublin::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sublin_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("solve on the manufactured problem") {
  const fs::path dir = scratch("solve");
  const fs::path cfg =
      write_config(dir, {{"weight", {{"builtin", "manufactured"}, {"params", {{"q", 0.5}}}}}, {"grid", {{"n_interior", 400}}}});
  Run r = run({"solve", "--config", cfg.string(), "--out", (dir / "out").string(), "--q", "0.5"});
  REQUIRE_MESSAGE(r.code == sublin::cli::kOk, r.err);
  const auto t = sublin::report::read_csv(dir / "out" / "solution.csv");
  CHECK(t.header == std::vector<std::string>{"x", "u", "a"});
  const auto x = t.numeric("x"), u = t.numeric("u");
  const double h = x[1] - x[0];
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(u[i] - std::sin(x[i])) <= h * h);

  const json rep = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(rep["result"]["status"] == "converged");
  CHECK(rep["result"]["classification"]["kind"] == "P0");
  CHECK(rep["grid"]["n_interior"] == 400);
  CHECK(rep["assertions"]["apriori_upper"]["passed"] == 1);
  CHECK(rep.contains("timings"));
  CHECK(rep["config"]["solve"]["q"] == 0.5);
}

TEST_CASE("flags override the config") {
  const fs::path dir = scratch("override");
  const fs::path cfg = write_config(dir, {{"weight", {{"builtin", "two_mode"}}}, {"grid", {{"n_interior", 300}}},
                                          {"solve", {{"q", 0.3}, {"method", "monotone"}}}});
  Run r = run({"solve", "--config", cfg.string(), "--out", (dir / "out").string(), "--n", "120", "--q", "0.6"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const json rep = json::parse(slurp(dir / "out" / "report.json"));
  CHECK(rep["grid"]["n_interior"] == 120);
  CHECK(rep["result"]["q"] == 0.6);
  CHECK(rep["config"]["solve"]["method"] == "monotone");
}

TEST_CASE("config errors exit 1 and name the field") {
  const fs::path dir = scratch("errors");
  const fs::path cfg = write_config(dir, {{"grid", {{"n_interior", 50}}}});
  Run r = run({"solve", "--config", cfg.string(), "--out", dir.string()});
  CHECK(r.code == sublin::cli::kConfigError);
  const json e = json::parse(r.err);
  CHECK(e["error"]["field"] == "weight");
  CHECK(e["error"]["code"] == "config-error");

  const fs::path bad = write_config(dir, {{"weight", {{"builtin", "nope"}}}});
  r = run({"solve", "--config", bad.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"]["field"] == "weight");

  const fs::path q = write_config(dir, {{"weight", {{"builtin", "two_mode"}}}, {"solve", {{"q", "half"}}}});
  r = run({"solve", "--config", q.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"]["field"] == "solve.q");

  r = run({"solve", "--config", (dir / "missing.json").string()});
  CHECK(r.code == 1);
  r = run({"frobnicate"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err).contains("error"));
}

TEST_CASE("solver failures exit 2") {
  const fs::path dir = scratch("fail");
  const fs::path cfg = write_config(
      dir, {{"weight", {{"builtin", "two_mode"}}}, {"grid", {{"n_interior", 100}}}, {"solver", {{"max_iter", 1}}}});
  Run r = run({"solve", "--config", cfg.string(), "--out", dir.string(), "--init", "sub", "--q", "0.5"});
  CHECK(r.code == sublin::cli::kSolverFailure);

  const fs::path flat = write_config(dir, {{"weight", {{"builtin", "cosine_zero_mean"}}}, {"grid", {{"n_interior", 100}}}});
  r = run({"singular", "--config", flat.string(), "--out", dir.string()});
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"]["code"] == "precondition-failed");
}

TEST_CASE("eig and groundstate") {
  const fs::path dir = scratch("eig");
  const fs::path cfg = write_config(dir, {{"weight", {{"constant", 1.0}, {"domain", {0.0, M_PI}}}}, {"grid", {{"n_interior", 1000}}}});
  Run r = run({"eig", "--config", cfg.string(), "--out", dir.string()});
  REQUIRE(r.code == 0);
  const json e = json::parse(r.out);
  CHECK(std::abs(e["lambda1"].get<double>() - 1.0) < 1e-3);
  CHECK(e["transversality"].get<double>() == doctest::Approx(1.0));
  CHECK(e.contains("t_star"));
  CHECK(e.contains("residual"));

  const fs::path two = write_config(dir, {{"weight", {{"builtin", "two_mode"}, {"params", {{"kappa", -2.0}}}}}, {"grid", {{"n_interior", 200}}}});
  r = run({"eig", "--config", two.string(), "--out", dir.string(), "--subdomain", "1"});
  CHECK(r.code == 0);
  r = run({"eig", "--config", two.string(), "--out", dir.string(), "--subdomain", "7"});
  CHECK(r.code == 1);

  r = run({"groundstate", "--config", two.string(), "--out", dir.string(), "--q", "0.5", "--starts", "3", "--seed", "5"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const json gs = json::parse(slurp(dir / "report.json"));
  CHECK(gs["result"]["starts"].size() == 4);
  CHECK(gs["config"]["seed"] == 5);
  CHECK(fs::exists(dir / "groundstate.csv"));
}

TEST_CASE("curve output is byte-identical across runs") {
  const fs::path dir = scratch("curve");
  const fs::path cfg = write_config(dir, {{"weight", {{"builtin", "two_mode"}}}, {"grid", {{"n_interior", 200}}}, {"seed", 3}});
  std::vector<std::string> csv;
  for (const char* sub : {"a", "b"}) {
    Run r = run({"curve", "--config", cfg.string(), "--out", (dir / sub).string(), "--qmin", "0.1", "--qmax", "0.95",
                 "--steps", "6", "--geometric-tail", "--samples"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    csv.push_back(slurp(dir / sub / "curve.csv"));
    CHECK(fs::exists(dir / sub / "sample_005.csv"));
  }
  CHECK(csv[0] == csv[1]);
  CHECK(slurp(dir / "a" / "sample_003.csv") == slurp(dir / "b" / "sample_003.csv"));
  CHECK(csv[0].rfind("q,sup_norm,residual,classification,g_rescaled,gap_q0\n", 0) == 0);

  const json a = json::parse(slurp(dir / "a" / "report.json"));
  const json b = json::parse(slurp(dir / "b" / "report.json"));
  CHECK(a["result"] == b["result"]);
  CHECK(a["limits"] == b["limits"]);
}

TEST_CASE("singular and report") {
  const fs::path dir = scratch("singular");
  const fs::path cfg = write_config(dir, {{"weight", {{"builtin", "two_mode"}}}, {"grid", {{"n_interior", 200}}}});
  Run r = run({"singular", "--config", cfg.string(), "--out", (dir / "s").string(), "--gmax", "0.05", "--steps", "6"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  const auto t = sublin::report::read_csv(dir / "s" / "singular.csv");
  CHECK(t.rows.size() == 6);
  CHECK(t.header == std::vector<std::string>{"gamma", "sup_norm", "residual", "classification", "gap_s"});

  r = run({"curve", "--config", cfg.string(), "--out", (dir / "c").string(), "--qmin", "0.5", "--qmax", "0.99", "--steps",
           "8", "--geometric-tail"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  r = run({"solve", "--config", cfg.string(), "--out", (dir / "u").string()});
  REQUIRE(r.code == 0);
  r = run({"report", "--input", (dir / "c" / "report.json").string(), (dir / "u" / "report.json").string(), "--out",
           (dir / "fig").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(fs::exists(dir / "fig" / "figure_curves.csv"));
  CHECK(fs::exists(dir / "fig" / "figure_solutions.csv"));
  const json regimes = json::parse(slurp(dir / "fig" / "regimes.json"));
  REQUIRE(regimes.size() == 1);
  CHECK(regimes[0]["regime"].is_string());

  r = run({"report", "--input", (dir / "nothing.json").string(), "--out", dir.string()});
  CHECK(r.code == 1);
}

TEST_CASE("corpus subcommands") {
  Run r = run({"corpus", "list"});
  REQUIRE(r.code == 0);
  const json list = json::parse(r.out);
  CHECK(list.size() >= 9);

  r = run({"corpus", "check", "--id", "prop51", "--q", "0.5", "--n", "399"});
  // The all-node residual check fails by construction (O(h) at the glue nodes).
  CHECK(r.code == sublin::cli::kSolverFailure);
  CHECK(r.out.find("PASS gluing") != std::string::npos);
  CHECK(r.out.find("FAIL u1_residual_all_nodes") != std::string::npos);

  r = run({"corpus", "check", "--id", "sine"});
  CHECK(r.code == 1);
}

TEST_CASE("solve from a file and from zero") {
  const fs::path dir = scratch("init");
  const fs::path cfg = write_config(dir, {{"weight", {{"builtin", "two_mode"}}}, {"grid", {{"n_interior", 150}}}});
  Run r = run({"solve", "--config", cfg.string(), "--out", (dir / "a").string(), "--q", "0.4"});
  REQUIRE(r.code == 0);
  r = run({"solve", "--config", cfg.string(), "--out", (dir / "b").string(), "--q", "0.4", "--init", "file", "--init-file",
           (dir / "a" / "solution.csv").string()});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  CHECK(json::parse(r.out)["iterations"].get<int>() <= 1);

  r = run({"solve", "--config", cfg.string(), "--out", (dir / "z").string(), "--init", "zero"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["status"] == "trivial-solution");
}
