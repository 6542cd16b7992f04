#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/runner.hpp"

using namespace sc;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "sc_runner_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("bound command on the constant kernel") {
  auto dir = fresh_dir("bound");
  nlohmann::json config = {
      {"command", "bound"},
      {"kernel", {{"name", "constant"}, {"c", -1.0}}},
      {"measure", nlohmann::json::array(
                      {{{"xi", {0.25}}, {"eta", {0.75}}, {"w", 0.5}},
                       {{"xi", {0.75}}, {"eta", {0.25}}, {"w", 0.5}}})},
      {"t", 0.0},
      {"seed", 3},
  };
  RunOutcome out = run_config(config, dir.string());
  REQUIRE(out.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["bound"]["c_t"].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep["bound"]["integer_bound"].get<long long>() == 1);
  CHECK(std::filesystem::exists(dir / "bound.csv"));
}

TEST_CASE("verify command agrees with the oracle and exits zero") {
  auto dir = fresh_dir("verify");
  nlohmann::json config = {
      {"command", "verify"},
      {"kernel", {{"name", "constant"}, {"c", -1.0}}},
      {"measure", "auto"},
      {"t", -0.5},
      {"oracle", {{"grids", {8, 16, 32}}}},
      {"seed", 1},
  };
  RunOutcome out = run_config(config, dir.string());
  REQUIRE(out.message == "");
  REQUIRE(out.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["oracle"]["converged"].get<bool>());
  CHECK_FALSE(rep["violation"].get<bool>());
}

TEST_CASE("proof-trace command emits one record per check") {
  auto dir = fresh_dir("proof");
  nlohmann::json config = {
      {"command", "proof-trace"},
      {"kernel", {{"name", "mexican-hat"}, {"d", 1}}},
      {"measure",
       nlohmann::json::array({{{"xi", {-4.0}}, {"eta", {-2.8}}, {"w", 0.5}},
                              {{"xi", {-2.8}}, {"eta", {-4.0}}, {"w", 0.5}},
                              {{"xi", {0.0}}, {"eta", {1.2}}, {"w", 0.5}},
                              {{"xi", {1.2}}, {"eta", {0.0}}, {"w", 0.5}},
                              {{"xi", {2.5}}, {"eta", {3.9}}, {"w", 0.5}},
                              {{"xi", {3.9}}, {"eta", {2.5}}, {"w", 0.5}}})},
      {"t", 0.0},
      {"proof", {{"n", 2}, {"configs", 5}, {"samples", 500}}},
      {"seed", 11},
  };
  RunOutcome out = run_config(config, dir.string());
  REQUIRE(out.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(slurp(dir / "report.json"));
  REQUIRE(rep.contains("checks"));
  CHECK(rep["checks"].size() == 5 * 4 + 1);
  for (const auto& ch : rep["checks"]) CHECK(ch["pass"].get<bool>());
  CHECK(rep["all_pass"].get<bool>());
}

TEST_CASE("dn-gap command writes the sweep table") {
  auto dir = fresh_dir("dn");
  nlohmann::json config = {
      {"command", "dn-gap"},
      {"dn",
       {{"box", {1.0, 1.0}}, {"lambda", 4.0}, {"r", {1.0, 2.0}}, {"n_sphere", 64}, {"n_D", 0}}},
      {"seed", 1},
  };
  RunOutcome out = run_config(config, dir.string());
  REQUIRE(out.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["reports"].size() == 2);
  std::string csv = slurp(dir / "sweep.csv");
  CHECK(csv.rfind("lambda,r,c_t,raw_bound,fs_bound,nystrom_count,dn_lower\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("optimize command records the trace and the measure") {
  auto dir = fresh_dir("optimize");
  nlohmann::json config = {
      {"command", "optimize"},
      {"kernel", {{"name", "mexican-hat"}, {"d", 1}}},
      {"measure", "auto"},
      {"t", 0.0},
      {"optimize", {{"pool", 12}, {"max_atoms", 6}, {"reweight_iters", 5}}},
      {"seed", 2},
  };
  RunOutcome out = run_config(config, dir.string());
  REQUIRE(out.exit_code == 0);
  CHECK(std::filesystem::exists(dir / "trace.csv"));
  CHECK(std::filesystem::exists(dir / "measure.json"));
  nlohmann::json rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["final_c"].get<double>() >= rep["greedy_c"].get<double>() - 1e-12);
}

TEST_CASE("convolution command") {
  auto dir = fresh_dir("conv");
  nlohmann::json config = {
      {"command", "convolution"},
      {"kernel", {{"name", "mexican-hat"}, {"d", 1}}},
      {"t", 0.0},
      {"convolution", {{"search_radius", 20.0}, {"tail_radius", 60.0}, {"grid_n", 4001}}},
      {"seed", 1},
  };
  RunOutcome out = run_config(config, dir.string());
  REQUIRE(out.exit_code == 0);
  nlohmann::json rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["sup"]["infinite"].get<bool>());
  CHECK(rep["approximate"].get<bool>());
}

TEST_CASE("verify raises the alarm when the bound exceeds a converged count") {
  // narrow negative bump: every oracle eigenvalue sits far above t = -0.5,
  // while spread diagonal atoms inflate c_t; the mismatch must exit with 2
  auto dir = fresh_dir("alarm");
  nlohmann::json atoms = nlohmann::json::array();
  for (int i = 0; i < 10; ++i) {
    double x = (i + 0.5) / 10.0;
    atoms.push_back({{"xi", {x}}, {"eta", {x}}, {"w", 1.0}});
  }
  nlohmann::json config = {
      {"command", "verify"},
      {"kernel", {{"name", "gaussian-bump"}, {"amp", -1.0}, {"width", 1e6}}},
      {"measure", atoms},
      {"t", -0.5},
      {"oracle", {{"grids", {64, 128, 256}}}},
      {"seed", 1},
  };
  RunOutcome out = run_config(config, dir.string());
  CHECK(out.exit_code == 2);
  nlohmann::json rep = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(rep["violation"].get<bool>());
  CHECK(rep["oracle"]["converged"].get<bool>());
}

TEST_CASE("verify dumps eigenvalues when asked") {
  auto dir = fresh_dir("evdump");
  nlohmann::json config = {
      {"command", "verify"},
      {"kernel", {{"name", "constant"}, {"c", -1.0}}},
      {"measure", "auto"},
      {"t", -0.5},
      {"oracle", {{"grids", {8, 16}}, {"dump_eigenvalues", true}}},
      {"seed", 1},
  };
  REQUIRE(run_config(config, dir.string()).exit_code == 0);
  std::string csv = slurp(dir / "eigenvalues.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 16); // one eigenvalue per line
  bool starts_at_minus_one = csv.rfind("-0.99", 0) == 0 || csv.rfind("-1", 0) == 0;
  CHECK(starts_at_minus_one); // ascending list begins at the -1 eigenvalue
}

TEST_CASE("malformed configs exit with code 1 and a diagnostic") {
  nlohmann::json config = {{"command", "bound"}}; // no kernel, no measure
  RunOutcome out = run_config(config);
  CHECK(out.exit_code == 1);
  CHECK(!out.message.empty());

  nlohmann::json unknown = {{"command", "explode"}, {"kernel", {{"name", "constant"}}}};
  CHECK(run_config(unknown).exit_code == 1);
}

TEST_CASE("reports are byte-identical across reruns with the same seed") {
  nlohmann::json config = {
      {"command", "proof-trace"},
      {"kernel", {{"name", "mexican-hat"}, {"d", 1}}},
      {"measure",
       nlohmann::json::array({{{"xi", {-4.0}}, {"eta", {-2.8}}, {"w", 0.5}},
                              {{"xi", {-2.8}}, {"eta", {-4.0}}, {"w", 0.5}},
                              {{"xi", {0.0}}, {"eta", {1.2}}, {"w", 0.5}},
                              {{"xi", {1.2}}, {"eta", {0.0}}, {"w", 0.5}},
                              {{"xi", {2.5}}, {"eta", {3.9}}, {"w", 0.5}},
                              {{"xi", {3.9}}, {"eta", {2.5}}, {"w", 0.5}}})},
      {"t", 0.0},
      {"proof", {{"n", 2}, {"configs", 3}, {"samples", 300}}},
      {"seed", 99},
  };
  auto d1 = fresh_dir("det1");
  auto d2 = fresh_dir("det2");
  REQUIRE(run_config(config, d1.string()).exit_code == 0);
  REQUIRE(run_config(config, d2.string()).exit_code == 0);
  CHECK(slurp(d1 / "report.json") == slurp(d2 / "report.json"));

  auto d3 = fresh_dir("det3");
  REQUIRE(run_config(config, d3.string(), 100).exit_code == 0);
  CHECK(slurp(d1 / "report.json") != slurp(d3 / "report.json"));
}

TEST_CASE("json writer emits round-trip-exact floats") {
  nlohmann::json j = {{"x", 0.1}, {"y", 1.0 / 3.0}, {"n", 7}};
  std::string s = dump_json_17(j);
  nlohmann::json back = nlohmann::json::parse(s);
  CHECK(back["x"].get<double>() == 0.1);
  CHECK(back["y"].get<double>() == 1.0 / 3.0);
  CHECK(back["n"].get<int>() == 7);
}
