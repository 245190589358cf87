#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "sectorlab/catalog_store.hpp"
#include "sectorlab/json_io.hpp"
#include "sectorlab/quotient_spectra.hpp"

using namespace sectorlab;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SECTORLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path work_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "sectorlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("invalid inputs exit with code 2") {
  CHECK(run("esd --dim 0 --seed 1").exit_code == 2);
  CHECK(run("esd --word 'X*Y' --dim 8 --seed 1").exit_code == 2);
  CHECK(run("esd --word 'X +' --dim 8 --seed 1").exit_code == 2);
  CHECK(run("freelaw --trials 0 --seed 1").exit_code == 2);
  CHECK(run("enumerate --max-degree 8").exit_code == 2);
  CHECK(run("enumerate --max-degree 0").exit_code == 2);
  CHECK(run("sector --seed 1").exit_code == 2);
  CHECK(run("sector --seed 1 --target /nonexistent/law.json").exit_code == 2);
  CHECK(run("esd --dim 8 --seed 1 --no-such-flag").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("sector --seed 1 --epsilon -1 --cover-id 1:0,0 --catalog x").exit_code == 2);

  const auto empty = work_dir() / "empty_catalog.json";
  save_catalog(Catalog{}, empty);
  CHECK(run("classify --law 2 --catalog " + empty.string()).exit_code == 2);

  const auto garbage = work_dir() / "garbage.json";
  std::ofstream(garbage) << "{not json";
  CHECK(run("classify --law 2 --catalog " + garbage.string()).exit_code == 2);
  CHECK(run("sector --seed 1 --target " + garbage.string()).exit_code == 2);
}

TEST_CASE("resource limits exit with code 3") {
  CHECK(run("esd --dim 100000 --seed 1").exit_code == 3);
}

TEST_CASE("help exits cleanly") { CHECK(run("--help").exit_code == 0); }

TEST_CASE("esd output") {
  const auto r = run("esd --dim 256 --seed 4");
  REQUIRE(r.exit_code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["word"] == "X");
  CHECK(j["dim"] == 256);
  CHECK(j["ks_to_semicircle"].get<double>() < 0.05);
  CHECK(std::abs(j["moments"][1].get<double>() - 1.0) < 0.1);

  const auto csv = run("esd --dim 64 --seed 4 --format csv --bins 8");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("bin_center,mass", 0) == 0);
}

TEST_CASE("freelaw output") {
  const auto r = run("freelaw --word 'X*Y + Y*X' --dim 64 --trials 2 --seed 7");
  REQUIRE(r.exit_code == 0);
  const auto j = Json::parse(r.out);
  const std::vector<std::string> expected{"0", "2", "0", "10", "0", "66"};
  CHECK(j["moments"].get<std::vector<std::string>>() == expected);
  CHECK(j["mc_dim"] == 64);
}

TEST_CASE("enumerate output") {
  const auto r = run("enumerate --max-degree 3 --word X");
  REQUIRE(r.exit_code == 0);
  const auto j = Json::parse(r.out);
  REQUIRE(j["degrees"].size() == 3);
  CHECK(j["degrees"][1]["transitive"] == 3);
  CHECK(j["degrees"][2]["transitive"] == 7);
  CHECK(j["degrees"][2]["galois"] == 4);

  const auto cat = work_dir() / "cat3.json";
  REQUIRE(run("enumerate --max-degree 3 --word X --out " + cat.string()).exit_code == 0);
  const auto loaded = load_catalog(cat);
  CHECK(loaded.entries.size() == 11);
}

TEST_CASE("sector and classify against a catalog") {
  const auto cat = work_dir() / "cat2.json";
  REQUIRE(run("enumerate --max-degree 2 --word X --out " + cat.string()).exit_code == 0);
  const auto s = run("sector --cover-id 2:10,01 --catalog " + cat.string() + " --dim 32 --trials 10 --seed 3");
  REQUIRE(s.exit_code == 0);
  CHECK(s.out.rfind("m,trials,hits,p_hat,rate_hat", 0) == 0);
  CHECK(s.out.find("32,10,0,0,") != std::string::npos);
  CHECK(run("sector --cover-id 9:x --catalog " + cat.string() + " --seed 3").exit_code == 2);

  const auto law = work_dir() / "z2.json";
  std::ofstream(law) << R"({"atoms": [-2, 2], "weights": [0.5, 0.5]})";
  const auto c = run("classify --law " + law.string() + " --catalog " + cat.string());
  REQUIRE(c.exit_code == 0);
  const auto j = Json::parse(c.out);
  CHECK(j["distance"].get<double>() <= kLevyResolution);
  CHECK(j["ambiguous"] == true);
}

TEST_CASE("joint classification recovers a Z/3 cover that single words cannot") {
  const auto cat = work_dir() / "cat3_words.json";
  REQUIRE(run("enumerate --max-degree 3 --out " + cat.string()).exit_code == 0);
  const auto z3 = quotient_from_cover(
      make_cover(Permutation::identity(3), Permutation::from_cycles("(1 2 3)", 3)));
  std::string args = "classify --catalog " + cat.string();
  int i = 0;
  for (const char* w : {"X", "X + Y", "X*Y + Y*X"}) {
    const auto path = work_dir() / ("z3_law_" + std::to_string(i++) + ".json");
    std::ofstream(path) << measure_to_json(quotient_spectral_law(z3, parse_polynomial(w)).law).dump();
    args += " --law " + path.string() + " --word '" + w + "'";
  }
  const auto r = run(args);
  REQUIRE(r.exit_code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["best_cover"] == "3:012,120");
  CHECK(j["ambiguous"] == false);
  CHECK(j["distance"].get<double>() <= kLevyResolution);

  const auto single = run("classify --catalog " + cat.string() + " --law " + (work_dir() / "z3_law_0.json").string());
  REQUIRE(single.exit_code == 0);
  const auto k = Json::parse(single.out);
  CHECK(k["ambiguous"] == true);
  const auto tied = k["tied_covers"].get<std::vector<std::string>>();
  CHECK(std::find(tied.begin(), tied.end(), "3:012,120") != tied.end());
}

TEST_CASE("repeated runs are byte-identical") {
  for (const char* args : {"esd --dim 40 --seed 9", "freelaw --dim 64 --trials 3 --seed 9",
                           "enumerate --max-degree 3"}) {
    const auto a = run(args);
    const auto b = run(args);
    const auto c = run(std::string(args) + " --threads 4");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
  }
}
