#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

const std::string kCli = SNDP_CLI;
const std::string kData = SNDP_DATA_DIR;

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "sndp_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TEST(Cli, SolveWritesReport) {
  const auto out = scratch_dir() / "triangle_report.json";
  ASSERT_EQ(run("solve --epsilon 0.1 " + kData + "/triangle.json --out " + out.string()), 0);
  auto rep = nlohmann::json::parse(slurp(out));
  EXPECT_LE(rep["result"]["cost"].get<double>(), 2.2 * 1.5);
  EXPECT_TRUE(rep["result"]["verified"].get<bool>());
  EXPECT_TRUE(rep.contains("timing"));
}

TEST(Cli, InputErrorsExitWithOne) {
  EXPECT_EQ(run("solve " + kData + "/does_not_exist.json"), 1);
  EXPECT_EQ(run("solve --epsilon -1 " + kData + "/triangle.json"), 1);
  EXPECT_EQ(run("solve --jobs 0 " + kData + "/triangle.json"), 1);
  EXPECT_EQ(run("oracle-check --max-vertices 40 --trials 1"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  const auto bad = scratch_dir() / "self_requirement.json";
  std::ofstream(bad) << R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","cost":1}],)"
                     << R"("requirements":[{"u":"b","v":"b","r":1}]})";
  EXPECT_EQ(run("solve " + bad.string()), 1);
  const auto infeasible = scratch_dir() / "infeasible.json";
  std::ofstream(infeasible) << R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","cost":1}],)"
                            << R"("requirements":[{"u":"a","v":"c","r":1}]})";
  EXPECT_EQ(run("solve " + infeasible.string()), 1);
}

TEST(Cli, GenIsReproducible) {
  const auto a = scratch_dir() / "gen_a.json";
  const auto b = scratch_dir() / "gen_b.json";
  ASSERT_EQ(run("gen --vertices 5 --density 0.5 --rmax 2 --seed 1 --out " + a.string()), 0);
  ASSERT_EQ(run("gen --vertices 5 --density 0.5 --rmax 2 --seed 1 --out " + b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(run("lp-only --epsilon 0.1 " + a.string()), 0);
}

}  // namespace
