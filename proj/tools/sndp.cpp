#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sndp/error.hpp"
#include "sndp/instance_io.hpp"
#include "sndp/run.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sndp::InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sndp::InputError("cannot write " + path);
  out << text;
}

void print_error(const char* kind, const std::string& detail, const std::string& invariant = "") {
  nlohmann::ordered_json err;
  err["error"] = kind;
  if (!invariant.empty()) err["invariant"] = invariant;
  err["detail"] = detail;
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative rounding for survivable network design"};
  app.require_subcommand(1);

  sndp::RunConfig config;
  std::string instance_path;
  std::string out_path;
  std::optional<double> lp_tolerance;
  std::string selection = "all";

  auto add_solver_options = [&](CLI::App* cmd) {
    cmd->add_option("--epsilon", config.epsilon, "Approximation slack: output is within 2(1+epsilon) of the LP")
        ->capture_default_str();
    cmd->add_flag("--rational", config.rational, "Certify every LP with exact rational arithmetic");
    cmd->add_option("--jobs", config.jobs, "Residual LPs solved concurrently")->capture_default_str();
    cmd->add_option("--seed", config.seed, "Seed recorded in the report")->capture_default_str();
    cmd->add_option("--lp-tolerance", lp_tolerance, "Per-LP certified tolerance (default ln(1+epsilon)/|E|)");
    cmd->add_option("--selection", selection,
                    "Residual LP selection: 'all' solves every pinned LP, 'certified' stops at the first "
                    "candidate within tolerance of the unpinned LP's dual bound")
        ->check(CLI::IsMember({"certified", "all"}))
        ->capture_default_str();
    cmd->add_option("instance", instance_path, "Instance file")->required();
    cmd->add_option("--out", out_path, "Report path (default stdout)");
  };

  auto* solve_cmd = app.add_subcommand("solve", "Integral solution with certified ratio");
  add_solver_options(solve_cmd);
  auto* lp_cmd = app.add_subcommand("lp-only", "Solve the LP relaxation and report primal and dual");
  add_solver_options(lp_cmd);

  auto* check_cmd = app.add_subcommand("oracle-check", "Cross-check fast routines against exhaustive oracles");
  check_cmd->add_option("--max-vertices", config.max_vertices)->capture_default_str();
  check_cmd->add_option("--trials", config.trials)->capture_default_str();
  check_cmd->add_option("--seed", config.seed)->capture_default_str();
  double check_epsilon = 0.25;
  check_cmd->add_option("--epsilon", check_epsilon, "Slack for the end-to-end and residual LP properties")
      ->capture_default_str();
  check_cmd->add_option("--out", out_path, "Report path (default stdout)");

  int gen_vertices = 10;
  double gen_density = 0.3;
  int gen_rmax = 2;
  std::uint64_t gen_seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random instance");
  gen_cmd->add_option("--vertices", gen_vertices)->capture_default_str();
  gen_cmd->add_option("--density", gen_density)->capture_default_str();
  gen_cmd->add_option("--rmax", gen_rmax)->capture_default_str();
  gen_cmd->add_option("--seed", gen_seed)->capture_default_str();
  gen_cmd->add_option("--out", out_path, "Instance path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("input", e.what());
    return 1;
  }

  try {
    if (gen_cmd->parsed()) {
      write_output(sndp::serialize_instance(sndp::generate_instance(gen_seed, gen_vertices, gen_density, gen_rmax)),
                   out_path);
      return 0;
    }
    config.lp_tolerance = lp_tolerance;
    config.selection = selection == "certified" ? sndp::Selection::certified : sndp::Selection::all;
    std::optional<sndp::Instance> instance;
    if (solve_cmd->parsed()) {
      config.mode = sndp::Mode::solve;
    } else if (lp_cmd->parsed()) {
      config.mode = sndp::Mode::lp_only;
    } else {
      config.mode = sndp::Mode::oracle_check;
      config.epsilon = check_epsilon;
    }
    if (config.mode != sndp::Mode::oracle_check) instance = sndp::parse_instance(read_file(instance_path));
    const sndp::Report report = sndp::run(config, instance ? &*instance : nullptr);
    write_output(report.dump(2) + "\n", out_path);
    if (config.mode == sndp::Mode::oracle_check && !report["result"]["all_passed"].get<bool>()) {
      for (const auto& p : report["properties"]) {
        if (p["status"] == "fail") {
          print_error("invariant", p["first_failure"].get<std::string>(), p["property"].get<std::string>());
        }
      }
      return 2;
    }
    return 0;
  } catch (const sndp::InputError& e) {
    print_error("input", e.what());
    return 1;
  } catch (const sndp::InvariantError& e) {
    print_error("invariant", e.what(), e.invariant());
    return 2;
  } catch (const std::exception& e) {
    print_error("internal", e.what(), "unexpected-exception");
    return 2;
  }
}
