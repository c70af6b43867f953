#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "congruence/cli_app.hpp"

namespace {

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using congruence::cli::JobSpec;

  CLI::App app{"Congruence action tools: tuple ranks, normal forms, orbit witnesses"};
  app.require_subcommand(1);

  JobSpec job;
  std::string out_path;
  std::string in_path;
  uint64_t seed = 0;

  app.add_option("--field", job.field_kind, "Field when the input has none: rational | tower")
      ->check(CLI::IsMember({"rational", "tower"}));
  app.add_option("--prime", job.prime, "Base prime of the tower field")->check(CLI::Range(2u, 65521u));
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized commands");
  app.add_option("--enum-budget", job.enum_budget, "Maximum points enumerated per tuple rank");
  app.add_option("--retries", job.retries, "Random draws per free vector before the grid fallback")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", job.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write output to this file instead of stdout");

  const std::pair<const char*, const char*> commands[] = {
      {"rank", "Tuple rank of a matrix tuple"},
      {"normal-form", "Congruence normal form of a matrix or block normal form of a tuple"},
      {"witness", "Construct a certified orbit witness curve"},
      {"verify", "Check a witness curve independently"},
      {"gen", "Generate configurations and tuples"},
      {"experiment", "Rank bound sweep as CSV"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("input", in_path, "JSON input file (default: stdin)");
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  job.command = app.get_subcommands().front()->get_name();
  if (*seed_opt) job.seed = seed;

  if (in_path.empty() || in_path == "-") {
    job.input = read_all(std::cin);
  } else {
    std::ifstream in(in_path);
    if (!in) {
      std::cerr << "cannot open " << in_path << "\n";
      return congruence::cli::kExitMalformed;
    }
    job.input = read_all(in);
  }

  const auto res = congruence::cli::run_job(job);
  if (out_path.empty()) {
    std::cout << res.output;
  } else {
    std::ofstream out(out_path);
    out << res.output;
  }
  return res.exit_code;
}
