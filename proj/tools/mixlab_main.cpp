// mixlab command line: list experiments, run one, or run the acceptance suite.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixlab/acceptance.hpp"
#include "mixlab/experiments.hpp"

namespace {

int cmd_list() {
  for (const auto& def : mixlab::experiment_registry()) {
    std::printf("%-22s %-6s %s\n", def.name.c_str(), def.claim.c_str(),
                def.description.c_str());
    for (const auto& param : def.params) {
      std::printf("    --%-18s default %-16s %s\n", param.key.c_str(),
                  param.fallback.empty() ? "(empty)" : param.fallback.c_str(),
                  param.help.c_str());
    }
  }
  return 0;
}

// Remaining tokens are free-form "--key value" pairs for the experiment.
std::map<std::string, std::string> parse_pairs(const std::vector<std::string>& extras) {
  std::map<std::string, std::string> params;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& token = extras[i];
    if (token.rfind("--", 0) != 0 || token.size() <= 2) {
      throw CLI::ValidationError("expected --key value pairs, got '" + token + "'");
    }
    const auto eq = token.find('=');
    if (eq != std::string::npos) {
      params[token.substr(2, eq - 2)] = token.substr(eq + 1);
    } else {
      if (i + 1 >= extras.size()) {
        throw CLI::ValidationError("missing value for '" + token + "'");
      }
      params[token.substr(2)] = extras[++i];
    }
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mixing-time experiments for finite Markov chains"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "list registered experiments and parameters");

  auto* run = app.add_subcommand("run", "run one experiment");
  std::string name;
  std::string out_dir;
  std::string config_file;
  std::uint64_t seed = 0;
  run->add_option("name", name, "experiment name (see `list`)")->required();
  run->add_option("--seed", seed, "seed for stochastic experiments");
  run->add_option("--out", out_dir, "output directory (default results/<name>)");
  run->add_option("--config", config_file, "key=value file; flags override it");
  run->allow_extras();

  auto* check = app.add_subcommand("check", "run the acceptance suite");
  std::vector<std::string> claims;
  check->add_option("claims", claims, "optional subset of claim ids (e.g. AC-3)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return cmd_list();

    if (run->parsed()) {
      mixlab::ExperimentSpec spec;
      spec.name = name;
      if (!config_file.empty()) spec.params = mixlab::read_config_file(config_file);
      for (auto& [key, value] : parse_pairs(run->remaining())) spec.params[key] = value;
      spec.seed = seed;
      spec.out_dir = out_dir.empty() ? ("results/" + name) : out_dir;

      const mixlab::ResultBundle bundle = mixlab::run_experiment(spec);
      std::cout << bundle.summary.dump(2) << '\n';
      for (const auto& file : bundle.csv_files) {
        std::cout << "wrote " << file.string() << '\n';
      }
      return bundle.pass ? 0 : 1;
    }

    if (check->parsed()) {
      const auto results = mixlab::run_acceptance(std::cout, claims);
      int failed = 0;
      for (const auto& result : results) failed += result.pass ? 0 : 1;
      std::printf("%zu criteria, %d failed\n", results.size(), failed);
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
