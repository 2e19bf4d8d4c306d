#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace mixlab {

struct ExperimentSpec {
  std::string name;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
};

struct ParamDef {
  std::string key;
  std::string fallback;
  std::string help;
};

struct ResultBundle {
  std::vector<std::filesystem::path> csv_files;
  nlohmann::json summary;
  bool pass = true;
};

/// Resolved parameters of one run: schema defaults overlaid with the caller's
/// values. Unknown keys are rejected before any compute.
class ExperimentContext {
 public:
  ExperimentContext(const ExperimentSpec& spec, const std::vector<ParamDef>& schema);

  std::int64_t get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::vector<std::int64_t> get_int_list(const std::string& key) const;
  std::vector<double> get_real_list(const std::string& key) const;

  /// True when the caller left this key at its schema default.
  bool is_default(const std::string& key) const;
  bool all_defaults() const;

  std::uint64_t seed() const { return seed_; }
  const std::filesystem::path& out_dir() const { return out_dir_; }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> defaulted_;
  std::uint64_t seed_ = 0;
  std::filesystem::path out_dir_;
};

struct ExperimentDef {
  std::string name;
  std::string claim;  // acceptance-table id this experiment reproduces
  std::string description;
  std::vector<ParamDef> params;
  ResultBundle (*run)(const ExperimentContext&);
};

const std::vector<ExperimentDef>& experiment_registry();
const ExperimentDef& find_experiment(const std::string& name);

/// Validates, runs, and writes CSV payloads plus summary.json under
/// spec.out_dir. Bands are evaluated when the run reproduces the claim's
/// parameters; exploratory runs record measurements only.
ResultBundle run_experiment(const ExperimentSpec& spec);

/// Plain key=value file, '#' comments; CLI flags override file entries.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

}  // namespace mixlab
