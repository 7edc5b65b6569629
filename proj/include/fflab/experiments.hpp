#pragma once

#include "fflab/gfmps.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fflab {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitComputation = 2,
  kExitVerifyFailed = 3,
};

/// Resolved configuration of one experiment command. Defaults are documented
/// on each field; precedence is flags > config file > defaults.
struct ExperimentConfig {
  std::string command;
  std::vector<int> n_list;            // system sizes; entropy-scaling reads them as L
  double ratio = 0.5;                 // L / N for interval commands
  std::vector<double> alphas{0.5, 1.0, 2.0,
                             std::numeric_limits<double>::infinity()};
  std::vector<double> mus{0.9, 0.99, 0.999};
  std::vector<double> delta_targets{1e-2, 1e-4};
  std::string strategy = "log-spread";
  double eta = 1.3;                   // CFT proportionality constant
  double beta = 1.0;                  // toy-model exponent
  std::uint64_t seed = 1;             // mandatory for randomized runs
  std::string out;                    // output path; empty = stdout, no sidecar
  std::string format = "csv";         // csv | json
  int workers = 0;                    // 0 = all logical cores
  bool no_timestamp = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// Canonical key=value dump (sorted, locale-free), used for hashing and the
  /// sidecar. Deterministic for equal configs.
  std::string canonical() const;
  std::uint64_t hash() const;  // FNV-1a over canonical()
};

/// Merges values from a JSON config file into fields that `explicitly_set`
/// does not list. Unknown keys or wrong types throw with the field name.
void merge_config_file(ExperimentConfig& cfg, const std::string& path,
                       const std::vector<std::string>& explicitly_set);

/// Tabular result of a command: header plus string rows, ready for CSV or
/// JSON serialization.
struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;  // fitted values etc.
};

std::string format_double(double v);

/// Renders and (if cfg.out nonempty) writes the table plus a .meta.json
/// sidecar carrying the canonical config, its hash, and the artifact version.
/// Returns the rendered primary document.
std::string emit_result(const ExperimentConfig& cfg, const ResultTable& table);

ResultTable run_entropy_scaling(const ExperimentConfig& cfg);
ResultTable run_counting(const ExperimentConfig& cfg);
ResultTable run_gfmps_scan(const ExperimentConfig& cfg);
ResultTable run_toy(const ExperimentConfig& cfg);
ResultTable run_spectrum(const ExperimentConfig& cfg);
/// Returns the table and sets `all_pass`.
ResultTable run_verify(const ExperimentConfig& cfg, bool& all_pass);

inline constexpr const char* kArtifactVersion = "fflab 0.1.0";

} // namespace fflab
