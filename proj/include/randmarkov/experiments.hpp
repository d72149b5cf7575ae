#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace randmarkov {

enum class ExperimentId { kGaussianCi, kEvaluePower, kUiPower, kBettingPower };

std::string to_string(ExperimentId id);
ExperimentId experiment_from_string(std::string_view name);
/// CSV file name, e.g. "gaussian_ci.csv".
std::string csv_filename(ExperimentId id);

struct ExperimentConfig {
  ExperimentId id = ExperimentId::kGaussianCi;
  double alpha = 0.05;
  std::size_t reps = 1;
  std::size_t B = 100;
  std::vector<double> n_grid;
  std::vector<double> mu_grid;
  std::vector<double> rho_grid;
  std::vector<double> b_grid;
  std::size_t K = 100;
  /// Sample size of the mixture experiment.
  std::size_t ui_n = 500;
  std::uint64_t base_seed = 42;
  /// Directory for the CSV; empty means keep rows in memory only.
  std::filesystem::path output_dir;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// n equally spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Desk-scale defaults, or the replication counts used in the original
/// study when `paper_scale` is set.
ExperimentConfig default_config(ExperimentId id, bool paper_scale = false);

struct RejectOutcome {
  bool reject = false;

  bool operator==(const RejectOutcome&) const = default;
};

struct IntervalOutcome {
  double lower = 0.0;
  double upper = 0.0;
  bool covered = false;
  double width = 0.0;
  bool empty = false;

  bool operator==(const IntervalOutcome&) const = default;
};

/// One CSV line: (method, grid point, replication) and its outcome.
struct ResultRow {
  ExperimentId experiment = ExperimentId::kGaussianCi;
  std::string method;
  std::vector<std::pair<std::string, double>> coords;
  std::size_t rep = 0;
  std::variant<RejectOutcome, IntervalOutcome> outcome;

  bool operator==(const ResultRow&) const = default;
};

/// Header row, e.g. "method,K,rho,mu,rep,reject".
std::string csv_header(ExperimentId id);
std::string format_row(const ResultRow& row);
ResultRow parse_row(ExperimentId id, std::string_view line);
/// Reads a CSV written by write_csv; checks the header.
std::vector<ResultRow> read_csv(ExperimentId id, const std::filesystem::path& path);
void write_csv(ExperimentId id, const std::vector<ResultRow>& rows,
               const std::filesystem::path& path);

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::filesystem::path csv_path;  // empty when nothing was written
  std::string summary;
};

ExperimentResult run_gaussian_ci_experiment(const ExperimentConfig& cfg);
ExperimentResult run_evalue_power_experiment(const ExperimentConfig& cfg);
ExperimentResult run_ui_power_experiment(const ExperimentConfig& cfg);
ExperimentResult run_betting_power_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Mean outcome per (method, grid point): rejection rate for reject rows,
/// coverage for interval rows (with the mean width alongside).
struct CellSummary {
  double mean = 0.0;
  double mean_width = 0.0;
  std::size_t count = 0;
};
using CellKey = std::pair<std::string, std::vector<std::pair<std::string, double>>>;
std::map<CellKey, CellSummary> aggregate(const std::vector<ResultRow>& rows);

/// Applies `key=value` lines (blank lines and '#' comments ignored).
/// Recognized keys: alpha, reps, b_count, seed, out, threads, K, ui_n,
/// n_grid, mu_grid, rho_grid, b_grid (grids as comma-separated lists).
void apply_config_file(const std::filesystem::path& path, ExperimentConfig& cfg);
void apply_config_text(std::string_view text, ExperimentConfig& cfg);

/// Command-line entry point. Subcommands: ci, evals, ui, betting, all.
/// Returns 0 on success and 2 on a usage or configuration error.
int cli_main(const std::vector<std::string>& args);

}  // namespace randmarkov
