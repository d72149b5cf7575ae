#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <stdexcept>

#include "randmarkov/experiments.hpp"

namespace randmarkov {

namespace {

struct CliOptions {
  std::optional<double> alpha;
  std::optional<std::size_t> reps;
  std::optional<std::size_t> b_count;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  std::optional<std::size_t> k;
  std::string config;
  bool paper_scale = false;
};

ExperimentConfig build_config(ExperimentId id, const CliOptions& opts) {
  ExperimentConfig cfg = default_config(id, opts.paper_scale);
  cfg.output_dir = "results";
  if (!opts.config.empty()) apply_config_file(opts.config, cfg);
  if (opts.alpha) cfg.alpha = *opts.alpha;
  if (opts.reps) cfg.reps = *opts.reps;
  if (opts.b_count) cfg.B = *opts.b_count;
  if (opts.seed) cfg.base_seed = *opts.seed;
  if (opts.out) cfg.output_dir = *opts.out;
  if (opts.threads) cfg.threads = *opts.threads;
  if (opts.k) cfg.K = *opts.k;
  return cfg;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"Randomized Markov inequality experiments"};
  app.require_subcommand(1);
  CliOptions opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--alpha", opts.alpha, "Significance level in (0, 1)");
    sub->add_option("--reps", opts.reps, "Replications per grid point");
    sub->add_option("--b-count", opts.b_count, "Number of splits or permutations");
    sub->add_option("--seed", opts.seed, "Base seed");
    sub->add_option("--out", opts.out, "Output directory for CSV files");
    sub->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
    sub->add_option("--k", opts.k, "Number of e-values in the e-value experiment");
    sub->add_option("--config", opts.config, "key=value configuration file");
    sub->add_flag("--paper-scale", opts.paper_scale, "Use the original replication counts");
  };

  const std::vector<std::pair<std::string, std::vector<ExperimentId>>> commands{
      {"ci", {ExperimentId::kGaussianCi}},
      {"evals", {ExperimentId::kEvaluePower}},
      {"ui", {ExperimentId::kUiPower}},
      {"betting", {ExperimentId::kBettingPower}},
      {"all",
       {ExperimentId::kGaussianCi, ExperimentId::kEvaluePower, ExperimentId::kUiPower,
        ExperimentId::kBettingPower}},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, ids] : commands) {
    CLI::App* sub = app.add_subcommand(name, "Run " + name + " experiment(s)");
    add_common(sub);
    subs.push_back(sub);
  }

  // CLI11 expects argv-style input without the program name, reversed.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      for (ExperimentId id : commands[i].second) {
        const ExperimentConfig cfg = build_config(id, opts);
        if (opts.alpha && !(*opts.alpha > 0.0 && *opts.alpha < 1.0)) {
          std::cerr << "--alpha must lie in (0, 1), got " << *opts.alpha << '\n';
          return 2;
        }
        cfg.validate();
        const ExperimentResult result = run_experiment(cfg);
        std::cout << result.summary;
        if (!result.csv_path.empty()) std::cout << " -> " << result.csv_path.string();
        std::cout << '\n';
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace randmarkov
