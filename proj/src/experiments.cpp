#include "randmarkov/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "randmarkov/betting.hpp"
#include "randmarkov/evalues.hpp"
#include "randmarkov/markov.hpp"
#include "randmarkov/rng.hpp"
#include "randmarkov/tail_bounds.hpp"
#include "randmarkov/universal_inference.hpp"

namespace randmarkov {

namespace {

// Substream labels inside one replication.
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kUniformStream = 2;
constexpr std::uint64_t kPermutationStream = 3;
constexpr std::uint64_t kSplitStream = 4;

std::uint64_t experiment_label(ExperimentId id) {
  return static_cast<std::uint64_t>(id) + 1;
}

RngStream replication_stream(const ExperimentConfig& cfg, std::size_t grid_index,
                             std::size_t rep) {
  return make_rng(cfg.base_seed)
      .substream(experiment_label(cfg.id))
      .substream(grid_index)
      .substream(rep);
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double parse_number(std::string_view text, std::string_view column) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("malformed value '" + std::string(text) + "' in column " +
                                std::string(column));
  }
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> coordinate_columns(ExperimentId id) {
  switch (id) {
    case ExperimentId::kGaussianCi: return {"n"};
    case ExperimentId::kEvaluePower: return {"K", "rho", "mu"};
    case ExperimentId::kUiPower: return {"n", "mu"};
    case ExperimentId::kBettingPower: return {"b", "n"};
  }
  return {};
}

bool is_interval_experiment(ExperimentId id) { return id == ExperimentId::kGaussianCi; }

/// Runs `task(task_index)` for every index on a small worker pool and
/// returns the per-task rows concatenated in task order.
std::vector<ResultRow> run_tasks(std::size_t count, unsigned threads,
                                 const std::function<std::vector<ResultRow>(std::size_t)>& task) {
  std::vector<std::vector<ResultRow>> slots(count);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        slots[i] = task(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;
  for (auto& slot : slots) {
    rows.insert(rows.end(), std::make_move_iterator(slot.begin()),
                std::make_move_iterator(slot.end()));
  }
  return rows;
}

ResultRow reject_row(ExperimentId id, std::string method,
                     std::vector<std::pair<std::string, double>> coords, std::size_t rep,
                     bool reject) {
  return ResultRow{id, std::move(method), std::move(coords), rep, RejectOutcome{reject}};
}

ResultRow interval_row(std::string method, double n, std::size_t rep,
                       const ConfidenceInterval& ci, double truth) {
  IntervalOutcome out;
  out.empty = ci.is_empty();
  out.lower = ci.lower();
  out.upper = ci.upper();
  out.covered = ci.contains(truth);
  out.width = ci.width();
  return ResultRow{ExperimentId::kGaussianCi, std::move(method), {{"n", n}}, rep, out};
}

std::size_t as_count(double value, const char* what) {
  if (!(value >= 1.0) || value != std::floor(value)) {
    throw std::invalid_argument(std::string(what) + " must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

ExperimentResult finish(const ExperimentConfig& cfg, std::vector<ResultRow> rows,
                        std::string summary) {
  ExperimentResult result;
  result.rows = std::move(rows);
  result.summary = std::move(summary);
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    result.csv_path = cfg.output_dir / csv_filename(cfg.id);
    write_csv(cfg.id, result.rows, result.csv_path);
  }
  return result;
}

double method_mean(const std::map<CellKey, CellSummary>& cells, const std::string& method,
                   bool width) {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& [key, cell] : cells) {
    if (key.first != method) continue;
    total += (width ? cell.mean_width : cell.mean) * static_cast<double>(cell.count);
    count += cell.count;
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

std::string power_summary(const std::string& name, const std::vector<ResultRow>& rows,
                          const std::vector<std::string>& methods) {
  const auto cells = aggregate(rows);
  std::ostringstream out;
  out << name << ": " << rows.size() << " rows; mean rejection rate";
  for (const auto& m : methods) out << ' ' << m << '=' << format_number(method_mean(cells, m, false));
  return out.str();
}

}  // namespace

std::string to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::kGaussianCi: return "gaussian_ci";
    case ExperimentId::kEvaluePower: return "evalue_power";
    case ExperimentId::kUiPower: return "ui_power";
    case ExperimentId::kBettingPower: return "betting_power";
  }
  return "unknown";
}

ExperimentId experiment_from_string(std::string_view name) {
  for (auto id : {ExperimentId::kGaussianCi, ExperimentId::kEvaluePower, ExperimentId::kUiPower,
                  ExperimentId::kBettingPower}) {
    if (to_string(id) == name) return id;
  }
  throw std::invalid_argument("unknown experiment: " + std::string(name));
}

std::string csv_filename(ExperimentId id) { return to_string(id) + ".csv"; }

void ExperimentConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1), got " + format_number(alpha));
  }
  if (reps == 0) throw std::invalid_argument("reps must be >= 1");
  if (B == 0) throw std::invalid_argument("b_count must be >= 1");
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
  };
  switch (id) {
    case ExperimentId::kGaussianCi:
      require(!n_grid.empty(), "n_grid must not be empty");
      for (double n : n_grid) as_count(n, "n_grid entries");
      break;
    case ExperimentId::kEvaluePower:
      require(!mu_grid.empty() && !rho_grid.empty(), "mu_grid and rho_grid must not be empty");
      require(K >= 1, "K must be >= 1");
      for (double rho : rho_grid) require(rho >= 0.0 && rho <= 1.0, "rho_grid entries must lie in [0, 1]");
      break;
    case ExperimentId::kUiPower:
      require(!mu_grid.empty(), "mu_grid must not be empty");
      require(ui_n >= 4, "ui_n must be >= 4");
      require(alpha < 0.5, "alpha must be < 0.5 for the likelihood-ratio benchmark");
      break;
    case ExperimentId::kBettingPower:
      require(!b_grid.empty() && !n_grid.empty(), "b_grid and n_grid must not be empty");
      for (double b : b_grid) require(b > 0.0, "b_grid entries must be > 0");
      for (double n : n_grid) as_count(n, "n_grid entries");
      break;
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

ExperimentConfig default_config(ExperimentId id, bool paper_scale) {
  ExperimentConfig cfg;
  cfg.id = id;
  std::vector<double> sizes = linspace(100.0, 2000.0, 10);
  for (double& n : sizes) n = std::round(n);
  switch (id) {
    case ExperimentId::kGaussianCi:
      cfg.reps = paper_scale ? 20000 : 2000;
      cfg.n_grid = sizes;
      break;
    case ExperimentId::kEvaluePower:
      cfg.reps = 500;
      cfg.mu_grid = linspace(0.0, 4.0, 10);
      cfg.rho_grid = linspace(0.0, 1.0, 10);
      cfg.K = 100;
      break;
    case ExperimentId::kUiPower:
      cfg.reps = 500;
      cfg.mu_grid = linspace(0.0, 1.0, 10);
      cfg.ui_n = 500;
      break;
    case ExperimentId::kBettingPower:
      cfg.reps = 500;
      cfg.b_grid = linspace(19.0, 20.8, 10);
      cfg.n_grid = sizes;
      break;
  }
  return cfg;
}

std::string csv_header(ExperimentId id) {
  std::string header = "method";
  for (const auto& c : coordinate_columns(id)) header += "," + c;
  header += ",rep";
  header += is_interval_experiment(id) ? ",lower,upper,covered,width,empty_flag" : ",reject";
  return header;
}

std::string format_row(const ResultRow& row) {
  std::string line = row.method;
  for (const auto& [name, value] : row.coords) line += "," + format_number(value);
  line += "," + std::to_string(row.rep);
  if (const auto* r = std::get_if<RejectOutcome>(&row.outcome)) {
    line += r->reject ? ",1" : ",0";
  } else {
    const auto& ci = std::get<IntervalOutcome>(row.outcome);
    if (ci.empty) {
      line += ",EMPTY,EMPTY";
    } else {
      line += "," + format_number(ci.lower) + "," + format_number(ci.upper);
    }
    line += ci.covered ? ",1" : ",0";
    line += "," + format_number(ci.width);
    line += ci.empty ? ",1" : ",0";
  }
  return line;
}

ResultRow parse_row(ExperimentId id, std::string_view line) {
  const auto fields = split_fields(line);
  const auto coords = coordinate_columns(id);
  const std::size_t outcome_fields = is_interval_experiment(id) ? 5 : 1;
  const std::size_t expected = 1 + coords.size() + 1 + outcome_fields;
  if (fields.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) + " fields for " +
                                to_string(id) + ", got " + std::to_string(fields.size()));
  }
  auto parse_flag = [](std::string_view text, std::string_view column) {
    if (text == "0") return false;
    if (text == "1") return true;
    throw std::invalid_argument("malformed flag '" + std::string(text) + "' in column " +
                                std::string(column));
  };

  ResultRow row;
  row.experiment = id;
  row.method = std::string(fields[0]);
  if (row.method.empty()) throw std::invalid_argument("empty value in column method");
  std::size_t pos = 1;
  for (const auto& name : coords) row.coords.emplace_back(name, parse_number(fields[pos++], name));
  const double rep = parse_number(fields[pos++], "rep");
  if (rep < 0.0 || rep != std::floor(rep)) throw std::invalid_argument("malformed value in column rep");
  row.rep = static_cast<std::size_t>(rep);

  if (!is_interval_experiment(id)) {
    row.outcome = RejectOutcome{parse_flag(fields[pos], "reject")};
    return row;
  }
  IntervalOutcome ci;
  ci.empty = parse_flag(fields[pos + 4], "empty_flag");
  if (ci.empty) {
    if (fields[pos] != "EMPTY" || fields[pos + 1] != "EMPTY") {
      throw std::invalid_argument("empty interval must carry EMPTY bounds in columns lower,upper");
    }
  } else {
    ci.lower = parse_number(fields[pos], "lower");
    ci.upper = parse_number(fields[pos + 1], "upper");
  }
  ci.covered = parse_flag(fields[pos + 2], "covered");
  ci.width = parse_number(fields[pos + 3], "width");
  row.outcome = ci;
  return row;
}

void write_csv(ExperimentId id, const std::vector<ResultRow>& rows,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << csv_header(id) << '\n';
  for (const auto& row : rows) out << format_row(row) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<ResultRow> read_csv(ExperimentId id, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != csv_header(id)) {
    throw std::invalid_argument(path.string() + ": header does not match " + csv_header(id));
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(parse_row(id, line));
  }
  return rows;
}

std::map<CellKey, CellSummary> aggregate(const std::vector<ResultRow>& rows) {
  std::map<CellKey, CellSummary> cells;
  for (const auto& row : rows) {
    auto& cell = cells[CellKey{row.method, row.coords}];
    double value;
    double width = 0.0;
    if (const auto* r = std::get_if<RejectOutcome>(&row.outcome)) {
      value = r->reject ? 1.0 : 0.0;
    } else {
      const auto& ci = std::get<IntervalOutcome>(row.outcome);
      value = ci.covered ? 1.0 : 0.0;
      width = ci.width;
    }
    ++cell.count;
    const auto c = static_cast<double>(cell.count);
    cell.mean += (value - cell.mean) / c;
    cell.mean_width += (width - cell.mean_width) / c;
  }
  return cells;
}

ExperimentResult run_gaussian_ci_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t reps = cfg.reps;
  auto task = [&](std::size_t index) {
    const std::size_t grid_index = index / reps;
    const std::size_t rep = index % reps;
    const double n_value = cfg.n_grid[grid_index];
    const std::size_t n = as_count(n_value, "n");
    RngStream rng = replication_stream(cfg, grid_index, rep);
    RngStream data_rng = rng.substream(kDataStream);
    RngStream u_rng = rng.substream(kUniformStream);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += sample_gaussian(data_rng, 0.0, 1.0);
    const double xbar = sum / static_cast<double>(n);
    const double u = uniform01(u_rng);

    std::vector<ResultRow> rows;
    rows.push_back(interval_row("hoeffding", n_value, rep, hoeffding_ci(xbar, 1.0, n, cfg.alpha), 0.0));
    rows.push_back(interval_row("rand_hoeffding", n_value, rep,
                                hoeffding_ci(xbar, 1.0, n, cfg.alpha, u), 0.0));
    rows.push_back(interval_row("exact", n_value, rep, gaussian_ci(xbar, 1.0, n, cfg.alpha), 0.0));
    return rows;
  };
  auto rows = run_tasks(cfg.n_grid.size() * reps, cfg.threads, task);

  const auto cells = aggregate(rows);
  const double hoeff = method_mean(cells, "hoeffding", true);
  const double rand = method_mean(cells, "rand_hoeffding", true);
  const double exact = method_mean(cells, "exact", true);
  std::ostringstream summary;
  summary << "gaussian_ci: " << rows.size() << " rows; coverage hoeffding="
          << format_number(method_mean(cells, "hoeffding", false))
          << " rand_hoeffding=" << format_number(method_mean(cells, "rand_hoeffding", false))
          << " exact=" << format_number(method_mean(cells, "exact", false))
          << "; width ratio rand/hoeffding=" << format_number(rand / hoeff)
          << " exact/rand=" << format_number(exact / rand);
  return finish(cfg, std::move(rows), summary.str());
}

ExperimentResult run_evalue_power_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t reps = cfg.reps;
  const std::size_t n_rho = cfg.rho_grid.size();
  auto task = [&](std::size_t index) {
    const std::size_t grid_index = index / reps;
    const std::size_t rep = index % reps;
    const double mu = cfg.mu_grid[grid_index / n_rho];
    const double rho = cfg.rho_grid[grid_index % n_rho];
    RngStream rng = replication_stream(cfg, grid_index, rep);
    RngStream data_rng = rng.substream(kDataStream);
    RngStream u_rng = rng.substream(kUniformStream);
    RngStream perm_rng = rng.substream(kPermutationStream);

    std::vector<double> es = sample_ar1_toeplitz(data_rng, cfg.K, rho, mu);
    for (double& x : es) x = std::exp(x - 0.5);
    const double u = uniform01(u_rng);
    const Permutation pi = random_permutation(perm_rng, cfg.K);

    const std::vector<std::pair<std::string, double>> coords{
        {"K", static_cast<double>(cfg.K)}, {"rho", rho}, {"mu", mu}};
    std::vector<ResultRow> rows;
    for (auto rule : {CombinationRule::kAvMI, CombinationRule::kUMI, CombinationRule::kEMI,
                      CombinationRule::kEUMI}) {
      const auto result = combine_dependent(es, cfg.alpha, u, pi, rule);
      rows.push_back(reject_row(cfg.id, to_string(rule), coords, rep, result.decision.reject));
    }
    return rows;
  };
  auto rows = run_tasks(cfg.mu_grid.size() * n_rho * reps, cfg.threads, task);
  auto summary = power_summary("evalue_power", rows, {"AvMI", "UMI", "EMI", "EUMI"});
  return finish(cfg, std::move(rows), summary);
}

ExperimentResult run_ui_power_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t reps = cfg.reps;
  const MixtureModel model;
  auto task = [&](std::size_t index) {
    const std::size_t grid_index = index / reps;
    const std::size_t rep = index % reps;
    const double mu = cfg.mu_grid[grid_index];
    RngStream rng = replication_stream(cfg, grid_index, rep);
    RngStream data_rng = rng.substream(kDataStream);
    RngStream u_rng = rng.substream(kUniformStream);
    RngStream split_rng = rng.substream(kSplitStream);

    // 0.25 N(-mu, 1) + 0.75 N(mu, 1)
    std::vector<double> data(cfg.ui_n);
    for (double& y : data) {
      const double centre = uniform01(data_rng) < model.w1 ? -mu : mu;
      y = sample_gaussian(data_rng, centre, 1.0);
    }
    const double u = uniform01(u_rng);
    std::vector<double> es(cfg.B);
    for (std::size_t b = 0; b < cfg.B; ++b) {
      RngStream stream = split_rng.substream(b);
      es[b] = split_lrt(data, 0.5, stream, model, b).value;
    }

    const std::vector<std::pair<std::string, double>> coords{
        {"n", static_cast<double>(cfg.ui_n)}, {"mu", mu}};
    std::vector<ResultRow> rows;
    rows.push_back(reject_row(cfg.id, "LRT", coords, rep,
                              goffinet_lrt_reject(data, cfg.alpha, model).reject));
    const std::span<const double> first(es.data(), 1);
    for (auto rule : {UiRule::kUI, UiRule::kUMI_UI}) {
      rows.push_back(reject_row(cfg.id, to_string(rule), coords, rep,
                                ui_reject(first, cfg.alpha, u, rule).reject));
    }
    for (auto rule : {UiRule::kSUI, UiRule::kUMI_SUI, UiRule::kEMI_SUI, UiRule::kEUMI_SUI}) {
      rows.push_back(reject_row(cfg.id, to_string(rule), coords, rep,
                                ui_reject(es, cfg.alpha, u, rule).reject));
    }
    return rows;
  };
  auto rows = run_tasks(cfg.mu_grid.size() * reps, cfg.threads, task);
  auto summary = power_summary("ui_power", rows,
                               {"LRT", "UI", "UMI_UI", "SUI", "UMI_SUI", "EMI_SUI", "EUMI_SUI"});
  return finish(cfg, std::move(rows), summary);
}

ExperimentResult run_betting_power_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t reps = cfg.reps;
  const std::size_t n_sizes = cfg.n_grid.size();
  constexpr double kShapeA = 20.0;
  constexpr double kNullMean = 0.5;
  auto task = [&](std::size_t index) {
    const std::size_t grid_index = index / reps;
    const std::size_t rep = index % reps;
    const double b = cfg.b_grid[grid_index / n_sizes];
    const double n_value = cfg.n_grid[grid_index % n_sizes];
    const std::size_t n = as_count(n_value, "n");
    RngStream rng = replication_stream(cfg, grid_index, rep);
    RngStream data_rng = rng.substream(kDataStream);
    RngStream draw_rng = rng.substream(kPermutationStream);

    std::vector<double> data(n);
    for (double& y : data) y = sample_beta(data_rng, kShapeA, b);
    const BettingDraws draws = draw_betting_randomness(draw_rng, n, cfg.B);
    const BettingEvidence evidence =
        collect_betting_evidence(data, kNullMean, cfg.alpha, draws, default_strategy);

    const std::vector<std::pair<std::string, double>> coords{{"b", b}, {"n", n_value}};
    std::vector<ResultRow> rows;
    for (auto rule : {BettingRule::kVille, BettingRule::kRandVille, BettingRule::kAvMI,
                      BettingRule::kUMI, BettingRule::kEMI, BettingRule::kEUMI}) {
      rows.push_back(reject_row(cfg.id, to_string(rule), coords, rep,
                                apply_betting_rule(evidence, cfg.alpha, rule).reject));
    }
    return rows;
  };
  auto rows = run_tasks(cfg.b_grid.size() * n_sizes * reps, cfg.threads, task);
  auto summary = power_summary("betting_power", rows,
                               {"Ville", "RandVille", "AvMI", "UMI", "EMI", "EUMI"});
  return finish(cfg, std::move(rows), summary);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.id) {
    case ExperimentId::kGaussianCi: return run_gaussian_ci_experiment(cfg);
    case ExperimentId::kEvaluePower: return run_evalue_power_experiment(cfg);
    case ExperimentId::kUiPower: return run_ui_power_experiment(cfg);
    case ExperimentId::kBettingPower: return run_betting_power_experiment(cfg);
  }
  throw std::invalid_argument("unknown experiment");
}

void apply_config_text(std::string_view text, ExperimentConfig& cfg) {
  auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  auto parse_list = [&](std::string_view value, std::string_view key) {
    std::vector<double> out;
    for (auto field : split_fields(value)) out.push_back(parse_number(trim(field), key));
    return out;
  };
  auto parse_count = [&](std::string_view value, std::string_view key) {
    const double v = parse_number(value, key);
    if (v < 0.0 || v != std::floor(v)) {
      throw std::invalid_argument("config key " + std::string(key) + " must be a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
  };

  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "alpha") cfg.alpha = parse_number(value, key);
    else if (key == "reps") cfg.reps = parse_count(value, key);
    else if (key == "b_count") cfg.B = parse_count(value, key);
    else if (key == "seed") cfg.base_seed = parse_count(value, key);
    else if (key == "out") cfg.output_dir = std::string(value);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_count(value, key));
    else if (key == "K") cfg.K = parse_count(value, key);
    else if (key == "ui_n") cfg.ui_n = parse_count(value, key);
    else if (key == "n_grid") cfg.n_grid = parse_list(value, key);
    else if (key == "mu_grid") cfg.mu_grid = parse_list(value, key);
    else if (key == "rho_grid") cfg.rho_grid = parse_list(value, key);
    else if (key == "b_grid") cfg.b_grid = parse_list(value, key);
    else throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key " + std::string(key));
  }
}

void apply_config_file(const std::filesystem::path& path, ExperimentConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(text.str(), cfg);
}

}  // namespace randmarkov
