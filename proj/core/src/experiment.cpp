#include "fsv/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <memory>
#include <sstream>
#include <type_traits>

#include <fmt/format.h>

#include "fsv/dataset.hpp"
#include "fsv/error.hpp"
#include "fsv/fusion.hpp"
#include "fsv/kfold.hpp"
#include "fsv/parallel.hpp"

#ifndef FSV_VERSION
#define FSV_VERSION "0.0.0"
#endif

namespace fsv {
namespace {

constexpr std::uint32_t kSrsKfcvLane = 0;
constexpr std::uint32_t kFsvLane = 1;
constexpr std::uint32_t kFixedDatasetTrial = 0xffffffffu;

// Each N gets its own seed so cells of different size do not replay the
// same draws; cells with the same N share trial streams, so trial t is
// identical across the T columns.
SeedSchedule cell_schedule(const ExperimentConfig& config, std::size_t n) {
  return SeedSchedule(mix64(config.base_seed ^ mix64(static_cast<std::uint64_t>(n))));
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
T parse_number(std::string_view key, const std::string& text) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ValidationError(fmt::format("config: bad value '{}' for '{}'", text, key));
  }
  return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) {
      out.push_back(parse_number<T>(key, item));
    }
  }
  return out;
}

bool parse_bool(std::string_view key, const std::string& text) {
  if (text == "true" || text == "1" || text == "on" || text == "yes") {
    return true;
  }
  if (text == "false" || text == "0" || text == "off" || text == "no") {
    return false;
  }
  throw ValidationError(fmt::format("config: bad boolean '{}' for '{}'", text, key));
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt::format("{:.17g}", values[i]);
    } else {
      out += fmt::format("{}", values[i]);
    }
  }
  return out;
}

}  // namespace

std::string_view dataset_mode_name(DatasetMode mode) noexcept {
  return mode == DatasetMode::kFixed ? "fixed" : "per_trial";
}

DatasetMode parse_dataset_mode(std::string_view name) {
  if (name == "per_trial") {
    return DatasetMode::kPerTrial;
  }
  if (name == "fixed") {
    return DatasetMode::kFixed;
  }
  throw ValidationError(fmt::format("unknown dataset mode '{}'", name));
}

void ExperimentConfig::validate() const {
  for (std::size_t n : sizes) {
    detail::require(n >= 2 * k, fmt::format("config: size {} is smaller than 2k = {}", n, 2 * k));
    detail::require(n <= 0xffffffffULL, fmt::format("config: size {} is too large", n));
  }
  for (std::size_t t : trials) {
    detail::require(t >= 1, "config: trial counts must be at least 1");
    detail::require(t < kFixedDatasetTrial, "config: trial count too large");
  }
  detail::require(k >= 2, "config: k must be at least 2");
  detail::require(repetitions >= 1 && repetitions <= SeedSchedule::kMaxRepetitions,
                  "config: repetitions must be in [1, 65536]");
  detail::require(alpha > 0.0 && alpha <= 1.0, "config: alpha must lie in (0, 1]");
  detail::require(fraction_range.lo > 0.0 && fraction_range.lo <= fraction_range.hi && fraction_range.hi <= 1.0,
                  "config: fraction range must satisfy 0 < min <= max <= 1");
  detail::require(sigma2 > 0.0, "config: sigma2 must be positive");
  if (lambdas) {
    detail::require(lambdas->size() == k, "config: need exactly k lambdas");
    const LambdaWeights w(*lambdas);
    detail::require(w.sums_to_k(), "config: lambdas must sum to k");
  }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(fmt::format("config line {}: expected 'key = value'", line_no));
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));

    if (key == "sizes") {
      config.sizes = parse_list<std::size_t>(key, value);
    } else if (key == "trials") {
      config.trials = parse_list<std::size_t>(key, value);
    } else if (key == "k") {
      config.k = parse_number<std::size_t>(key, value);
    } else if (key == "repetitions" || key == "reps") {
      config.repetitions = parse_number<std::size_t>(key, value);
    } else if (key == "alpha") {
      config.alpha = parse_number<double>(key, value);
    } else if (key == "lambdas") {
      if (value.empty() || value == "none") {
        config.lambdas.reset();
      } else {
        config.lambdas = parse_list<double>(key, value);
      }
    } else if (key == "seed" || key == "base_seed") {
      config.base_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "fraction_min") {
      config.fraction_range.lo = parse_number<double>(key, value);
    } else if (key == "fraction_max") {
      config.fraction_range.hi = parse_number<double>(key, value);
    } else if (key == "mu") {
      config.mu = parse_number<double>(key, value);
    } else if (key == "sigma2") {
      config.sigma2 = parse_number<double>(key, value);
    } else if (key == "shared_streams") {
      config.shared_streams = parse_bool(key, value);
    } else if (key == "dataset_mode") {
      config.dataset_mode = parse_dataset_mode(value);
    } else {
      throw ValidationError(fmt::format("config line {}: unknown key '{}'", line_no, key));
    }
  }
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path.string(), "cannot open config file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

std::string to_config_text(const ExperimentConfig& c) {
  std::string out;
  out += fmt::format("sizes = {}\n", join(c.sizes));
  out += fmt::format("trials = {}\n", join(c.trials));
  out += fmt::format("k = {}\n", c.k);
  out += fmt::format("repetitions = {}\n", c.repetitions);
  out += fmt::format("alpha = {:.17g}\n", c.alpha);
  out += fmt::format("lambdas = {}\n", c.lambdas ? join(*c.lambdas) : std::string("none"));
  out += fmt::format("seed = {}\n", c.base_seed);
  out += fmt::format("fraction_min = {:.17g}\n", c.fraction_range.lo);
  out += fmt::format("fraction_max = {:.17g}\n", c.fraction_range.hi);
  out += fmt::format("mu = {:.17g}\n", c.mu);
  out += fmt::format("sigma2 = {:.17g}\n", c.sigma2);
  out += fmt::format("shared_streams = {}\n", c.shared_streams ? "true" : "false");
  out += fmt::format("dataset_mode = {}\n", dataset_mode_name(c.dataset_mode));
  return out;
}

std::string config_hash(const ExperimentConfig& config) {
  // FNV-1a over the canonical text, finalised with mix64.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_config_text(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", mix64(h));
}

const CellReport& ExperimentReport::cell(std::size_t n, std::size_t T) const {
  const auto it = std::find_if(cells.begin(), cells.end(), [&](const CellReport& c) { return c.n == n && c.T == T; });
  if (it == cells.end()) {
    throw ValidationError(fmt::format("report has no cell (N={}, T={})", n, T));
  }
  return *it;
}

CellReport run_cell(const ExperimentConfig& config, std::size_t n, std::size_t T, const RunOptions& options) {
  config.validate();
  detail::require(n >= 2 * config.k, "run_cell: N must be at least 2k");
  detail::require(T >= 1 && T < kFixedDatasetTrial, "run_cell: T out of range");

  const SeedSchedule base = cell_schedule(config, n);
  const SeedSchedule srs_lane = base.with_lane(kSrsKfcvLane);
  const SeedSchedule fsv_lane = base.with_lane(config.shared_streams ? kSrsKfcvLane : kFsvLane);

  auto make_dataset = [&](const SeedSchedule& lane, std::uint32_t trial) {
    auto stream = lane.stream(trial, Purpose::kData);
    return std::make_shared<const Dataset>(generate_dataset(n, config.mu, config.sigma2, stream));
  };

  std::shared_ptr<const Dataset> fixed;
  if (config.dataset_mode == DatasetMode::kFixed) {
    fixed = make_dataset(srs_lane, kFixedDatasetTrial);
  }
  auto dataset_for = [&](const SeedSchedule& lane, std::uint32_t trial) {
    return fixed ? fixed : make_dataset(lane, trial);
  };

  KfcvConfig kcfg;
  kcfg.k = config.k;
  kcfg.repetitions = config.repetitions;
  kcfg.weights = config.lambdas ? LambdaWeights(*config.lambdas) : LambdaWeights::uniform(config.k);
  kcfg.size_rule = config.fraction_range;

  CellReport cell;
  cell.n = n;
  cell.T = T;
  auto& srs_trials = cell.trials[static_cast<std::size_t>(Method::kSrs)];
  auto& kf_trials = cell.trials[static_cast<std::size_t>(Method::kKfcv)];
  srs_trials.resize(T);
  kf_trials.resize(T);

  parallel_for(T, options.jobs, [&](std::size_t t) {
    const auto trial = static_cast<std::uint32_t>(t);
    const auto data = dataset_for(srs_lane, trial);

    const DrawEvaluation draw = evaluate_draw(*data, config.k, config.fraction_range, srs_lane, trial);
    srs_trials[t] = draw_metrics(draw, *data);

    // Repetition 0 replays the SRS draw, so both methods score the same
    // validation fold for bias.
    const KfcvEstimate est = repeated_kfcv(*data, kcfg, srs_lane, trial);
    kf_trials[t] = trial_metrics(est.mean_estimate, est.var_estimate, est.loss, data->true_mean(), data->true_var(),
                                 est.first_fold_loss);
  });

  FsvConfig fcfg;
  fcfg.alpha = config.alpha;
  fcfg.iterations = T;
  fcfg.k = config.k;
  fcfg.size_rule = config.fraction_range;
  const FsvResult fsv =
      fsv_run([&](std::uint32_t t) { return dataset_for(fsv_lane, t); }, fcfg, fsv_lane, options.jobs);
  cell.trials[static_cast<std::size_t>(Method::kFsv)] = fsv.per_iteration_stats;
  cell.fsv_compounded = fsv.compounded;
  cell.fsv_raw_mean = fsv.raw_mean;

  for (Method m : kAllMethods) {
    cell.summaries[static_cast<std::size_t>(m)] = summarize(cell.trials_of(m), m, n);
  }
  return cell;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  ExperimentReport report;
  report.config = config;
  for (std::size_t n : config.sizes) {
    for (std::size_t T : config.trials) {
      try {
        report.cells.push_back(run_cell(config, n, T, options));
      } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("cell (N={}, T={}): {}", n, T, e.what()));
      } catch (const std::exception& e) {
        throw std::runtime_error(fmt::format("cell (N={}, T={}): {}", n, T, e.what()));
      }
    }
  }

  report.metadata.config_hash = config_hash(config);
  report.metadata.version = std::string(library_version());
  report.metadata.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string_view library_version() noexcept { return FSV_VERSION; }

}  // namespace fsv
