#include "fsv/report_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "fsv/error.hpp"

namespace fsv {
namespace {

using nlohmann::json;

std::vector<std::size_t> trial_counts_for(const ExperimentReport& report, std::size_t n) {
  std::vector<std::size_t> out;
  for (const auto& cell : report.cells) {
    if (cell.n == n) {
      out.push_back(cell.T);
    }
  }
  return out;
}

json metrics_to_json(const TrialMetrics& t) {
  json j = json::object();
  for (Metric m : kAllMetrics) {
    j[std::string(metric_key(m))] = t.get(m);
  }
  return j;
}

TrialMetrics metrics_from_json(const json& j) {
  TrialMetrics t;
  for (Metric m : kAllMetrics) {
    t.set(m, j.at(std::string(metric_key(m))).get<double>());
  }
  return t;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["sizes"] = c.sizes;
  j["trials"] = c.trials;
  j["k"] = c.k;
  j["repetitions"] = c.repetitions;
  j["alpha"] = c.alpha;
  j["lambdas"] = c.lambdas ? json(*c.lambdas) : json(nullptr);
  j["base_seed"] = c.base_seed;
  j["fraction_range"] = {c.fraction_range.lo, c.fraction_range.hi};
  j["mu"] = c.mu;
  j["sigma2"] = c.sigma2;
  j["shared_streams"] = c.shared_streams;
  j["dataset_mode"] = std::string(dataset_mode_name(c.dataset_mode));
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
  c.trials = j.at("trials").get<std::vector<std::size_t>>();
  c.k = j.at("k").get<std::size_t>();
  c.repetitions = j.at("repetitions").get<std::size_t>();
  c.alpha = j.at("alpha").get<double>();
  if (!j.at("lambdas").is_null()) {
    c.lambdas = j.at("lambdas").get<std::vector<double>>();
  }
  c.base_seed = j.at("base_seed").get<std::uint64_t>();
  c.fraction_range.lo = j.at("fraction_range").at(0).get<double>();
  c.fraction_range.hi = j.at("fraction_range").at(1).get<double>();
  c.mu = j.at("mu").get<double>();
  c.sigma2 = j.at("sigma2").get<double>();
  c.shared_streams = j.at("shared_streams").get<bool>();
  c.dataset_mode = parse_dataset_mode(j.at("dataset_mode").get<std::string>());
  return c;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError(path.parent_path().string(), "cannot create directory: " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(path.string(), "cannot open for writing");
  }
  return out;
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  out.flush();
  if (!out) {
    throw IoError(path.string(), "write failed");
  }
}

std::string emit_markdown_table(const ExperimentReport& report, std::size_t n) {
  const auto counts = trial_counts_for(report, n);
  detail::require(!counts.empty(), fmt::format("emit_markdown_table: report has no cells for N={}", n));

  std::string out = fmt::format("Statistical properties of the partitioned data at N = {}\n\n", n);
  out += "| Statistical Metrics |";
  for (std::size_t T : counts) {
    out += fmt::format(" {0} Trials Mean | {0} Trials Min | {0} Trials Max |", T);
  }
  out += "\n|---|";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out += "---:|---:|---:|";
  }
  out += '\n';

  for (Metric metric : kAllMetrics) {
    for (Method method : kAllMethods) {
      out += fmt::format("| {} {} |", metric_label(metric), method_name(method));
      for (std::size_t T : counts) {
        const auto& s = report.cell(n, T).summary(method).stat(metric);
        out += fmt::format(" {:.4f} | {:.4f} | {:.4f} |", s.mean, s.min, s.max);
      }
      out += '\n';
    }
  }
  return out;
}

std::string trials_csv(const ExperimentReport& report) {
  std::string out = "N,T,method,metric,trial,value\n";
  for (const auto& cell : report.cells) {
    for (Method method : kAllMethods) {
      const auto& trials = cell.trials_of(method);
      for (Metric metric : kAllMetrics) {
        for (std::size_t t = 0; t < trials.size(); ++t) {
          out += fmt::format("{},{},{},{},{},{:.10g}\n", cell.n, cell.T, method_name(method), metric_key(metric), t,
                             trials[t].get(metric));
        }
      }
    }
  }
  return out;
}

std::string summary_csv(const ExperimentReport& report) {
  std::string out = "N,T,method,metric,mean,min,max\n";
  for (const auto& cell : report.cells) {
    for (Method method : kAllMethods) {
      for (Metric metric : kAllMetrics) {
        const auto& s = cell.summary(method).stat(metric);
        out += fmt::format("{},{},{},{},{:.10g},{:.10g},{:.10g}\n", cell.n, cell.T, method_name(method),
                           metric_key(metric), s.mean, s.min, s.max);
      }
    }
  }
  return out;
}

void emit_csv(const ExperimentReport& report, const std::filesystem::path& dir) {
  write_text_file(dir / "trials.csv", trials_csv(report));
  write_text_file(dir / "summary.csv", summary_csv(report));
}

json to_json(const ExperimentReport& report, bool include_timing) {
  json j;
  j["config"] = config_to_json(report.config);
  json meta;
  meta["config_hash"] = report.metadata.config_hash;
  meta["version"] = report.metadata.version;
  if (include_timing) {
    meta["wall_time_seconds"] = report.metadata.wall_time_seconds;
  }
  j["metadata"] = meta;

  json cells = json::array();
  for (const auto& cell : report.cells) {
    json c;
    c["N"] = cell.n;
    c["T"] = cell.T;
    c["fsv_compounded"] = cell.fsv_compounded;
    c["fsv_raw_mean"] = cell.fsv_raw_mean;
    json methods = json::array();
    for (Method method : kAllMethods) {
      const auto& s = cell.summary(method);
      json mj;
      mj["method"] = std::string(method_name(method));
      json summary = json::object();
      for (Metric metric : kAllMetrics) {
        const auto& st = s.stat(metric);
        summary[std::string(metric_key(metric))] = {{"mean", st.mean}, {"min", st.min}, {"max", st.max}};
      }
      mj["summary"] = summary;
      json trials = json::array();
      for (const auto& t : cell.trials_of(method)) {
        trials.push_back(metrics_to_json(t));
      }
      mj["trials"] = trials;
      methods.push_back(mj);
    }
    c["methods"] = methods;
    cells.push_back(c);
  }
  j["cells"] = cells;
  return j;
}

ExperimentReport report_from_json(const json& j) {
  try {
    ExperimentReport report;
    report.config = config_from_json(j.at("config"));
    const auto& meta = j.at("metadata");
    report.metadata.config_hash = meta.at("config_hash").get<std::string>();
    report.metadata.version = meta.at("version").get<std::string>();
    report.metadata.wall_time_seconds = meta.value("wall_time_seconds", 0.0);

    for (const auto& c : j.at("cells")) {
      CellReport cell;
      cell.n = c.at("N").get<std::size_t>();
      cell.T = c.at("T").get<std::size_t>();
      cell.fsv_compounded = c.at("fsv_compounded").get<double>();
      cell.fsv_raw_mean = c.at("fsv_raw_mean").get<double>();
      for (const auto& mj : c.at("methods")) {
        const Method method = parse_method(mj.at("method").get<std::string>());
        const auto idx = static_cast<std::size_t>(method);
        auto& s = cell.summaries[idx];
        s.method = method;
        s.n = cell.n;
        for (Metric metric : kAllMetrics) {
          const auto& st = mj.at("summary").at(std::string(metric_key(metric)));
          s.stats[static_cast<std::size_t>(metric)] = {st.at("mean").get<double>(), st.at("min").get<double>(),
                                                       st.at("max").get<double>()};
        }
        for (const auto& t : mj.at("trials")) {
          cell.trials[idx].push_back(metrics_from_json(t));
        }
        s.trials = cell.trials[idx].size();
      }
      report.cells.push_back(std::move(cell));
    }
    return report;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report JSON: ") + e.what());
  }
}

void emit_json(const ExperimentReport& report, const std::filesystem::path& path) {
  write_text_file(path, to_json(report).dump(2) + "\n");
}

ExperimentReport read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path.string(), "cannot open for reading");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(path.string(), e.what());
  }
  return report_from_json(j);
}

std::string plot_csv(const CellReport& cell) {
  std::string out = "trial";
  for (Method method : kAllMethods) {
    for (Metric metric : kAllMetrics) {
      out += fmt::format(",{}_{}", method_name(method), metric_key(metric));
    }
  }
  out += '\n';
  std::size_t rows = 0;
  for (Method method : kAllMethods) {
    rows = std::max(rows, cell.trials_of(method).size());
  }
  for (std::size_t t = 0; t < rows; ++t) {
    out += fmt::format("{}", t);
    for (Method method : kAllMethods) {
      const auto& trials = cell.trials_of(method);
      for (Metric metric : kAllMetrics) {
        if (t < trials.size()) {
          out += fmt::format(",{:.10g}", trials[t].get(metric));
        } else {
          out += ',';
        }
      }
    }
    out += '\n';
  }
  return out;
}

std::vector<std::filesystem::path> emit_plotdata(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  for (const auto& cell : report.cells) {
    auto path = dir / fmt::format("plot_N{}_T{}.csv", cell.n, cell.T);
    write_text_file(path, plot_csv(cell));
    written.push_back(std::move(path));
  }
  return written;
}

}  // namespace fsv
