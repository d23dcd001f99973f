#include "fsv/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <set>

#include <fmt/format.h>

#include "fsv/dataset.hpp"
#include "fsv/estimator.hpp"
#include "fsv/experiment.hpp"
#include "fsv/kfold.hpp"
#include "fsv/rng.hpp"
#include "fsv/sampling.hpp"
#include "fsv/stattheory.hpp"

namespace fsv {
namespace {

SelfCheck check(std::string name, const std::function<std::string()>& body) {
  SelfCheck c{std::move(name), false, {}};
  try {
    c.detail = body();
    c.passed = c.detail.empty();
  } catch (const std::exception& e) {
    c.detail = std::string("exception: ") + e.what();
  }
  return c;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

std::vector<SelfCheck> run_selftest() {
  std::vector<SelfCheck> out;

  out.push_back(check("stream replay determinism", [] {
    auto a = derive_stream(42, 7, 3);
    auto b = derive_stream(42, 7, 3);
    for (int i = 0; i < 10000; ++i) {
      if (a() != b()) {
        return fmt::format("draw {} differs", i);
      }
    }
    auto na = derive_stream(42, 7, 3);
    auto nb = derive_stream(42, 7, 3);
    if (standard_normal(na, 1000) != standard_normal(nb, 1000)) {
      return std::string("normal draws differ");
    }
    return std::string();
  }));

  out.push_back(check("fold plans are disjoint covers (size <= 12)", [] {
    auto stream = derive_stream(1, 0, 0);
    for (std::size_t size = 2; size <= 12; ++size) {
      for (std::size_t k = 2; k <= size; ++k) {
        const auto plan = make_folds(size, k, stream);
        std::set<std::size_t> seen;
        std::size_t smallest = size;
        std::size_t largest = 0;
        for (const auto& fold : plan.folds) {
          smallest = std::min(smallest, fold.size());
          largest = std::max(largest, fold.size());
          for (std::size_t i : fold) {
            if (!seen.insert(i).second) {
              return fmt::format("size {} k {}: index {} repeated", size, k, i);
            }
          }
        }
        if (seen.size() != size || *seen.rbegin() != size - 1) {
          return fmt::format("size {} k {}: not a cover", size, k);
        }
        if (largest - smallest > 1) {
          return fmt::format("size {} k {}: unbalanced folds", size, k);
        }
      }
    }
    return std::string();
  }));

  out.push_back(check("SRS indices are distinct and in range", [] {
    auto stream = derive_stream(2, 0, 0);
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t n = 1 + stream.uniform_below(60);
      const std::size_t m = 1 + stream.uniform_below(n);
      const auto s = srs_sample(n, m, stream);
      std::set<std::size_t> unique(s.indices.begin(), s.indices.end());
      if (unique.size() != m || *unique.rbegin() >= n) {
        return fmt::format("n {} m {}: bad sample", n, m);
      }
    }
    return std::string();
  }));

  out.push_back(check("finite-population correction vanishes at n = N", [] {
    if (srs_variance_component(1.0, 1000, 1000) != 0.0) {
      return std::string("srs component nonzero at census");
    }
    const auto mom = inclusion_moments(100, 100);
    if (mom.expected_count != 100.0 || mom.count_variance != 0.0) {
      return std::string("inclusion moments wrong at census");
    }
    return std::string();
  }));

  out.push_back(check("unit lambdas reproduce the plain k-fold average", [] {
    const std::vector<double> losses{0.9, 1.0, 1.1, 1.05, 0.95};
    const double plain = empirical_kfold_loss(losses);
    const double weighted = weighted_kfold_loss(losses, LambdaWeights::uniform(5));
    if (plain != weighted) {
      return fmt::format("{} vs {}", plain, weighted);
    }
    return std::string();
  }));

  out.push_back(check("loss = population variance + squared offset", [] {
    auto stream = derive_stream(3, 0, 0);
    const auto v = standard_normal(stream, 257);
    const ModelParams model{0.3, 1.0};
    double mean = 0.0;
    for (double x : v) {
      mean += x;
    }
    mean /= static_cast<double>(v.size());
    double var_pop = 0.0;
    for (double x : v) {
      var_pop += (x - mean) * (x - mean);
    }
    var_pop /= static_cast<double>(v.size());
    const double expected = var_pop + (mean - 0.3) * (mean - 0.3);
    const double got = loss(model, v);
    return close(got, expected, 1e-10) ? std::string() : fmt::format("{} vs {}", got, expected);
  }));

  out.push_back(check("FSV summaries equal alpha x SRS with shared streams", [] {
    ExperimentConfig cfg;
    cfg.sizes = {400};
    cfg.trials = {8};
    cfg.repetitions = 2;
    cfg.shared_streams = true;
    const auto cell = run_cell(cfg, 400, 8, RunOptions{1});
    for (Metric metric : kAllMetrics) {
      const auto& srs = cell.summary(Method::kSrs).stat(metric);
      const auto& fsv = cell.summary(Method::kFsv).stat(metric);
      if (!close(fsv.mean, cfg.alpha * srs.mean, 1e-12) || !close(fsv.min, cfg.alpha * srs.min, 1e-12) ||
          !close(fsv.max, cfg.alpha * srs.max, 1e-12)) {
        return fmt::format("metric {} breaks the alpha identity", metric_key(metric));
      }
    }
    return std::string();
  }));

  out.push_back(check("variance budget at T = 1 is the component sum", [] {
    const std::vector<double> folds(5, 0.0013);
    const auto b = hybrid_variance(1.0, 7500, 10000, folds, 1);
    return b.total_per_T == b.srs_component + b.kfcv_component ? std::string() : std::string("mismatch");
  }));

  return out;
}

}  // namespace fsv
