#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "fsv/dataset.hpp"
#include "fsv/error.hpp"
#include "fsv/estimator.hpp"
#include "fsv/kfold.hpp"
#include "oracles.hpp"

namespace {

void expect_disjoint_cover(const fsv::FoldPlan& plan, std::size_t size, std::size_t k) {
  ASSERT_EQ(plan.k(), k);
  ASSERT_EQ(plan.sample_size, size);
  std::vector<int> seen(size, 0);
  const auto expected = oracle::fold_sizes(size, k);
  for (std::size_t f = 0; f < k; ++f) {
    EXPECT_EQ(plan.folds[f].size(), expected[f]) << "size " << size << " k " << k;
    for (std::size_t i : plan.folds[f]) {
      ASSERT_LT(i, size);
      ++seen[i];
    }
  }
  for (int c : seen) ASSERT_EQ(c, 1) << "size " << size << " k " << k;
}

TEST(MakeFolds, ExhaustiveSmallSizes) {
  auto s = fsv::derive_stream(42, 0, 2);
  for (std::size_t size = 2; size <= 12; ++size) {
    for (std::size_t k = 2; k <= size; ++k) {
      for (int r = 0; r < 20; ++r) expect_disjoint_cover(fsv::make_folds(size, k, s), size, k);
    }
  }
}

TEST(MakeFolds, SpecSizes) {
  auto s = fsv::derive_stream(1, 2, 2);
  for (const auto& f : fsv::make_folds(10, 5, s).folds) EXPECT_EQ(f.size(), 2u);
  std::multiset<std::size_t> sizes;
  for (const auto& f : fsv::make_folds(11, 5, s).folds) sizes.insert(f.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{2, 2, 2, 2, 3}));
  const auto loo = fsv::make_folds(6, 6, s);
  std::set<std::size_t> all;
  for (const auto& f : loo.folds) {
    EXPECT_EQ(f.size(), 1u);
    all.insert(f[0]);
  }
  EXPECT_EQ(all, (std::set<std::size_t>{0, 1, 2, 3, 4, 5}));
}

TEST(MakeFolds, SizesForTenIntoThree) {
  auto s = fsv::derive_stream(1, 0, 2);
  const auto plan = fsv::make_folds(10, 3, s);
  EXPECT_EQ(plan.folds[0].size(), 4u);
  EXPECT_EQ(plan.folds[1].size(), 3u);
  EXPECT_EQ(plan.folds[2].size(), 3u);
}

TEST(MakeFolds, EveryPositionVisitsEveryFold) {
  auto s = fsv::derive_stream(1, 1, 2);
  std::vector<std::vector<int>> where(6, std::vector<int>(3, 0));
  for (int r = 0; r < 30'000; ++r) {
    const auto plan = fsv::make_folds(6, 3, s);
    for (std::size_t f = 0; f < 3; ++f)
      for (std::size_t i : plan.folds[f]) ++where[i][f];
  }
  for (const auto& row : where)
    for (int c : row) EXPECT_NEAR(c, 10'000, 400);
}

TEST(MakeFolds, RejectsBadK) {
  auto s = fsv::derive_stream(1, 0, 0);
  EXPECT_THROW(fsv::make_folds(5, 1, s), fsv::ValidationError);
  EXPECT_THROW(fsv::make_folds(5, 6, s), fsv::ValidationError);
}

TEST(KfoldLosses, TwoFoldExample) {
  const std::vector<double> v{0.0, 0.0, 2.0, 2.0};
  const fsv::FoldPlan plan{{{0, 1}, {2, 3}}, 4};
  EXPECT_EQ(fsv::kfold_losses(v, plan), (std::vector<double>{4.0, 4.0}));
}

TEST(KfoldLosses, ConstantSampleHasZeroLoss) {
  const std::vector<double> four(4, 5.0);
  auto s0 = fsv::derive_stream(2, 1, 2);
  EXPECT_EQ(fsv::kfold_losses(four, fsv::make_folds(4, 2, s0)), (std::vector<double>{0.0, 0.0}));
  const std::vector<double> v(12, -1.5);
  auto s = fsv::derive_stream(2, 0, 2);
  for (double l : fsv::kfold_losses(v, fsv::make_folds(12, 4, s))) EXPECT_EQ(l, 0.0);
}

TEST(EvaluateFolds, MatchesDirectFitOnComplement) {
  auto s = fsv::derive_stream(3, 0, 0);
  auto v = fsv::standard_normal(s, 103);
  for (double& x : v) x = 50.0 + 2.0 * x;
  const auto plan = fsv::make_folds(v.size(), 5, s);
  const auto evals = fsv::evaluate_folds(v, plan);
  ASSERT_EQ(evals.size(), 5u);
  for (std::size_t f = 0; f < 5; ++f) {
    std::vector<bool> in_fold(v.size(), false);
    for (std::size_t i : plan.folds[f]) in_fold[i] = true;
    std::vector<double> train, valid;
    for (std::size_t i = 0; i < v.size(); ++i) (in_fold[i] ? valid : train).push_back(v[i]);
    const double m = oracle::mean(train);
    EXPECT_NEAR(evals[f].train_mean, m, 1e-10);
    EXPECT_NEAR(evals[f].train_var, oracle::sample_var(train), 1e-9);
    EXPECT_NEAR(evals[f].loss, oracle::mse_against(valid, m), 1e-9);
  }
}

TEST(EvaluateFolds, RejectsDegeneratePlans) {
  const std::vector<double> v{1, 2, 3};
  EXPECT_THROW(fsv::evaluate_folds(v, fsv::FoldPlan{{{0, 1}, {2}}, 3}), fsv::ValidationError);
  EXPECT_THROW(fsv::evaluate_folds(v, fsv::FoldPlan{{{0}, {}}, 3}), fsv::ValidationError);
  EXPECT_THROW(fsv::evaluate_folds(v, fsv::FoldPlan{{{0}}, 4}), fsv::ValidationError);
}

TEST(KfoldLosses, LargeStandardNormalSample) {
  auto s = fsv::derive_stream(42, 0, 0);
  const auto v = fsv::standard_normal(s, 7500);
  for (double l : fsv::kfold_losses(v, fsv::make_folds(7500, 5, s))) {
    EXPECT_GE(l, 0.85);
    EXPECT_LE(l, 1.15);
  }
}

TEST(WeightedKfoldLoss, Examples) {
  const std::vector<double> losses{1.0, 2.0, 3.0};
  EXPECT_DOUBLE_EQ(fsv::empirical_kfold_loss(losses), 2.0);
  EXPECT_DOUBLE_EQ(fsv::weighted_kfold_loss(losses, fsv::LambdaWeights::uniform(3)), 2.0);
  EXPECT_DOUBLE_EQ(fsv::weighted_kfold_loss(losses, fsv::LambdaWeights({0.5, 1.0, 1.5})), 7.0 / 3.0);
  const fsv::LambdaWeights heavy({1.0, 1.0, 2.0});
  EXPECT_FALSE(heavy.sums_to_k());
  EXPECT_THROW(fsv::weighted_kfold_loss(losses, heavy), fsv::ValidationError);
  EXPECT_DOUBLE_EQ(fsv::weighted_kfold_loss(losses, heavy, fsv::WeightMode::kUnconstrained), 3.0);
}

TEST(WeightedKfoldLoss, ZeroWeightDropsAFold) {
  const std::vector<double> losses{2.0, 0.0};
  EXPECT_DOUBLE_EQ(fsv::weighted_kfold_loss(losses, fsv::LambdaWeights({2.0, 0.0})), 2.0);
}

TEST(EmpiricalKfoldLoss, Examples) {
  EXPECT_DOUBLE_EQ(fsv::empirical_kfold_loss(std::vector<double>(5, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(fsv::empirical_kfold_loss(std::vector<double>{0.0, 2.0}), 1.0);
  EXPECT_DOUBLE_EQ(fsv::empirical_kfold_loss(std::vector<double>{0.9, 1.0, 1.1, 1.0, 1.0}), 1.0);
  EXPECT_THROW(fsv::empirical_kfold_loss({}), fsv::ValidationError);
}

TEST(WeightedKfoldLoss, EqualLossesGiveThePlainAverage) {
  const fsv::LambdaWeights w({0.4, 1.6, 0.7, 1.3, 1.0});
  ASSERT_TRUE(w.sums_to_k());
  for (double c : {0.0, 0.3, 1.0, 2.718281828, 1e6}) {
    const std::vector<double> losses(5, c);
    EXPECT_DOUBLE_EQ(fsv::weighted_kfold_loss(losses, w), fsv::empirical_kfold_loss(losses));
  }
}

TEST(WeightedKfoldLoss, RejectsMismatchAndBadWeights) {
  const std::vector<double> losses{1.0, 2.0};
  EXPECT_THROW(fsv::weighted_kfold_loss(losses, fsv::LambdaWeights::uniform(3)), fsv::ValidationError);
  EXPECT_THROW(fsv::weighted_kfold_loss({}, fsv::LambdaWeights::uniform(1)), fsv::ValidationError);
  EXPECT_THROW(fsv::LambdaWeights({1.0, -1.0}), fsv::ValidationError);
  EXPECT_THROW(fsv::LambdaWeights({1.0, std::nan("")}), fsv::ValidationError);
  EXPECT_THROW(fsv::LambdaWeights(std::vector<double>{}), fsv::ValidationError);
}

TEST(WeightedKfoldLoss, VarianceFollowsSquaredWeights) {
  // With i.i.d. fold losses, Var((1/k) sum l_i L_i) = (1/k^2) sum l_i^2 Var(L).
  const std::vector<double> lambdas{0.2, 0.5, 1.0, 1.3, 2.0};
  const fsv::LambdaWeights w(lambdas);
  auto s = fsv::derive_stream(6, 0, 0);
  const int reps = 20'000;
  double sum = 0.0, sq = 0.0;
  std::vector<double> losses(5);
  for (int r = 0; r < reps; ++r) {
    for (double& l : losses) l = 1.0 + 0.1 * s.normal();
    const double x = fsv::weighted_kfold_loss(losses, w);
    sum += x;
    sq += x * x;
  }
  const double var = (sq - sum * sum / reps) / (reps - 1);
  double l2 = 0.0;
  for (double l : lambdas) l2 += l * l;
  const double expected = l2 / 25.0 * 0.01;
  EXPECT_NEAR(var / expected, 1.0, 0.10);
  EXPECT_NEAR(sum / reps, 1.0, 0.005);
}

TEST(EmpiricalKfoldLoss, UnbiasedForHeldOutLoss) {
  const std::size_t N = 2000;
  const fsv::SeedSchedule sched(77);
  const int trials = 2000;
  double sum = 0.0, sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto ds = sched.stream(t, fsv::Purpose::kData);
    const auto d = fsv::generate_dataset(N, 0.0, 1.0, ds);
    const auto draw = fsv::evaluate_draw(d, 5, fsv::FractionRange{}, sched, t);
    sum += draw.fold_average_loss;
    sq += draw.fold_average_loss * draw.fold_average_loss;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sq / trials - mean * mean) / (trials - 1));
  const double expected = oracle::expected_fold_average_loss(N, 5, 0.6, 0.9, 1.0);
  EXPECT_LT(std::abs(mean - expected), 4.0 * se) << mean << " vs " << expected;
}

TEST(EvaluateDraw, ConsistentAndReplayable) {
  auto ds = fsv::derive_stream(9, 0, 0);
  const auto d = fsv::generate_dataset(1000, 0.0, 1.0, ds);
  const fsv::SeedSchedule sched(9);
  const auto a = fsv::evaluate_draw(d, 5, fsv::FractionRange{}, sched, 4, 2);
  const auto b = fsv::evaluate_draw(d, 5, fsv::FractionRange{}, sched, 4, 2);
  EXPECT_EQ(a.sample.indices, b.sample.indices);
  EXPECT_EQ(a.fold_average_loss, b.fold_average_loss);
  EXPECT_GE(a.fraction, 0.6);
  EXPECT_LE(a.fraction, 0.9);
  EXPECT_EQ(a.sample.size(), fsv::sample_size_for_fraction(a.fraction, 1000));
  const auto x = fsv::gather(d.values(), a.sample);
  EXPECT_NEAR(a.sample_mean, oracle::mean(x), 1e-12);
  EXPECT_NEAR(a.sample_var, oracle::sample_var(x), 1e-10);
  double avg = 0.0;
  for (const auto& f : a.folds) avg += f.loss;
  EXPECT_NEAR(a.fold_average_loss, avg / 5.0, 1e-12);

  const auto c = fsv::evaluate_draw(d, 5, fsv::FixedSampleSize{40}, sched, 4);
  EXPECT_EQ(c.sample.size(), 40u);
  EXPECT_THROW(fsv::evaluate_draw(d, 5, fsv::FixedSampleSize{9}, sched, 0), fsv::ValidationError);
  EXPECT_EQ(fsv::minimum_sample_size(5), 10u);
}

TEST(RepeatedKfcv, RepetitionZeroIsTheBaseDraw) {
  auto ds = fsv::derive_stream(10, 0, 0);
  const auto d = fsv::generate_dataset(2000, 0.0, 1.0, ds);
  const fsv::SeedSchedule sched(10);
  fsv::KfcvConfig cfg;
  cfg.repetitions = 4;
  const auto est = fsv::repeated_kfcv(d, cfg, sched, 3);
  double loss = 0.0, mean = 0.0, var = 0.0;
  for (std::uint32_t r = 0; r < 4; ++r) {
    const auto draw = fsv::evaluate_draw(d, 5, cfg.size_rule, sched, 3, r);
    if (r == 0) EXPECT_EQ(est.first_fold_loss, draw.folds[0].loss);
    loss += draw.fold_average_loss;
    for (const auto& f : draw.folds) {
      mean += f.train_mean;
      var += f.train_var;
    }
  }
  EXPECT_NEAR(est.loss, loss / 4.0, 1e-12);
  EXPECT_NEAR(est.mean_estimate, mean / 20.0, 1e-12);
  EXPECT_NEAR(est.var_estimate, var / 20.0, 1e-12);
}

TEST(RepeatedKfcv, ConstantData) {
  const fsv::Dataset d(std::vector<double>(50, 3.5), 3.5, 1.0, 0);
  fsv::KfcvConfig cfg;
  cfg.k = 2;
  cfg.repetitions = 1;
  cfg.weights = fsv::LambdaWeights::uniform(2);
  const auto est = fsv::repeated_kfcv(d, cfg, fsv::SeedSchedule(1), 0);
  EXPECT_EQ(est.loss, 0.0);
  EXPECT_EQ(est.mean_estimate, 3.5);
  EXPECT_EQ(est.var_estimate, 0.0);
}

TEST(RepeatedKfcv, StandardNormalBands) {
  auto ds = fsv::derive_stream(42, 0, 0);
  const auto d = fsv::generate_dataset(10'000, 0.0, 1.0, ds);
  const fsv::SeedSchedule sched(42);
  const auto est = fsv::repeated_kfcv(d, fsv::KfcvConfig{}, sched, 0);
  EXPECT_GE(est.var_estimate, 0.97);
  EXPECT_LE(est.var_estimate, 1.03);
  EXPECT_GE(est.loss, 0.97);
  EXPECT_LE(est.loss, 1.05);
  const auto again = fsv::repeated_kfcv(d, fsv::KfcvConfig{}, sched, 0);
  EXPECT_EQ(est.mean_estimate, again.mean_estimate);
  EXPECT_EQ(est.var_estimate, again.var_estimate);
  EXPECT_EQ(est.loss, again.loss);
}

TEST(RepeatedKfcv, RejectsBadConfig) {
  auto ds = fsv::derive_stream(10, 0, 0);
  const auto d = fsv::generate_dataset(200, 0.0, 1.0, ds);
  const fsv::SeedSchedule sched(10);
  fsv::KfcvConfig cfg;
  cfg.repetitions = 0;
  EXPECT_THROW(fsv::repeated_kfcv(d, cfg, sched, 0), fsv::ValidationError);
  cfg.repetitions = 1;
  cfg.weights = fsv::LambdaWeights::uniform(4);
  EXPECT_THROW(fsv::repeated_kfcv(d, cfg, sched, 0), fsv::ValidationError);
}

}  // namespace
