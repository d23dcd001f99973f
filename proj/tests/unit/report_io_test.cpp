#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fsv/error.hpp"
#include "fsv/experiment.hpp"
#include "fsv/report_io.hpp"

namespace {

namespace fs = std::filesystem;

const fsv::ExperimentReport& small_report() {
  static const fsv::ExperimentReport report = [] {
    fsv::ExperimentConfig c;
    c.sizes = {200, 300};
    c.trials = {2, 4};
    c.repetitions = 2;
    return fsv::run_experiment(c, {1});
  }();
  return report;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fsv_report_io_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(MarkdownTable, EighteenRowsInTableOrder) {
  const auto md = fsv::emit_markdown_table(small_report(), 200);
  const auto lines = lines_of(md);
  std::vector<std::string> rows;
  for (const auto& l : lines)
    if (l.rfind("| ", 0) == 0 && l.rfind("| Statistical", 0) != 0) rows.push_back(l);
  ASSERT_EQ(rows.size(), 18u);
  const std::vector<std::string> expected_prefixes{
      "| Mean est. SRS |",     "| Mean est. KF |",     "| Mean est. FSV |",     "| Var est. SRS |",
      "| Var est. KF |",       "| Var est. FSV |",     "| MSE SRS |",           "| MSE KF |",
      "| MSE FSV |",           "| Bias SRS |",         "| Bias KF |",          "| Bias FSV |",
      "| ROC Mean est. SRS |", "| ROC Mean est. KF |", "| ROC Mean est. FSV |", "| ROC Var est. SRS |",
      "| ROC Var est. KF |",   "| ROC Var est. FSV |"};
  for (std::size_t i = 0; i < 18; ++i) EXPECT_EQ(rows[i].rfind(expected_prefixes[i], 0), 0u) << rows[i];
  EXPECT_NE(md.find("2 Trials Mean"), std::string::npos);
  EXPECT_NE(md.find("4 Trials Max"), std::string::npos);
}

TEST(MarkdownTable, FourDecimalsAndMatchingValues) {
  const auto& report = small_report();
  const auto md = fsv::emit_markdown_table(report, 300);
  const std::regex number(R"(-?\d+\.\d+)");
  for (const auto& l : lines_of(md)) {
    if (l.rfind("| Var est. FSV", 0) != 0) continue;
    std::vector<std::string> nums;
    for (std::sregex_iterator it(l.begin(), l.end(), number), end; it != end; ++it) nums.push_back(it->str());
    ASSERT_EQ(nums.size(), 6u);
    for (const auto& n : nums) EXPECT_EQ(n.size() - n.find('.') - 1, 4u) << n;
    const auto& s = report.cell(300, 4).summary(fsv::Method::kFsv).stat(fsv::Metric::kVarEst);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", s.mean);
    EXPECT_EQ(nums[3], buf);
  }
}

TEST(MarkdownTable, UnknownSizeIsAnError) {
  EXPECT_THROW(fsv::emit_markdown_table(small_report(), 999), fsv::ValidationError);
  EXPECT_THROW(fsv::emit_markdown_table(fsv::ExperimentReport{}, 200), fsv::ValidationError);
}

TEST(Csv, EmptyReportIsHeaderOnly) {
  const fsv::ExperimentReport empty;
  EXPECT_EQ(fsv::trials_csv(empty), "N,T,method,metric,trial,value\n");
  EXPECT_EQ(fsv::summary_csv(empty), "N,T,method,metric,mean,min,max\n");
}

TEST(Csv, RowCounts) {
  const auto& report = small_report();
  // 4 cells x 3 methods x 6 metrics.
  EXPECT_EQ(lines_of(fsv::summary_csv(report)).size(), 1u + 4 * 3 * 6);
  // sum over cells of T x 3 methods x 6 metrics.
  EXPECT_EQ(lines_of(fsv::trials_csv(report)).size(), 1u + (2 + 4 + 2 + 4) * 3 * 6);
}

TEST(Csv, TenSignificantDigits) {
  const auto lines = lines_of(fsv::trials_csv(small_report()));
  const std::string& row = lines[1];
  EXPECT_EQ(row.rfind("200,2,SRS,mean_est,0,", 0), 0u) << row;
  const std::string value = row.substr(row.rfind(',') + 1);
  const double v = small_report().cell(200, 2).trials_of(fsv::Method::kSrs)[0].mean_est;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  EXPECT_EQ(value, buf);
}

TEST_F(TempDir, EmitCsvWritesBothFiles) {
  fsv::emit_csv(small_report(), dir_ / "nested");
  EXPECT_EQ(slurp(dir_ / "nested" / "trials.csv"), fsv::trials_csv(small_report()));
  EXPECT_EQ(slurp(dir_ / "nested" / "summary.csv"), fsv::summary_csv(small_report()));
}

TEST_F(TempDir, JsonRoundTrip) {
  const auto path = dir_ / "report.json";
  fsv::emit_json(small_report(), path);
  const auto back = fsv::read_json(path);
  EXPECT_EQ(back, small_report());
}

TEST(Json, StableKeyOrderAndNoTimingOnRequest) {
  const auto a = fsv::to_json(small_report(), false);
  EXPECT_FALSE(a.at("metadata").contains("wall_time_seconds"));
  EXPECT_EQ(a.dump(), fsv::to_json(small_report(), false).dump());
  const auto text = a.dump();
  EXPECT_LT(text.find("\"cells\""), text.find("\"config\""));
  EXPECT_LT(text.find("\"config\""), text.find("\"metadata\""));
  EXPECT_TRUE(fsv::to_json(small_report()).at("metadata").contains("wall_time_seconds"));
}

TEST(Json, MalformedInputIsRejected) {
  EXPECT_THROW(fsv::report_from_json(nlohmann::json::object()), fsv::ValidationError);
  EXPECT_THROW(fsv::read_json("/nonexistent/report.json"), fsv::IoError);
}

TEST_F(TempDir, PlotDataOneFilePerCell) {
  const auto written = fsv::emit_plotdata(small_report(), dir_);
  ASSERT_EQ(written.size(), 4u);
  EXPECT_EQ(written[0].filename(), "plot_N200_T2.csv");
  const auto lines = lines_of(slurp(dir_ / "plot_N300_T4.csv"));
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0].rfind("trial,SRS_mean_est,SRS_var_est", 0), 0u);
  EXPECT_EQ(std::count(lines[0].begin(), lines[0].end(), ','), 18);
}

TEST(WriteTextFile, ReportsPath) {
  try {
    fsv::write_text_file("/proc/fsv_no_dir/out.txt", "x");
    FAIL() << "expected IoError";
  } catch (const fsv::IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/proc/fsv_no_dir"), std::string::npos);
  }
}

}  // namespace
