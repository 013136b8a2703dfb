#include "igrover/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "gtest/gtest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("igrover_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "igrover");
    out_.str("");
    err_.str("");
    return igrover::cli::main(args, out_, err_);
  }

  std::string small_instance() {
    return write("inst.json",
                 R"({"n": 16, "x": {"kind": "range", "lo": 0, "hi": 3}, "y": {"kind": "list", "members": [2]}})");
  }

  std::string cell_1024() {
    return write("cell.json",
                 R"({"n": 1024, "x": {"kind": "mod", "m": 64, "r": 0}, "y": {"kind": "list", "members": [0]}})");
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, run_both_engines) {
  const auto inst = small_instance();
  const auto out = path("result.json");
  const auto trace = path("trace.csv");
  ASSERT_EQ(run({"run", "--instance", inst, "--engine", "both", "--seed", "7", "--out", out,
                 "--trace", trace}),
            0)
      << err_.str();
  const auto j = json::parse(slurp(out));
  EXPECT_EQ(j["L"], 2);
  EXPECT_EQ(j["policy"], "paper_formula");
  EXPECT_EQ(j["counts"]["x_queries"], 6);
  EXPECT_EQ(j["counts"]["y_queries"], 1);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_TRUE(j["verified"].get<bool>());
  EXPECT_EQ(j["measured_index"], 2);
  EXPECT_NEAR(j["p_success_exact"].get<double>(), 0.47265625, 1e-12);
  EXPECT_LE(j["max_engine_deviation"].get<double>(), 1e-9);
  const double total = j["cost"]["total"];
  EXPECT_DOUBLE_EQ(total, j["counts"]["repetitions"].get<double>() * 7.0);
  for (const char* key : {"instance", "cost", "counts"}) EXPECT_TRUE(j.contains(key));

  std::istringstream csv(slurp(trace));
  std::string line;
  int rows = -1;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 1 + 2 * (3 * 2 + 1));
}

TEST_F(CliTest, run_is_deterministic) {
  const auto inst = small_instance();
  ASSERT_EQ(run({"run", "--instance", inst, "--seed", "3"}), 0);
  const auto first = out_.str();
  ASSERT_EQ(run({"run", "--instance", inst, "--seed", "3"}), 0);
  EXPECT_EQ(out_.str(), first);
}

TEST_F(CliTest, run_rejects_not_subset) {
  const auto bad = write("bad.json",
                         R"({"n": 16, "x": {"kind": "range", "lo": 0, "hi": 3}, "y": {"kind": "list", "members": [5]}})");
  EXPECT_EQ(run({"run", "--instance", bad}), 1);
  EXPECT_NE(err_.str().find("NotSubset"), std::string::npos);
  EXPECT_NE(err_.str().find("index 5"), std::string::npos);
}

TEST_F(CliTest, run_engine_full_respects_cap) {
  const auto inst = cell_1024();
  setenv("IGROVER_FULL_CAP", "512", 1);
  EXPECT_EQ(run({"run", "--instance", inst, "--engine", "full"}), 1);
  EXPECT_NE(err_.str().find("InstanceTooLarge"), std::string::npos);
  unsetenv("IGROVER_FULL_CAP");
  EXPECT_EQ(run({"run", "--instance", inst, "--engine", "full", "--reps", "200"}), 0) << err_.str();
}

TEST_F(CliTest, run_reports_exhausted_repetitions) {
  const auto inst = write("hard.json",
                          R"({"n": 16384, "x": {"kind": "range", "lo": 0, "hi": 1023}, "y": {"kind": "list", "members": [9]}})");
  // p ≈ 0.0084 per run; seed 1 fails its only repetition.
  int exhausted = 0;
  for (int seed = 0; seed < 10; ++seed) {
    const int code = run({"run", "--instance", inst, "--reps", "1", "--seed", std::to_string(seed)});
    ASSERT_TRUE(code == 0 || code == 3);
    if (code == 3) {
      ++exhausted;
      EXPECT_FALSE(json::parse(out_.str())["verified"].get<bool>());
    }
  }
  EXPECT_GT(exhausted, 5);
}

TEST_F(CliTest, run_engine_mismatch_exit_code) {
  // A negative tolerance can never be met, which exercises the mismatch path.
  EXPECT_EQ(run({"run", "--instance", small_instance(), "--engine", "both", "--tol", "-1"}), 2);
  EXPECT_NE(err_.str().find("disagreement"), std::string::npos);
}

TEST_F(CliTest, run_dumps_state) {
  const auto dump = path("state.bin");
  ASSERT_EQ(run({"run", "--instance", small_instance(), "--engine", "full", "--dump-state", dump}), 0);
  EXPECT_EQ(fs::file_size(dump), 16u + 16u * 8u);
  EXPECT_EQ(run({"run", "--instance", small_instance(), "--dump-state", dump}), 1);
}

TEST_F(CliTest, sweep_single_instance_window) {
  const auto inst = cell_1024();
  ASSERT_EQ(run({"sweep", "--instance", inst, "--window", "0"}), 0);
  std::istringstream csv(out_.str());
  std::string header, row, extra;
  std::getline(csv, header);
  EXPECT_EQ(header, "n,x_size,y_size,L,p_success,cost");
  std::getline(csv, row);
  EXPECT_EQ(row.substr(0, 15), "1024,16,1,6,0.4");
  EXPECT_FALSE(std::getline(csv, extra));
}

TEST_F(CliTest, sweep_grid_is_ordered_and_stable) {
  const auto grid = write("grid.json", R"({"n": [16384, 1024, 2048, 4096, 8192], "x": [64, 16], "y": [1]})");
  ASSERT_EQ(run({"sweep", "--grid", grid, "--tx", "1", "--ty", "50"}), 0) << err_.str();
  const auto first = out_.str();
  std::istringstream csv(first);
  std::string line;
  std::vector<std::string> rows;
  std::getline(csv, line);
  while (std::getline(csv, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows.front().substr(0, 10), "1024,16,1,");
  EXPECT_EQ(rows.back().substr(0, 11), "16384,64,1,");
  ASSERT_EQ(run({"sweep", "--grid", grid, "--tx", "1", "--ty", "50"}), 0);
  EXPECT_EQ(out_.str(), first);
}

TEST_F(CliTest, sweep_rejects_invalid_grid) {
  const auto grid = write("grid.json", R"({"n": [8], "x": [16], "y": [1]})");
  EXPECT_EQ(run({"sweep", "--grid", grid}), 1);
  const auto empty = write("empty.json", R"({"n": [], "x": [16], "y": [1]})");
  EXPECT_EQ(run({"sweep", "--grid", empty}), 1);
  EXPECT_EQ(run({"sweep"}), 1);
}

TEST_F(CliTest, compare_reports_crossover) {
  ASSERT_EQ(run({"compare", "--instance", cell_1024(), "--tx", "1", "--ty", "100"}), 0);
  const auto j = json::parse(out_.str());
  EXPECT_DOUBLE_EQ(j["new"]["cost"].get<double>(), 118.0);
  EXPECT_DOUBLE_EQ(j["naive"]["cost"].get<double>(), 2500.0);
  EXPECT_NEAR(j["ratio"].get<double>(), 0.047, 5e-4);
  EXPECT_DOUBLE_EQ(j["crossover_t_y"].get<double>(), 0.75);
  EXPECT_FALSE(j["baseline_wins"].get<bool>());
}

TEST_F(CliTest, compare_flags_baseline_regime) {
  const auto inst = write("close.json",
                          R"({"n": 1024, "x": {"kind": "range", "lo": 0, "hi": 15}, "y": {"kind": "range", "lo": 0, "hi": 14}})");
  ASSERT_EQ(run({"compare", "--instance", inst}), 0);
  const auto j = json::parse(out_.str());
  EXPECT_TRUE(j["baseline_wins"].get<bool>());
  EXPECT_GT(j["ratio"].get<double>(), 1.0);
  EXPECT_EQ(run({"compare", "--instance", inst, "--ty", "0"}), 1);
}

TEST_F(CliTest, binary_exit_codes) {
  const auto inst = small_instance();
  const std::string bin = IGROVER_CLI_PATH;
  auto status = [](const std::string& cmd) { return WEXITSTATUS(std::system(cmd.c_str())); };
  EXPECT_EQ(status(bin + " run --instance " + inst + " --engine both --seed 7 > /dev/null"), 0);
  EXPECT_EQ(status(bin + " run --instance " + path("missing.json") + " 2> /dev/null"), 1);
  EXPECT_EQ(status(bin + " frobnicate 2> /dev/null"), 1);
}
