// Copyright 2026 The qdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/experiment.hpp"
#include "qdisc/rng.hpp"

namespace qdisc {
namespace {

namespace fs = std::filesystem;

class ExperimentTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qdisc_exp_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  static std::vector<std::vector<std::string>> rows(const std::string& p) {
    std::vector<std::vector<std::string>> out;
    std::ifstream is(p);
    std::string line;
    while (std::getline(is, line)) {
      std::vector<std::string> f;
      std::stringstream ss(line);
      std::string c;
      while (std::getline(ss, c, ',')) f.push_back(c);
      out.push_back(f);
    }
    return out;
  }

  fs::path dir_;
};

TEST(Fit, RecoversSyntheticExponent) {
  std::vector<std::size_t> n;
  std::vector<Real> cost;
  for (int e = 10; e <= 20; e += 2) {
    for (int t = 0; t < 10; ++t) {
      n.push_back(std::size_t{1} << e);
      cost.push_back(Real(7) * pow(Real(std::size_t{1} << e), Real(1) / 3));
    }
  }
  auto f = fit_exponent(n, cost);
  EXPECT_NEAR(f.slope, 1.0 / 3, 1e-6);
  EXPECT_NEAR(f.intercept, std::log(7.0), 1e-6);
  EXPECT_NEAR(f.ci_low, 1.0 / 3, 1e-6);
  EXPECT_NEAR(f.ci_high, 1.0 / 3, 1e-6);
  EXPECT_EQ(f.points, 6u);
}

TEST(Fit, InsufficientData) {
  std::vector<std::size_t> n = {1024, 2048, 4096, 8192};
  std::vector<Real> cost(4, Real(1));
  try {
    fit_exponent(n, cost);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
  std::vector<std::size_t> n5;
  std::vector<Real> c5;
  for (int e = 10; e < 15; ++e) {
    for (int t = 0; t < 9; ++t) {
      n5.push_back(std::size_t{1} << e);
      c5.push_back(Real(2));
    }
  }
  EXPECT_THROW(fit_exponent(n5, c5), Error);
}

TEST(Spec, SetAndValidate) {
  ExperimentSpec s;
  s.set("count_mode", "exact");
  EXPECT_EQ(s.mode, CountMode::kExact);
  s.set("n-values", "2^10..2^14");
  EXPECT_EQ(s.n_values, (std::vector<std::size_t>{1024, 4096, 16384}));
  s.set("n-values", "100,200");
  EXPECT_EQ(s.n_values, (std::vector<std::size_t>{100, 200}));
  try {
    s.set("bogus", "1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUsage);
  }
  EXPECT_THROW(s.set("delta", "abc"), Error);
  ExperimentSpec a, b;
  a.seed = 1;
  b.seed = 2;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  b.seed = 1;
  EXPECT_EQ(config_hash(a), config_hash(b));
  ExperimentSpec bad;
  bad.task = "nope";
  bad.out = "x";
  EXPECT_THROW(bad.validate(), Error);
}

TEST_F(ExperimentTest, DeterministicCsvWithHashAndSeed) {
  ExperimentSpec s;
  s.task = "est-vertices";
  s.instance = "disc-rich:delta=0.2";
  s.n = 4096;
  s.trials = 6;
  s.seed = 42;
  s.threads = 3;
  s.out = path("a.csv");
  auto sum = run_experiment(s);
  s.out = path("b.csv");
  s.threads = 1;
  run_experiment(s);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  auto r = rows(path("a.csv"));
  ASSERT_EQ(r.size(), 1u + 6 + 1);
  EXPECT_EQ(r[0][0], "row");
  EXPECT_EQ(r[0][1], "config_hash");
  EXPECT_EQ(r[0][2], "seed");
  for (std::size_t i = 1; i < r.size(); ++i) {
    EXPECT_EQ(r[i][1], sum.config_hash);
    if (r[i][0] == "trial") {
      const auto t = std::stoull(r[i][3]);
      EXPECT_EQ(r[i][2], std::to_string(derive_seed(42, 2 * t + 1)));
    } else {
      EXPECT_EQ(r[i][2], "42");
    }
  }
  EXPECT_EQ(r.back()[0], "summary");
  auto j = nlohmann::json::parse(slurp(path("a.csv.json")));
  EXPECT_EQ(j["config_hash"], sum.config_hash);
}

TEST_F(ExperimentTest, FiftyTrialDiscStar) {
  ExperimentSpec s;
  s.task = "est-disc-star";
  s.instance = "disc-rich:delta=0.25";
  s.d = 1;
  s.q = 1;
  s.delta = 0.25;
  s.n = 2048;
  s.trials = 50;
  s.out = path("star.csv");
  auto sum = run_experiment(s);
  auto r = rows(s.out);
  std::size_t trials = 0, summaries = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    trials += r[i][0] == "trial";
    summaries += r[i][0] == "summary";
  }
  EXPECT_EQ(trials, 50u);
  EXPECT_EQ(summaries, 1u);
  EXPECT_EQ(sum.rows, 50u);
  EXPECT_GE(sum.success_rate, 0.0);
}

TEST_F(ExperimentTest, CatalogDumpIsDeterministic) {
  ExperimentSpec s;
  s.task = "catalog-dump";
  s.d = 1;
  s.q = 1;
  s.out = path("c1.csv");
  auto sum = run_experiment(s);
  EXPECT_EQ(sum.rows, 6u);
  s.out = path("c2.csv");
  run_experiment(s);
  EXPECT_EQ(slurp(path("c1.csv")), slurp(path("c2.csv")));
  EXPECT_EQ(slurp(path("c1.csv.matrix.csv")), slurp(path("c2.csv.matrix.csv")));
  EXPECT_EQ(sum.artifacts.size(), 3u);
}

TEST_F(ExperimentTest, PartialArtifactsAreRemovedOnError) {
  // The sidecar path is a directory, so the last write fails.
  fs::create_directories(path("p.csv.json"));
  ExperimentSpec s;
  s.task = "catalog-dump";
  s.d = 1;
  s.q = 1;
  s.out = path("p.csv");
  try {
    run_experiment(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
  EXPECT_FALSE(fs::exists(path("p.csv")));
  EXPECT_FALSE(fs::exists(path("p.csv.matrix.csv")));
}

TEST_F(ExperimentTest, SweepThenFitCsv) {
  ExperimentSpec s;
  s.task = "scaling-sweep";
  s.sweep_task = "est-vertices";
  s.instance = "disc-rich:delta=0.2";
  s.n_values = {1024, 2048, 4096, 8192, 16384};
  s.trials = 10;
  s.out = path("sweep.csv");
  run_experiment(s);
  auto j = nlohmann::json::parse(slurp(path("sweep.csv.json")));
  ASSERT_TRUE(j.contains("fit"));
  const double slope = j["fit"]["slope"];
  ExperimentSpec f;
  f.task = "fit-exponent";
  f.input = s.out;
  f.out = path("fit.csv");
  run_experiment(f);
  auto r = rows(f.out);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(std::stod(r[1][2]), slope, 1e-9);
  EXPECT_NEAR(slope, 1.0 / 3, 0.15);
}

TEST_F(ExperimentTest, StarFreeTaskEmitsBaselineRows) {
  ExperimentSpec s;
  s.task = "test-star-free";
  s.instance = "reduction:far";
  s.n = 4096;
  s.trials = 4;
  s.out = path("t.csv");
  run_experiment(s);
  auto r = rows(s.out);
  std::size_t quantum = 0, baseline = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i][0] != "trial") continue;
    quantum += r[i][5] == "quantum";
    baseline += r[i][5] == "baseline";
    if (r[i][5] == "quantum") {
      EXPECT_EQ(r[i][11], "0");
    }
  }
  EXPECT_EQ(quantum, 4u);
  EXPECT_EQ(baseline, 4u);
}

}  // namespace
}  // namespace qdisc
