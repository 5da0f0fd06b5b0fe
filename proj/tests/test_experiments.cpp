// Copyright 2026 The locw1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "locw1/experiments.hpp"
#include "locw1/states.hpp"

using namespace locw1;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

std::string csv_of(const ExperimentReport& report) {
  std::ostringstream os;
  write_csv(os, report);
  return os.str();
}

double mean_of(const std::vector<ResultRow>& rows, std::int64_t samples) {
  double acc = 0.0;
  int count = 0;
  for (const ResultRow& r : rows)
    if (r.samples == samples) {
      acc += r.value;
      ++count;
    }
  REQUIRE(count > 0);
  return acc / count;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) {
    if (value)
      setenv("LOCW1_WORKERS", value, 1);
    else
      unsetenv("LOCW1_WORKERS");
  }
  ~EnvGuard() { unsetenv("LOCW1_WORKERS"); }
};

}  // namespace

TEST_CASE("config files parse with comments, blanks, and overrides") {
  const std::string path = write_temp("locw1_cfg_good.txt",
                                      "# demo\n"
                                      "\n"
                                      "experiment = shadow-converge\n"
                                      "n=3\n"
                                      "state =  haar:3@11\n"
                                      "w = 0.5, 0.3\n"
                                      "N=\n"
                                      "k_cut = 2\n"
                                      "delta=0.05\n"
                                      "trials = 7\n"
                                      "seed=99\n"
                                      "metric=ub\n"
                                      "schedule=geometric\n"
                                      "c=4.5\n"
                                      "bell_c1=6\n"
                                      "bell_c2=7\n"
                                      "out=/tmp/x.csv\n");
  const ExperimentConfig cfg = ExperimentConfig::from_file(path);
  CHECK(cfg.experiment == "shadow-converge");
  CHECK(cfg.n == 3);
  CHECK(cfg.state == "haar:3@11");
  REQUIRE(cfg.w.size() == 2);
  CHECK(cfg.w[0] == 0.5);
  CHECK(cfg.w[1] == 0.3);
  CHECK(cfg.n_list.empty());
  CHECK(cfg.k_cut == 2);
  CHECK(cfg.delta == 0.05);
  CHECK(cfg.trials == 7);
  CHECK(cfg.seed == 99);
  CHECK(cfg.metric == "ub");
  CHECK(cfg.c == 4.5);
  CHECK(cfg.bell_c1 == 6.0);
  CHECK(cfg.bell_c2 == 7.0);
  CHECK(cfg.out == "/tmp/x.csv");
  CHECK_NOTHROW(cfg.validate());

  CHECK_THROWS_AS(ExperimentConfig::from_file("/tmp/locw1_no_such_file"), std::runtime_error);
  const std::string bad = write_temp("locw1_cfg_bad.txt", "n 4\n");
  CHECK_THROWS_AS(ExperimentConfig::from_file(bad), std::invalid_argument);
}

TEST_CASE("key application rejects junk and splits lists") {
  ExperimentConfig cfg;
  cfg.apply_key("N", "100, 400,1600");
  REQUIRE(cfg.n_list.size() == 3);
  CHECK(cfg.n_list[2] == 1600);
  cfg.apply_key("w", "0.25");
  REQUIRE(cfg.w.size() == 1);
  // Re-application replaces rather than appends.
  cfg.apply_key("w", "0.5,0.4");
  REQUIRE(cfg.w.size() == 2);

  CHECK_THROWS_AS(cfg.apply_key("frobnicate", "1"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply_key("n", "four"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply_key("n", "4x"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply_key("delta", "0.x1"), std::invalid_argument);
  CHECK_THROWS_AS(cfg.apply_key("w", "0.5,oops"), std::invalid_argument);
}

TEST_CASE("config validation pins the accepted vocabulary") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  auto broken = [&](const char* key, const char* value) {
    ExperimentConfig bad = cfg;
    bad.apply_key(key, value);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  };
  broken("experiment", "warp-drive");
  broken("n", "0");
  broken("trials", "0");
  broken("delta", "0");
  broken("delta", "1");
  broken("schedule", "harmonic");
  broken("metric", "approx");
  broken("k_cut", "-1");
  broken("k_cut", "9");
}

TEST_CASE("formatted doubles survive a parse round trip") {
  for (double v : {0.0, 0.5, -2.5, 1.0 / 3.0, 0.1, 1e-17, 12345.6789, 6.02e23}) {
    const std::string text = format_double(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("state grammar builds the advertised factors") {
  Rng rng(5);
  CHECK((make_state("ghz+", 3, rng).matrix() - ghz(3, +1).matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((make_state("ghz-:2", 4, rng).matrix() - ghz(2, -1).matrix()).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((make_state("basis:01", 2, rng).matrix() - basis_state("01").matrix())
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK((make_state("mm:1", 3, rng).matrix() - maximally_mixed(1).matrix()).cwiseAbs().maxCoeff() ==
        0.0);

  // '@SEED' freezes the factor independently of the outer stream.
  Rng ra(1), rb(2);
  const DensityMatrix fixed_a = make_state("mixed:2:3@7", 2, ra);
  const DensityMatrix fixed_b = make_state("mixed:2:3@7", 2, rb);
  CHECK((fixed_a.matrix() - fixed_b.matrix()).cwiseAbs().maxCoeff() == 0.0);
  Rng r7(7);
  CHECK((fixed_a.matrix() - random_mixed(2, 3, r7).matrix()).cwiseAbs().maxCoeff() == 0.0);
  // Without a pin, consecutive draws differ.
  Rng rc(3);
  const DensityMatrix d1 = make_state("haar:2", 2, rc);
  const DensityMatrix d2 = make_state("haar:2", 2, rc);
  CHECK((d1.matrix() - d2.matrix()).cwiseAbs().maxCoeff() > 1e-6);

  const DensityMatrix prod = make_state("basis:0*basis:1", 2, rng);
  CHECK((prod.matrix() - basis_state("01").matrix()).cwiseAbs().maxCoeff() == 0.0);
  const DensityMatrix wide = make_state("ghz+:2*mm:1", 1, rng);
  CHECK(wide.num_qubits() == 3);
  CHECK(std::abs(wide.matrix().trace().real() - 1.0) < 1e-12);
  const DensityMatrix heat = make_state("gibbs:2@3", 2, rng);
  CHECK(std::abs(heat.matrix().trace().real() - 1.0) < 1e-12);

  CHECK_THROWS_AS(make_state("", 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(make_state("wobble", 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(make_state("haar*mm", 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(make_state("mixed:2", 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(make_state("basis", 2, rng), std::invalid_argument);
  CHECK_THROWS_AS(make_state("haar:1@x", 2, rng), std::invalid_argument);
}

TEST_CASE("derived truncation orders and round counts match hand values") {
  CHECK(shadow_truncation_order(0.5, 4.0, 4) == 4);  // capped at n
  CHECK(shadow_truncation_order(0.3, 4.0, 4) == 4);
  CHECK(shadow_truncation_order(0.5, 6.0, 4) == 2);
  CHECK(shadow_truncation_order(1.0, 6.0, 4) == 1);
  CHECK(shadow_truncation_order(0.5, 6.0, 1) == 1);
  CHECK_THROWS_AS(shadow_truncation_order(0.0, 4.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(shadow_truncation_order(0.5, 3.0, 4), std::invalid_argument);

  CHECK(shadow_campaign_rounds(4, 4, 0.5, 0.1) == 410);
  CHECK(shadow_campaign_rounds(4, 4, 0.3, 0.1) == 1139);
  CHECK(shadow_campaign_rounds(2, 1, 0.5, 0.1) > 0);
  CHECK(shadow_campaign_rounds(4, 4, 0.3, 0.1) > shadow_campaign_rounds(4, 4, 0.5, 0.1));
  CHECK_THROWS_AS(shadow_campaign_rounds(4, 4, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(shadow_campaign_rounds(4, 4, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(shadow_campaign_rounds(4, 4, 1e-10, 0.1), std::overflow_error);

  CHECK(bell_truncation_order(0.5, 4.0, 4) == 1);
  CHECK(bell_truncation_order(0.35, 4.0, 4) == 2);
  CHECK(bell_truncation_order(0.25, 4.0, 4) == 2);
  CHECK(bell_truncation_order(0.9, 4.0, 4) == 1);   // floor clamp
  CHECK(bell_truncation_order(0.01, 2.1, 2) == 2);  // ceiling clamp at n
  CHECK_THROWS_AS(bell_truncation_order(0.0, 4.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(bell_truncation_order(0.5, 2.0, 4), std::invalid_argument);
}

TEST_CASE("transport evaluation reports the GHZ pair distance and its certificates") {
  ExperimentConfig cfg;
  cfg.experiment = "w1loc-eval";
  cfg.n = 2;
  cfg.state = "ghz+";
  cfg.state2 = "ghz-";
  cfg.trials = 2;
  cfg.seed = 17;
  const ExperimentReport report = run_w1loc_eval(cfg);
  CHECK(report.ok);
  REQUIRE(report.rows.size() == 10);
  for (const ResultRow& r : report.rows) {
    CHECK(r.experiment == "w1loc-eval");
    CHECK(r.samples == 0);
    // Geometric base 4 gives c_2 = 2, and the GHZ pair distance is 1/c_2.
    if (r.metric == "w1loc") CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
    if (r.metric == "duality_gap") CHECK(r.value <= 1e-7);
  }

  ExperimentConfig ub = cfg;
  ub.metric = "ub";
  const ExperimentReport rough = run_w1loc_eval(ub);
  CHECK(rough.ok);
  REQUIRE(rough.rows.size() == 4);
  CHECK(rough.rows[0].metric == "trace_lower");
  CHECK(rough.rows[1].metric == "w1loc_ub");

  ExperimentConfig big = cfg;
  big.n = 9;
  big.state = "mm";
  big.state2 = "";
  CHECK_THROWS_AS(run_w1loc_eval(big), std::domain_error);
}

TEST_CASE("thermal consistency check accepts random chain pairs") {
  ExperimentConfig cfg;
  cfg.experiment = "gibbs-check";
  cfg.n = 3;
  cfg.trials = 3;
  cfg.seed = 23;
  const ExperimentReport report = run_gibbs_check(cfg);
  CHECK(report.ok);
  REQUIRE(report.rows.size() == 6);
  for (const ResultRow& r : report.rows) {
    if (r.metric == "gibbs_identity_residual") CHECK(r.value <= 1e-8);
    if (r.metric == "holder_slack") CHECK(r.value <= 1e-8);
  }
  ExperimentConfig tiny = cfg;
  tiny.n = 1;
  CHECK_THROWS_AS(run_gibbs_check(tiny), std::invalid_argument);
}

TEST_CASE("property suite passes and touches every invariant") {
  ExperimentConfig cfg;
  cfg.experiment = "props";
  cfg.n = 2;
  cfg.trials = 2;
  cfg.seed = 29;
  const ExperimentReport report = run_property_suite(cfg);
  CHECK(report.ok);
  std::set<std::string> metrics;
  for (const ResultRow& r : report.rows) metrics.insert(r.metric);
  for (const char* want : {"duality_gap", "sandwich_lower_slack", "sandwich_upper_slack",
                           "hamming_error", "additivity_error", "superadditivity_slack",
                           "contraction_slack", "tensor_bound_slack", "homogeneity_error",
                           "triangle_slack", "ghz_value_error"})
    CHECK(metrics.count(want) == 1);
}

TEST_CASE("shadow campaign with explicit round counts shrinks with more data") {
  ExperimentConfig cfg;
  cfg.experiment = "shadow-converge";
  cfg.n = 2;
  cfg.state = "ghz+";
  cfg.w.clear();
  cfg.n_list = {50, 5000};
  cfg.trials = 4;
  cfg.seed = 31;
  const ExperimentReport report = run_shadow_convergence(cfg);
  REQUIRE(report.rows.size() == 8);
  bool derived_seen = false;
  for (const std::string& line : report.manifest)
    derived_seen = derived_seen || line.find("k=2 M=15 N=50") != std::string::npos;
  CHECK(derived_seen);
  for (const ResultRow& r : report.rows) CHECK(r.metric == "w1loc");
  CHECK(mean_of(report.rows, 50) > mean_of(report.rows, 5000));

  ExperimentConfig both = cfg;
  both.w = {0.5};
  CHECK_THROWS_AS(run_shadow_convergence(both), std::invalid_argument);
  ExperimentConfig neither = cfg;
  neither.n_list.clear();
  CHECK_THROWS_AS(run_shadow_convergence(neither), std::invalid_argument);
  ExperimentConfig nonpos = cfg;
  nonpos.n_list = {0};
  CHECK_THROWS_AS(run_shadow_convergence(nonpos), std::invalid_argument);
  // Accuracy-driven campaigns insist on a geometric schedule with base
  // above sqrt(10); explicit counts have no such requirement.
  ExperimentConfig weak = cfg;
  weak.n_list.clear();
  weak.w = {0.5};
  weak.c = 3.1;
  CHECK_THROWS_AS(run_shadow_convergence(weak), std::invalid_argument);
  weak.c = 4.0;
  weak.schedule = "ones";
  CHECK_THROWS_AS(run_shadow_convergence(weak), std::invalid_argument);
}

TEST_CASE("pair measurement campaign derives the published budget") {
  ExperimentConfig cfg;
  cfg.experiment = "bell-converge";
  cfg.n = 2;
  cfg.state = "ghz+";
  cfg.w = {0.5};
  cfg.trials = 2;
  cfg.seed = 37;
  const ExperimentReport report = run_bell_convergence(cfg);
  REQUIRE(report.rows.size() == 2);
  bool derived_seen = false;
  for (const std::string& line : report.manifest)
    derived_seen =
        derived_seen || line.find("k=1 M=6 N1=613 N2=155 copies=1381") != std::string::npos;
  CHECK(derived_seen);
  for (const ResultRow& r : report.rows) {
    CHECK(r.samples == 1381);
    CHECK(r.value >= 0.0);
  }

  ExperimentConfig counts = cfg;
  counts.n_list = {100};
  CHECK_THROWS_AS(run_bell_convergence(counts), std::invalid_argument);
  ExperimentConfig empty = cfg;
  empty.w.clear();
  CHECK_THROWS_AS(run_bell_convergence(empty), std::invalid_argument);
  ExperimentConfig ones = cfg;
  ones.schedule = "ones";
  CHECK_THROWS_AS(run_bell_convergence(ones), std::invalid_argument);
}

TEST_CASE("dispatch, byte-stable CSV, and worker-count independence") {
  ExperimentConfig cfg;
  cfg.experiment = "shadow-converge";
  cfg.n = 2;
  cfg.state = "haar:2";
  cfg.n_list = {200};
  cfg.trials = 3;
  cfg.seed = 41;

  std::string serial, pooled;
  {
    EnvGuard env("1");
    serial = csv_of(run_experiment(cfg));
  }
  {
    EnvGuard env("4");
    pooled = csv_of(run_experiment(cfg));
  }
  CHECK(serial == pooled);
  CHECK(serial == csv_of(run_experiment(cfg)));

  ExperimentConfig other = cfg;
  other.seed = 42;
  CHECK(csv_of(run_experiment(other)) != serial);

  std::istringstream in(serial);
  std::string line;
  int hashes = 0;
  std::getline(in, line);
  while (line.rfind("# ", 0) == 0) {
    ++hashes;
    std::getline(in, line);
  }
  CHECK(hashes >= 3);
  CHECK(line == "experiment,n,N,trial,metric,value,seed");
  int data_lines = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++data_lines;
  CHECK(data_lines == 3);

  ExperimentConfig bogus = cfg;
  bogus.experiment = "warp-drive";
  CHECK_THROWS_AS(run_experiment(bogus), std::invalid_argument);
}

TEST_CASE("worker pool honours the environment and reports failures") {
  {
    EnvGuard env("3");
    CHECK(worker_count() == 3);
  }
  {
    EnvGuard env("0");
    CHECK_THROWS_AS(worker_count(), std::invalid_argument);
  }
  {
    EnvGuard env("abc");
    CHECK_THROWS_AS(worker_count(), std::invalid_argument);
  }
  {
    EnvGuard env(nullptr);
    CHECK(worker_count() >= 1);
  }

  EnvGuard env("4");
  std::atomic<int> hits{0};
  std::vector<std::atomic<int>> visits(37);
  for (auto& v : visits) v.store(0);
  parallel_jobs(37, [&](int j) {
    visits[std::size_t(j)].fetch_add(1);
    hits.fetch_add(1);
  });
  CHECK(hits.load() == 37);
  for (auto& v : visits) CHECK(v.load() == 1);

  CHECK_NOTHROW(parallel_jobs(0, [&](int) { throw std::runtime_error("never"); }));
  CHECK_THROWS_AS(parallel_jobs(16,
                                [&](int j) {
                                  if (j == 5) throw std::runtime_error("boom");
                                }),
                  std::runtime_error);
}
