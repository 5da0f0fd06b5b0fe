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

#ifndef LOCW1_EXPERIMENTS_HPP
#define LOCW1_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "locw1/bell.hpp"
#include "locw1/operator.hpp"
#include "locw1/rng.hpp"
#include "locw1/w1loc.hpp"

namespace locw1 {

inline constexpr const char* kLocw1Version = "0.1.0";

// Flat key=value experiment description. CLI flags override file values,
// which override the defaults below.
struct ExperimentConfig {
  std::string experiment = "w1loc-eval";  // shadow-converge | bell-converge |
                                          // w1loc-eval | gibbs-check | props
  int n = 4;
  std::string state = "ghz+";
  std::string state2;                     // second state for w1loc-eval ("" = maximally mixed)
  std::string schedule = "geometric";     // geometric | ones
  double c = 4.0;                         // geometric base
  std::vector<double> w;                  // accuracy targets
  std::vector<std::int64_t> n_list;       // explicit shadow counts (slope studies)
  int k_cut = 0;                          // 0 = derive from the target / use n
  double delta = 0.1;
  int trials = 20;
  std::uint64_t seed = 1;
  std::string metric = "exact";           // exact | ub
  std::string out;                        // CSV path, empty = stdout
  double bell_c1 = 8.0;
  double bell_c2 = 8.0;

  static ExperimentConfig from_file(const std::string& path);
  // Throws std::invalid_argument for unknown keys or unparsable values.
  void apply_key(const std::string& key, const std::string& value);
  void validate() const;
};

struct ResultRow {
  std::string experiment;
  int n = 0;
  std::int64_t samples = 0;  // shadow rounds or total copies; 0 when not sampled
  int trial = 0;
  std::string metric;
  double value = 0.0;
  std::uint64_t seed = 0;  // stream seed that produced this row
};

struct ExperimentReport {
  std::vector<std::string> manifest;  // emitted as leading '#' lines
  std::vector<ResultRow> rows;
  bool ok = true;  // all asserted properties held
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_shadow_convergence(const ExperimentConfig& cfg);
ExperimentReport run_bell_convergence(const ExperimentConfig& cfg);
ExperimentReport run_gibbs_check(const ExperimentConfig& cfg);
ExperimentReport run_w1loc_eval(const ExperimentConfig& cfg);
ExperimentReport run_property_suite(const ExperimentConfig& cfg);

// Header `experiment,n,N,trial,metric,value,seed`; doubles use %.17g so a
// (config, seed) pair reproduces the output byte for byte.
void write_csv(std::ostream& out, const ExperimentReport& report);
std::string format_double(double v);

// State grammar: `basis:0110`, `ghz+`, `ghz-`, `haar`, `mixed:SIZE:RANK`,
// `gibbs`, `mm`, factors joined with '*'. Sizes are explicit per factor
// (`ghz+:3`, `haar:2`); a lone factor defaults to `default_n`. `@SEED`
// freezes a random factor; otherwise it draws from `rng`.
DensityMatrix make_state(const std::string& spec, int default_n, Rng& rng);

// Worker pool size: LOCW1_WORKERS if set, else hardware concurrency.
int worker_count();

// Run fn(0..jobs-1) on the pool. Exceptions are collected and the first one
// rethrown after all workers stop.
void parallel_jobs(int jobs, const std::function<void(int)>& fn);

// Smallest k >= 1 with 2 (3/c)^k <= w, capped at n. Requires c > 3.
int shadow_truncation_order(double w, double c, int n);

// ceil(12 ln(2 M / delta) / w^2) with M counting words of weight <= k.
std::int64_t shadow_campaign_rounds(int n, int k, double w, double delta);

// ceil(ln(1/eps) / ln(c/2)) clamped to [1, n]. Requires c > 2.
int bell_truncation_order(double eps, double c, int n);

}  // namespace locw1

#endif
