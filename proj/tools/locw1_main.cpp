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

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "locw1/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "locw1: transport-norm evaluation and measurement-driven state "
      "reconstruction experiments"};
  app.footer(
      "State grammar: basis:0110 | ghz+ | ghz- | haar | mm | mixed:SIZE:RANK | gibbs.\n"
      "Factors combine with '*' (explicit sizes then, e.g. ghz+:2*haar:2); a\n"
      "random factor pins its own stream with @SEED. Results go to --out as CSV\n"
      "with '#' manifest lines; exit status 0 means every in-run check passed.");

  std::string config_path;
  app.add_option("--config", config_path, "key=value file applied before other flags");

  // Each experiment kind doubles as a subcommand; shared flags live on the
  // parent and fall through.
  std::string sub_experiment;
  for (const char* kind : {"shadow-converge", "bell-converge", "w1loc-eval", "gibbs-check",
                           "props"}) {
    CLI::App* sub = app.add_subcommand(kind, "");
    sub->fallthrough();
    sub->parse_complete_callback([&sub_experiment, kind] { sub_experiment = kind; });
  }
  app.require_subcommand(0, 1);

  std::string experiment, state, state2, schedule, metric, out, w_list, n_list;
  long long n = 0, k_cut = 0, trials = 0, seed = 0;
  double c = 0, delta = 0, bell_c1 = 0, bell_c2 = 0;
  app.add_option("--experiment", experiment,
                 "shadow-converge | bell-converge | w1loc-eval | gibbs-check | props");
  app.add_option("--n", n, "number of qubits");
  app.add_option("--state", state, "state spec (see grammar below)");
  app.add_option("--state2", state2, "second state for w1loc-eval (default mm)");
  app.add_option("--schedule", schedule, "penalty schedule: geometric | ones");
  app.add_option("--c", c, "geometric schedule base");
  app.add_option("--w", w_list, "comma list of target accuracies");
  app.add_option("--N", n_list, "comma list of explicit sample counts (shadow-converge)");
  app.add_option("--k-cut", k_cut, "truncation weight override (0 = derive)");
  app.add_option("--delta", delta, "failure probability budget");
  app.add_option("--trials", trials, "independent repetitions per target");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--metric", metric, "error metric: exact | ub");
  app.add_option("--out", out, "output CSV path (default stdout)");
  app.add_option("--bell-c1", bell_c1, "sample-count calibration for magnitude queries");
  app.add_option("--bell-c2", bell_c2, "sample-count calibration for sign queries");

  CLI11_PARSE(app, argc, argv);

  try {
    locw1::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = locw1::ExperimentConfig::from_file(config_path);
    if (!sub_experiment.empty()) cfg.apply_key("experiment", sub_experiment);
    if (app.count("--experiment")) cfg.apply_key("experiment", experiment);
    if (app.count("--n")) cfg.apply_key("n", std::to_string(n));
    if (app.count("--state")) cfg.apply_key("state", state);
    if (app.count("--state2")) cfg.apply_key("state2", state2);
    if (app.count("--schedule")) cfg.apply_key("schedule", schedule);
    if (app.count("--c")) cfg.apply_key("c", locw1::format_double(c));
    if (app.count("--w")) cfg.apply_key("w", w_list);
    if (app.count("--N")) cfg.apply_key("N", n_list);
    if (app.count("--k-cut")) cfg.apply_key("k_cut", std::to_string(k_cut));
    if (app.count("--delta")) cfg.apply_key("delta", locw1::format_double(delta));
    if (app.count("--trials")) cfg.apply_key("trials", std::to_string(trials));
    if (app.count("--seed")) cfg.apply_key("seed", std::to_string(seed));
    if (app.count("--metric")) cfg.apply_key("metric", metric);
    if (app.count("--out")) cfg.apply_key("out", out);
    if (app.count("--bell-c1")) cfg.apply_key("bell_c1", locw1::format_double(bell_c1));
    if (app.count("--bell-c2")) cfg.apply_key("bell_c2", locw1::format_double(bell_c2));
    cfg.validate();

    const locw1::ExperimentReport report = locw1::run_experiment(cfg);
    if (cfg.out.empty()) {
      locw1::write_csv(std::cout, report);
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
      locw1::write_csv(f, report);
    }
    if (!report.ok) {
      std::cerr << "locw1: one or more in-run checks failed (see metric rows)\n";
      return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "locw1: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "locw1: " << e.what() << '\n';
    return 1;
  }
}
