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

#include "locw1/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "locw1/channels.hpp"
#include "locw1/shadows.hpp"
#include "locw1/states.hpp"

namespace locw1 {

namespace {

constexpr double kGibbsIdentityTol = 1e-8;
constexpr double kGibbsHolderTol = 1e-8;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

long long parse_ll(const std::string& v, const std::string& what) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + what + ": '" + v + "'");
  }
  if (used != v.size())
    throw std::invalid_argument("config: bad integer for " + what + ": '" + v + "'");
  return out;
}

double parse_d(const std::string& v, const std::string& what) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + what + ": '" + v + "'");
  }
  if (used != v.size())
    throw std::invalid_argument("config: bad number for " + what + ": '" + v + "'");
  return out;
}

PenaltySchedule make_schedule(const ExperimentConfig& cfg, int n) {
  if (cfg.schedule == "geometric") return PenaltySchedule::geometric(n, cfg.c);
  if (cfg.schedule == "ones") return PenaltySchedule::ones(n);
  throw std::invalid_argument("config: unknown schedule '" + cfg.schedule + "'");
}

// Returns the metric value (already normalized by n) and its label.
double transport_metric(const HermitianOperator& delta_op, const PenaltySchedule& sched,
                        const std::string& mode, std::string& label) {
  const int n = delta_op.num_qubits();
  if (mode == "ub") {
    label = "w1loc_ub";
    return w1loc_upper_bound(delta_op, sched) / n;
  }
  if (mode != "exact") throw std::invalid_argument("config: metric must be 'exact' or 'ub'");
  if (n > kW1MaxLpQubits)
    throw std::domain_error("metric=exact needs n <= " + std::to_string(kW1MaxLpQubits) +
                            "; set metric=ub for larger systems");
  label = "w1loc";
  return w1loc_primal(delta_op, sched).value / n;
}

DensityMatrix state_for_trial(const ExperimentConfig& cfg, const std::string& spec, Rng& rng) {
  DensityMatrix rho = make_state(spec, cfg.n, rng);
  if (rho.num_qubits() != cfg.n)
    throw std::invalid_argument("state spec '" + spec + "' builds " +
                                std::to_string(rho.num_qubits()) + " qubits but n=" +
                                std::to_string(cfg.n));
  return rho;
}

std::string base_manifest(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "experiment=" << cfg.experiment << " n=" << cfg.n << " state=" << cfg.state;
  if (!cfg.state2.empty()) os << " state2=" << cfg.state2;
  os << " schedule=" << cfg.schedule;
  if (cfg.schedule == "geometric") os << " c=" << format_double(cfg.c);
  os << " delta=" << format_double(cfg.delta) << " trials=" << cfg.trials
     << " seed=" << cfg.seed << " metric=" << cfg.metric;
  if (cfg.k_cut > 0) os << " k_cut=" << cfg.k_cut;
  return os.str();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value: '" + t + "'");
    cfg.apply_key(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

void ExperimentConfig::apply_key(const std::string& key, const std::string& value) {
  if (key == "experiment") {
    experiment = value;
  } else if (key == "n") {
    n = static_cast<int>(parse_ll(value, key));
  } else if (key == "state") {
    state = value;
  } else if (key == "state2") {
    state2 = value;
  } else if (key == "schedule") {
    schedule = value;
  } else if (key == "c") {
    c = parse_d(value, key);
  } else if (key == "w") {
    w.clear();
    for (const std::string& part : split(value, ','))
      if (!trim(part).empty()) w.push_back(parse_d(trim(part), key));
  } else if (key == "N") {
    n_list.clear();
    for (const std::string& part : split(value, ','))
      if (!trim(part).empty()) n_list.push_back(parse_ll(trim(part), key));
  } else if (key == "k_cut") {
    k_cut = static_cast<int>(parse_ll(value, key));
  } else if (key == "delta") {
    delta = parse_d(value, key);
  } else if (key == "trials") {
    trials = static_cast<int>(parse_ll(value, key));
  } else if (key == "seed") {
    seed = static_cast<std::uint64_t>(parse_ll(value, key));
  } else if (key == "metric") {
    metric = value;
  } else if (key == "out") {
    out = value;
  } else if (key == "bell_c1") {
    bell_c1 = parse_d(value, key);
  } else if (key == "bell_c2") {
    bell_c2 = parse_d(value, key);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

void ExperimentConfig::validate() const {
  static const char* kinds[] = {"shadow-converge", "bell-converge", "w1loc-eval",
                                "gibbs-check", "props"};
  bool known = false;
  for (const char* k : kinds) known = known || experiment == k;
  if (!known) throw std::invalid_argument("config: unknown experiment '" + experiment + "'");
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("config: delta must lie in (0,1)");
  if (schedule != "geometric" && schedule != "ones")
    throw std::invalid_argument("config: unknown schedule '" + schedule + "'");
  if (metric != "exact" && metric != "ub")
    throw std::invalid_argument("config: metric must be 'exact' or 'ub'");
  if (k_cut < 0 || k_cut > n) throw std::invalid_argument("config: k_cut out of range");
}

int worker_count() {
  if (const char* env = std::getenv("LOCW1_WORKERS")) {
    const long long v = parse_ll(env, "LOCW1_WORKERS");
    if (v < 1) throw std::invalid_argument("LOCW1_WORKERS must be >= 1");
    return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_jobs(int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) return;
  const int workers = std::min(worker_count(), jobs);
  if (workers <= 1) {
    for (int j = 0; j < jobs; ++j) fn(j);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> bail{false};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto body = [&] {
    for (;;) {
      if (bail.load(std::memory_order_relaxed)) return;
      const int j = next.fetch_add(1);
      if (j >= jobs) return;
      try {
        fn(j);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        bail.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

DensityMatrix make_factor(const std::string& raw, int default_n, bool allow_default, Rng& rng) {
  std::string body = raw;
  bool has_seed = false;
  std::uint64_t fixed_seed = 0;
  const std::size_t at = raw.find('@');
  if (at != std::string::npos) {
    body = raw.substr(0, at);
    has_seed = true;
    fixed_seed = static_cast<std::uint64_t>(parse_ll(raw.substr(at + 1), "state seed"));
  }
  std::vector<std::string> parts = split(body, ':');
  const std::string name = parts[0];
  auto size_arg = [&](std::size_t idx) -> int {
    if (parts.size() > idx && !parts[idx].empty())
      return static_cast<int>(parse_ll(parts[idx], "state size"));
    if (allow_default) return default_n;
    throw std::invalid_argument("state factor '" + raw + "' needs an explicit size");
  };
  Rng local(fixed_seed);
  Rng& r = has_seed ? local : rng;

  if (name == "basis") {
    if (parts.size() != 2 || parts[1].empty())
      throw std::invalid_argument("state: basis needs a bit string, e.g. basis:0110");
    return basis_state(parts[1]);
  }
  if (name == "ghz+" || name == "ghz-") {
    return ghz(size_arg(1), name == "ghz+" ? +1 : -1);
  }
  if (name == "haar") {
    return haar_random_pure(size_arg(1), r);
  }
  if (name == "mm") {
    return maximally_mixed(size_arg(1));
  }
  if (name == "mixed") {
    if (parts.size() != 3)
      throw std::invalid_argument("state: mixed needs mixed:SIZE:RANK");
    const int size = static_cast<int>(parse_ll(parts[1], "state size"));
    const int rank = static_cast<int>(parse_ll(parts[2], "state rank"));
    return random_mixed(size, rank, r);
  }
  if (name == "gibbs") {
    const int size = size_arg(1);
    return gibbs(random_chain_hamiltonian(size, r).total);
  }
  throw std::invalid_argument("state: unknown factor '" + name + "'");
}

}  // namespace

DensityMatrix make_state(const std::string& spec, int default_n, Rng& rng) {
  if (trim(spec).empty()) throw std::invalid_argument("state: empty spec");
  const std::vector<std::string> factor_specs = split(spec, '*');
  if (factor_specs.size() == 1) return make_factor(trim(factor_specs[0]), default_n, true, rng);
  std::vector<DensityMatrix> factors;
  factors.reserve(factor_specs.size());
  for (const std::string& f : factor_specs)
    factors.push_back(make_factor(trim(f), default_n, false, rng));
  return product_state(factors);
}

int shadow_truncation_order(double w, double c, int n) {
  if (!(w > 0.0)) throw std::invalid_argument("shadow_truncation_order: w must be > 0");
  if (!(c > 3.0))
    throw std::invalid_argument("shadow_truncation_order: needs schedule base c > 3, got " +
                                format_double(c));
  int k = 1;
  while (2.0 * std::pow(3.0 / c, k) > w && k < n) ++k;
  return k;
}

std::int64_t shadow_campaign_rounds(int n, int k, double w, double delta) {
  const std::int64_t m_targets = pauli_count_up_to_weight(n, k);
  if (!(w > 0.0)) throw std::invalid_argument("shadow_campaign_rounds: w must be > 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("shadow_campaign_rounds: delta must lie in (0,1)");
  const double raw =
      12.0 * std::log(2.0 * static_cast<double>(m_targets) / delta) / (w * w);
  if (raw > 9.0e18) throw std::overflow_error("shadow_campaign_rounds: overflow");
  return static_cast<std::int64_t>(std::ceil(raw));
}

int bell_truncation_order(double eps, double c, int n) {
  if (!(eps > 0.0)) throw std::invalid_argument("bell_truncation_order: eps must be > 0");
  if (!(c > 2.0))
    throw std::invalid_argument("bell_truncation_order: needs schedule base c > 2, got " +
                                format_double(c));
  const double raw = std::ceil(std::log(1.0 / eps) / std::log(c / 2.0));
  int k = raw < 1.0 ? 1 : static_cast<int>(raw);
  return std::min(std::max(k, 1), n);
}

ExperimentReport run_shadow_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  const int n = cfg.n;
  const PenaltySchedule sched = make_schedule(cfg, n);

  struct Target {
    double w = 0.0;  // 0 when driven by an explicit count
    int k = 0;
    std::int64_t rounds = 0;
  };
  std::vector<Target> targets;
  if (!cfg.n_list.empty() && !cfg.w.empty())
    throw std::invalid_argument("shadow-converge: give either w or N, not both");
  if (cfg.n_list.empty() && cfg.w.empty())
    throw std::invalid_argument("shadow-converge: need a w list or an N list");
  if (!cfg.n_list.empty()) {
    const int k = cfg.k_cut > 0 ? cfg.k_cut : n;
    for (std::int64_t rounds : cfg.n_list) {
      if (rounds < 1) throw std::invalid_argument("shadow-converge: N entries must be >= 1");
      targets.push_back({0.0, k, rounds});
    }
  } else {
    // Accuracy targets carry a guarantee that only holds for geometric
    // schedules with base above sqrt(10).
    if (cfg.schedule != "geometric" || !(cfg.c > std::sqrt(10.0)))
      throw std::invalid_argument(
          "shadow-converge: w targets need a geometric schedule with c > sqrt(10)");
    for (double w : cfg.w) {
      const int k = cfg.k_cut > 0 ? cfg.k_cut : shadow_truncation_order(w, cfg.c, n);
      targets.push_back({w, k, shadow_campaign_rounds(n, k, w, cfg.delta)});
    }
  }

  ExperimentReport report;
  report.manifest.push_back(std::string("locw1 ") + kLocw1Version);
  report.manifest.push_back(base_manifest(cfg));
  for (const Target& t : targets) {
    std::ostringstream os;
    os << "derived:";
    if (t.w > 0.0) os << " w=" << format_double(t.w);
    os << " k=" << t.k << " M=" << pauli_count_up_to_weight(n, t.k) << " N=" << t.rounds;
    report.manifest.push_back(os.str());
  }

  const int jobs = static_cast<int>(targets.size()) * cfg.trials;
  report.rows.resize(std::size_t(jobs));
  parallel_jobs(jobs, [&](int j) {
    const std::size_t ti = std::size_t(j) / std::size_t(cfg.trials);
    const int trial = j % cfg.trials;
    const Target& target = targets[ti];
    const std::uint64_t job_seed = Rng::derive_stream(cfg.seed, std::uint64_t(j));
    Rng rng(job_seed);
    const DensityMatrix rho = state_for_trial(cfg, cfg.state, rng);
    const auto shadows = sample_shadows(rho, target.rounds, rng);
    const HermitianOperator est = shadow_state_estimate(shadows, n, target.k);
    const HermitianOperator delta_op = est - rho.op();
    std::string label;
    const double value = transport_metric(delta_op, sched, cfg.metric, label);
    report.rows[std::size_t(j)] =
        {cfg.experiment, n, target.rounds, trial, label, value, job_seed};
  });
  return report;
}

ExperimentReport run_bell_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.n_list.empty())
    throw std::invalid_argument("bell-converge: explicit N lists are not supported; use w");
  if (cfg.w.empty()) throw std::invalid_argument("bell-converge: need a w list");
  if (cfg.schedule != "geometric")
    throw std::invalid_argument("bell-converge: needs a geometric schedule (base > 2)");
  const int n = cfg.n;
  const PenaltySchedule sched = make_schedule(cfg, n);
  const BellCalibration calib{cfg.bell_c1, cfg.bell_c2};

  struct Target {
    double eps = 0.0;
    int k = 0;
    BellBudget budget;
  };
  std::vector<Target> targets;
  for (double w : cfg.w) {
    Target t;
    t.eps = w;
    t.k = cfg.k_cut > 0 ? cfg.k_cut : bell_truncation_order(w, cfg.c, n);
    t.budget =
        required_copies_bell(pauli_count_up_to_weight(n, t.k), cfg.delta, t.eps, calib);
    targets.push_back(t);
  }

  ExperimentReport report;
  report.manifest.push_back(std::string("locw1 ") + kLocw1Version);
  report.manifest.push_back(base_manifest(cfg) + " bell_c1=" + format_double(cfg.bell_c1) +
                            " bell_c2=" + format_double(cfg.bell_c2));
  for (const Target& t : targets) {
    std::ostringstream os;
    os << "derived: w=" << format_double(t.eps) << " k=" << t.k
       << " M=" << pauli_count_up_to_weight(n, t.k) << " N1=" << t.budget.n1
       << " N2=" << t.budget.n2 << " copies=" << t.budget.total_copies;
    report.manifest.push_back(os.str());
  }

  const int jobs = static_cast<int>(targets.size()) * cfg.trials;
  report.rows.resize(std::size_t(jobs));
  parallel_jobs(jobs, [&](int j) {
    const std::size_t ti = std::size_t(j) / std::size_t(cfg.trials);
    const int trial = j % cfg.trials;
    const Target& target = targets[ti];
    const std::uint64_t job_seed = Rng::derive_stream(cfg.seed, std::uint64_t(j));
    Rng rng(job_seed);
    const DensityMatrix rho = state_for_trial(cfg, cfg.state, rng);
    BellBudget budget;
    const HermitianOperator est =
        bell_state_estimate(rho, target.k, target.eps, cfg.delta, rng, calib, &budget);
    const HermitianOperator delta_op = est - rho.op();
    std::string label;
    const double value = transport_metric(delta_op, sched, cfg.metric, label);
    report.rows[std::size_t(j)] =
        {cfg.experiment, n, budget.total_copies, trial, label, value, job_seed};
  });
  return report;
}

ExperimentReport run_gibbs_check(const ExperimentConfig& cfg) {
  cfg.validate();
  const int n = cfg.n;
  if (n < 2) throw std::invalid_argument("gibbs-check: need n >= 2");
  if (n > kW1MaxLpQubits)
    throw std::invalid_argument("gibbs-check: needs the exact metric, n <= " +
                                std::to_string(kW1MaxLpQubits));
  const PenaltySchedule sched = make_schedule(cfg, n);

  ExperimentReport report;
  report.manifest.push_back(std::string("locw1 ") + kLocw1Version);
  report.manifest.push_back(base_manifest(cfg));
  report.rows.resize(std::size_t(cfg.trials) * 2);
  std::atomic<bool> all_ok{true};

  parallel_jobs(cfg.trials, [&](int trial) {
    const std::uint64_t job_seed = Rng::derive_stream(cfg.seed, std::uint64_t(trial));
    Rng rng(job_seed);
    const ChainHamiltonian ham_h = random_chain_hamiltonian(n, rng);
    const ChainHamiltonian ham_k = random_chain_hamiltonian(n, rng);
    const DensityMatrix omega_h = gibbs(ham_h.total);
    const DensityMatrix omega_k = gibbs(ham_k.total);

    const double s_hk = relative_entropy(omega_h, omega_k);
    const double s_kh = relative_entropy(omega_k, omega_h);
    const HermitianOperator diff = omega_h.op() - omega_k.op();
    const HermitianOperator target = ham_k.total - ham_h.total;
    const double rhs = pairing(diff, target);
    const double residual = std::abs(s_hk + s_kh - rhs);

    std::vector<HermitianOperator> terms;
    for (std::size_t e = 0; e < ham_h.terms.size(); ++e)
      terms.push_back(ham_k.terms[e] - ham_h.terms[e]);
    const LocalDecomposition decomp(QubitSet::range(n), std::move(terms));
    const double transport = w1loc_primal(diff, sched).value;
    const double local_norm = local_norm_of_decomposition(decomp, sched);
    const double slack = rhs - transport * local_norm;

    if (residual > kGibbsIdentityTol || slack > kGibbsHolderTol) all_ok.store(false);
    report.rows[std::size_t(trial) * 2] =
        {cfg.experiment, n, 0, trial, "gibbs_identity_residual", residual, job_seed};
    report.rows[std::size_t(trial) * 2 + 1] =
        {cfg.experiment, n, 0, trial, "holder_slack", slack, job_seed};
  });
  report.ok = all_ok.load();
  return report;
}

ExperimentReport run_w1loc_eval(const ExperimentConfig& cfg) {
  cfg.validate();
  const int n = cfg.n;
  const PenaltySchedule sched = make_schedule(cfg, n);

  ExperimentReport report;
  report.manifest.push_back(std::string("locw1 ") + kLocw1Version);
  report.manifest.push_back(base_manifest(cfg));

  const bool exact = cfg.metric == "exact";
  const int rows_per_trial = exact ? 5 : 2;
  report.rows.resize(std::size_t(cfg.trials) * std::size_t(rows_per_trial));
  std::atomic<bool> all_ok{true};

  parallel_jobs(cfg.trials, [&](int trial) {
    const std::uint64_t job_seed = Rng::derive_stream(cfg.seed, std::uint64_t(trial));
    Rng rng(job_seed);
    const DensityMatrix rho = state_for_trial(cfg, cfg.state, rng);
    const DensityMatrix sigma = cfg.state2.empty() ? maximally_mixed(n)
                                                   : state_for_trial(cfg, cfg.state2, rng);
    const HermitianOperator delta_op = rho.op() - sigma.op();
    const double lower = w1loc_trace_lower_bound(delta_op, sched);
    const double upper = w1loc_upper_bound(delta_op, sched);
    auto* slot = &report.rows[std::size_t(trial) * std::size_t(rows_per_trial)];
    if (exact) {
      if (n > kW1MaxLpQubits)
        throw std::domain_error("w1loc-eval: metric=exact needs n <= " +
                                std::to_string(kW1MaxLpQubits) + "; set metric=ub");
      const W1Primal primal = w1loc_primal(delta_op, sched);
      const W1Dual dual = w1loc_dual(delta_op, sched);
      const double gap = std::abs(primal.value - dual.value);
      slot[0] = {cfg.experiment, n, 0, trial, "w1loc", primal.value, job_seed};
      slot[1] = {cfg.experiment, n, 0, trial, "w1loc_dual", dual.value, job_seed};
      slot[2] = {cfg.experiment, n, 0, trial, "duality_gap", gap, job_seed};
      slot[3] = {cfg.experiment, n, 0, trial, "trace_lower", lower, job_seed};
      slot[4] = {cfg.experiment, n, 0, trial, "w1loc_ub", upper, job_seed};
      const bool ok = gap <= 1e-7 * std::max(1.0, std::abs(primal.value)) &&
                      primal.value >= lower - 1e-9 && primal.value <= upper + 1e-9;
      if (!ok) all_ok.store(false);
    } else {
      slot[0] = {cfg.experiment, n, 0, trial, "trace_lower", lower, job_seed};
      slot[1] = {cfg.experiment, n, 0, trial, "w1loc_ub", upper, job_seed};
      if (upper < lower - 1e-9) all_ok.store(false);
    }
  });
  report.ok = all_ok.load();
  return report;
}

ExperimentReport run_property_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  const int n = cfg.n;
  if (n < 2) throw std::invalid_argument("props: need n >= 2");
  if (n > kW1MaxLpQubits)
    throw std::invalid_argument("props: needs the exact metric, n <= " +
                                std::to_string(kW1MaxLpQubits));
  const PenaltySchedule sched = make_schedule(cfg, n);
  const int instances = cfg.trials;

  ExperimentReport report;
  report.manifest.push_back(std::string("locw1 ") + kLocw1Version);
  report.manifest.push_back(base_manifest(cfg));
  bool ok = true;

  auto push = [&](int trial, const std::string& metric, double value, std::uint64_t seed,
                  bool good) {
    report.rows.push_back({cfg.experiment, n, 0, trial, metric, value, seed});
    ok = ok && good;
  };
  auto stream = [&](int prop, int inst) {
    return Rng::derive_stream(cfg.seed, std::uint64_t(prop) * 100000 + std::uint64_t(inst));
  };

  const Eigen::Index dim = Eigen::Index(1) << n;

  // Duality gap and the two-sided bounds on random state differences.
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t s = stream(1, i);
    Rng rng(s);
    const DensityMatrix rho = random_mixed(n, int(dim), rng);
    const DensityMatrix sigma = random_mixed(n, int(dim), rng);
    const HermitianOperator delta_op = rho.op() - sigma.op();
    const auto norms = marginal_trace_norms(delta_op);
    const W1Primal primal = w1loc_primal_from_norms(norms, n, sched);
    const W1Dual dual = w1loc_dual_from_norms(norms, n, sched);
    const double gap = std::abs(primal.value - dual.value);
    push(i, "duality_gap", gap, s, gap <= 1e-7 * std::max(1.0, std::abs(primal.value)));
    const double lower = w1loc_trace_lower_bound(delta_op, sched);
    const double upper = w1loc_upper_bound(delta_op, sched);
    push(i, "sandwich_lower_slack", primal.value - lower, s, primal.value - lower >= -1e-9);
    push(i, "sandwich_upper_slack", upper - primal.value, s, upper - primal.value >= -1e-9);
  }

  // Basis state differences recover the Hamming distance.
  {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;
    if (n <= 4) {
      for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b)
          if (a != b) pairs.emplace_back(a, b);
    } else {
      Rng rng(Rng::derive_stream(cfg.seed, 200000));
      for (int i = 0; i < 256; ++i) {
        const auto a = Eigen::Index(rng.uniform_int(std::uint64_t(dim)));
        auto b = a;
        while (b == a) b = Eigen::Index(rng.uniform_int(std::uint64_t(dim)));
        pairs.emplace_back(a, b);
      }
    }
    int trial = 0;
    for (const auto& [a, b] : pairs) {
      std::vector<int> bits_a(static_cast<std::size_t>(n)),
          bits_b(static_cast<std::size_t>(n));
      int hamming = 0;
      for (int q = 0; q < n; ++q) {
        bits_a[std::size_t(q)] = int((a >> (n - 1 - q)) & 1);
        bits_b[std::size_t(q)] = int((b >> (n - 1 - q)) & 1);
        hamming += bits_a[std::size_t(q)] != bits_b[std::size_t(q)];
      }
      const HermitianOperator delta_op =
          basis_state(bits_a).op() - basis_state(bits_b).op();
      const double value = w1loc_primal(delta_op, sched).value;
      const double err = std::abs(value - hamming);
      push(trial++, "hamming_error", err, cfg.seed, err <= 1e-9);
    }
  }

  // Additivity on product differences and superadditivity across a cut.
  {
    const int m1 = (n + 1) / 2, m2 = n - m1;
    for (int i = 0; i < instances; ++i) {
      const std::uint64_t s = stream(3, i);
      Rng rng(s);
      const DensityMatrix r1 = random_mixed(m1, 1 << m1, rng);
      const DensityMatrix s1 = random_mixed(m1, 1 << m1, rng);
      const DensityMatrix r2 = random_mixed(m2, 1 << m2, rng);
      const DensityMatrix s2 = random_mixed(m2, 1 << m2, rng);
      const DensityMatrix joint_r = product_state({r1, r2});
      const DensityMatrix joint_s = product_state({s1, s2});
      const double w_joint =
          w1loc_primal(joint_r.op() - joint_s.op(), sched).value;
      const double w_1 = w1loc_primal(r1.op() - s1.op(), sched).value;
      const double w_2 = w1loc_primal(r2.op() - s2.op(), sched).value;
      push(i, "additivity_error", std::abs(w_joint - w_1 - w_2), s,
           std::abs(w_joint - w_1 - w_2) <= 1e-7);

      const HermitianOperator delta_op = random_traceless(n, rng).scaled(0.25);
      const QubitSet front = QubitSet::range(m1);
      const QubitSet back = QubitSet::range(n).minus(front);
      const double whole = w1loc_primal(delta_op, sched).value;
      const double part_a = w1loc_primal(partial_trace(delta_op, front), sched).value;
      const double part_b = w1loc_primal(partial_trace(delta_op, back), sched).value;
      push(i, "superadditivity_slack", whole - part_a - part_b, s,
           whole - part_a - part_b >= -1e-8);
    }
  }

  // Contraction under a single-qubit channel.
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t s = stream(4, i);
    Rng rng(s);
    const DensityMatrix rho = random_mixed(n, int(dim), rng);
    const DensityMatrix sigma = random_mixed(n, int(dim), rng);
    const HermitianOperator delta_op = rho.op() - sigma.op();
    const int qubit = 1 + int(rng.uniform_int(std::uint64_t(n)));
    SingleQubitChannel ch = [&]() -> SingleQubitChannel {
      switch (i % 3) {
        case 0: return depolarizing_channel(rng.uniform());
        case 1: return amplitude_damping_channel(rng.uniform());
        default: return random_mixed_unitary_channel(rng);
      }
    }();
    const double before = w1loc_primal(delta_op, sched).value;
    const double after = w1loc_primal(apply_channel(delta_op, qubit, ch), sched).value;
    push(i, "contraction_slack", before - after, s, before - after >= -1e-9);
  }

  // Tensoring with an arbitrary Hermitian factor is bounded by its trace
  // norm.
  {
    const int m1 = (n + 1) / 2, m2 = n - m1;
    for (int i = 0; i < instances; ++i) {
      const std::uint64_t s = stream(5, i);
      Rng rng(s);
      const DensityMatrix r1 = random_mixed(m1, 1 << m1, rng);
      const DensityMatrix s1 = random_mixed(m1, 1 << m1, rng);
      const HermitianOperator d1 = r1.op() - s1.op();
      HermitianOperator a2 = random_traceless(m2, rng);
      // Shift so the second factor is generically not traceless.
      a2 = a2 + HermitianOperator::identity(a2.support()).scaled(rng.uniform(-0.5, 0.5));
      const HermitianOperator joint =
          tensor(d1, relabeled(a2, QubitSet::range(n).minus(QubitSet::range(m1))));
      const double lhs = w1loc_primal(joint, sched).value;
      const double rhs = w1loc_primal(d1, sched).value * trace_norm(a2);
      push(i, "tensor_bound_slack", rhs - lhs, s, rhs - lhs >= -1e-8);
    }
  }

  // Norm axioms: absolute homogeneity and the triangle inequality.
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t s = stream(6, i);
    Rng rng(s);
    const HermitianOperator d1 = random_traceless(n, rng).scaled(0.25);
    const HermitianOperator d2 = random_traceless(n, rng).scaled(0.25);
    const double lam = rng.uniform(-3.0, 3.0);
    const double w_1 = w1loc_primal(d1, sched).value;
    const double w_lam = w1loc_primal(d1.scaled(lam), sched).value;
    const double hom_err = std::abs(w_lam - std::abs(lam) * w_1);
    push(i, "homogeneity_error", hom_err, s, hom_err <= 1e-8 * std::max(1.0, w_lam));
    const double w_2 = w1loc_primal(d2, sched).value;
    const double w_12 = w1loc_primal(d1 + d2, sched).value;
    push(i, "triangle_slack", w_1 + w_2 - w_12, s, w_1 + w_2 - w_12 >= -1e-9);
  }

  // The two GHZ states agree on every proper marginal, so only the global
  // constraint binds and the value is exactly 1/c_n.
  {
    const HermitianOperator delta_op = ghz(n, +1).op() - ghz(n, -1).op();
    const double value = w1loc_primal(delta_op, sched).value;
    const double expected = 1.0 / sched.at(n);
    const double err = std::abs(value - expected);
    push(0, "ghz_value_error", err, cfg.seed, err <= 1e-9);
  }

  report.ok = ok;
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.experiment == "shadow-converge") return run_shadow_convergence(cfg);
  if (cfg.experiment == "bell-converge") return run_bell_convergence(cfg);
  if (cfg.experiment == "gibbs-check") return run_gibbs_check(cfg);
  if (cfg.experiment == "props") return run_property_suite(cfg);
  return run_w1loc_eval(cfg);
}

void write_csv(std::ostream& out, const ExperimentReport& report) {
  for (const std::string& line : report.manifest) out << "# " << line << '\n';
  out << "experiment,n,N,trial,metric,value,seed\n";
  for (const ResultRow& r : report.rows)
    out << r.experiment << ',' << r.n << ',' << r.samples << ',' << r.trial << ',' << r.metric
        << ',' << format_double(r.value) << ',' << r.seed << '\n';
}

}  // namespace locw1
