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

#include "locw1/w1loc.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace locw1 {

namespace {

constexpr double kTracelessTol = 1e-10;

double trace_norm_raw(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  es.compute(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("marginal eigendecomposition did not converge");
  return es.eigenvalues().cwiseAbs().sum();
}

void require_traceless(const HermitianOperator& delta, const char* who) {
  if (std::abs(delta.trace()) > kTracelessTol)
    throw std::invalid_argument(std::string(who) + ": operator trace is " +
                                std::to_string(delta.trace()) + ", expected 0");
}

void require_schedule_covers(const PenaltySchedule& s, int m, const char* who) {
  if (s.max_size() < m)
    throw std::invalid_argument(std::string(who) + ": schedule covers sizes up to " +
                                std::to_string(s.max_size()) + ", need " + std::to_string(m));
}

void require_solved(const LpSolution& sol, const char* who) {
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error(std::string(who) + ": LP solve failed (" +
                             lp_status_name(sol.status) + ", gap " + std::to_string(sol.gap) +
                             ")");
}

std::vector<std::uint32_t> retained_masks(const std::vector<double>& norms, int m) {
  std::vector<std::uint32_t> masks;
  const std::uint32_t full = (m >= 32) ? 0xffffffffu : ((std::uint32_t(1) << m) - 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    if (norms[mask] > kW1PruneTolerance) masks.push_back(mask);
  return masks;
}

}  // namespace

PenaltySchedule::PenaltySchedule(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("PenaltySchedule: empty");
  if (std::abs(weights_[0] - 1.0) > 1e-12)
    throw std::invalid_argument("PenaltySchedule: c_1 must be 1");
  for (std::size_t l = 1; l < weights_.size(); ++l)
    if (weights_[l] < weights_[l - 1] - 1e-12)
      throw std::invalid_argument("PenaltySchedule: weights must be nondecreasing (c_" +
                                  std::to_string(l + 1) + " < c_" + std::to_string(l) + ")");
}

PenaltySchedule PenaltySchedule::ones(int n) {
  if (n < 1) throw std::invalid_argument("PenaltySchedule::ones: n must be positive");
  return PenaltySchedule(std::vector<double>(std::size_t(n), 1.0));
}

PenaltySchedule PenaltySchedule::geometric(int n, double base) {
  if (n < 1) throw std::invalid_argument("PenaltySchedule::geometric: n must be positive");
  if (base < 2.0)
    throw std::invalid_argument("PenaltySchedule::geometric: base must be >= 2, got " +
                                std::to_string(base));
  std::vector<double> w(static_cast<std::size_t>(n));
  double pow = 1.0;
  for (int l = 1; l <= n; ++l) {
    w[std::size_t(l - 1)] = pow / l;
    pow *= base;
  }
  return PenaltySchedule(std::move(w));
}

double PenaltySchedule::at(int l) const {
  if (l < 1 || l > max_size())
    throw std::out_of_range("PenaltySchedule::at: size " + std::to_string(l) + " out of range");
  return weights_[std::size_t(l - 1)];
}

std::vector<double> marginal_trace_norms(const HermitianOperator& delta) {
  require_traceless(delta, "marginal_trace_norms");
  const int m = delta.num_qubits();
  if (m < 1) throw std::invalid_argument("marginal_trace_norms: empty support");
  if (m > 16) throw std::invalid_argument("marginal_trace_norms: more than 16 qubits");
  const std::uint32_t full = (std::uint32_t(1) << m) - 1;

  std::vector<std::vector<std::uint32_t>> by_level(std::size_t(m + 1));
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    by_level[std::size_t(std::popcount(mask))].push_back(mask);

  std::vector<double> norms(std::size_t(full) + 1, 0.0);
  norms[full] = trace_norm_raw(delta.matrix());

  // Walk levels downward; each marginal is one partial trace away from a
  // parent on the level above. Only two levels of matrices are alive at a
  // time.
  std::vector<Eigen::MatrixXcd> upper(std::size_t(full) + 1);
  upper[full] = delta.matrix();
  for (int level = m - 1; level >= 1; --level) {
    std::vector<Eigen::MatrixXcd> cur(std::size_t(full) + 1);
    for (std::uint32_t mask : by_level[std::size_t(level)]) {
      const int q = std::countr_one(mask);  // lowest position missing from mask
      const std::uint32_t parent = mask | (std::uint32_t(1) << q);
      // Position q's index from the matrix MSB is its rank among the
      // parent's ascending positions.
      const int rank = std::popcount(parent & ((std::uint32_t(1) << q) - 1));
      cur[mask] = detail::trace_out_bit(upper[parent], level + 1, rank);
      norms[mask] = trace_norm_raw(cur[mask]);
    }
    upper = std::move(cur);
  }
  return norms;
}

W1Primal w1loc_primal_from_norms(const std::vector<double>& norms, int m,
                                 const PenaltySchedule& schedule) {
  if (m < 1 || norms.size() != (std::size_t(1) << m))
    throw std::invalid_argument("w1loc_primal_from_norms: bad norm table");
  if (m > kW1MaxLpQubits)
    throw std::domain_error("w1loc_primal_from_norms: " + std::to_string(m) +
                            " qubits exceeds the LP limit of " +
                            std::to_string(kW1MaxLpQubits) + "; use w1loc_upper_bound");
  require_schedule_covers(schedule, m, "w1loc_primal_from_norms");

  const auto masks = retained_masks(norms, m);
  W1Primal out;
  out.site_assignment.assign(std::size_t(m), 0.0);
  if (masks.empty()) return out;

  LinearProgram lp;
  lp.g = Eigen::MatrixXd::Zero(Eigen::Index(masks.size()), m);
  lp.h = Eigen::VectorXd::Zero(Eigen::Index(masks.size()));
  lp.c = Eigen::VectorXd::Ones(m);
  for (std::size_t r = 0; r < masks.size(); ++r) {
    const std::uint32_t mask = masks[r];
    for (int x = 0; x < m; ++x)
      if (mask & (std::uint32_t(1) << x)) lp.g(Eigen::Index(r), x) = 1.0;
    lp.h(Eigen::Index(r)) = norms[mask] / (2.0 * schedule.at(std::popcount(mask)));
  }
  const LpSolution sol = lp_solve(lp);
  require_solved(sol, "w1loc_primal");
  out.value = sol.value;
  for (int x = 0; x < m; ++x) out.site_assignment[std::size_t(x)] = sol.x(x);
  return out;
}

W1Primal w1loc_primal(const HermitianOperator& delta, const PenaltySchedule& schedule) {
  const int m = delta.num_qubits();
  if (m > kW1MaxLpQubits)
    throw std::domain_error("w1loc_primal: " + std::to_string(m) +
                            " qubits exceeds the LP limit of " +
                            std::to_string(kW1MaxLpQubits) + "; use w1loc_upper_bound");
  return w1loc_primal_from_norms(marginal_trace_norms(delta), m, schedule);
}

W1Dual w1loc_dual_from_norms(const std::vector<double>& norms, int m,
                             const PenaltySchedule& schedule) {
  if (m < 1 || norms.size() != (std::size_t(1) << m))
    throw std::invalid_argument("w1loc_dual_from_norms: bad norm table");
  if (m > kW1MaxLpQubits)
    throw std::domain_error("w1loc_dual_from_norms: " + std::to_string(m) +
                            " qubits exceeds the LP limit of " +
                            std::to_string(kW1MaxLpQubits) + "; use w1loc_upper_bound");
  require_schedule_covers(schedule, m, "w1loc_dual_from_norms");

  const auto masks = retained_masks(norms, m);
  W1Dual out;
  if (masks.empty()) return out;

  // Canonical min form of: max sum norms t, 2 sum_{L owning x} c_|L| t <= 1.
  LinearProgram lp;
  lp.g = Eigen::MatrixXd::Zero(m, Eigen::Index(masks.size()));
  lp.h = Eigen::VectorXd::Constant(m, -1.0);
  lp.c = Eigen::VectorXd::Zero(Eigen::Index(masks.size()));
  for (std::size_t v = 0; v < masks.size(); ++v) {
    const std::uint32_t mask = masks[v];
    const double penalty = 2.0 * schedule.at(std::popcount(mask));
    for (int x = 0; x < m; ++x)
      if (mask & (std::uint32_t(1) << x)) lp.g(x, Eigen::Index(v)) = -penalty;
    lp.c(Eigen::Index(v)) = -norms[mask];
  }
  const LpSolution sol = lp_solve(lp);
  require_solved(sol, "w1loc_dual");
  out.value = -sol.value;
  out.weights.reserve(masks.size());
  for (std::size_t v = 0; v < masks.size(); ++v)
    out.weights.emplace_back(masks[v], sol.x(Eigen::Index(v)));
  return out;
}

W1Dual w1loc_dual(const HermitianOperator& delta, const PenaltySchedule& schedule) {
  const int m = delta.num_qubits();
  if (m > kW1MaxLpQubits)
    throw std::domain_error("w1loc_dual: " + std::to_string(m) +
                            " qubits exceeds the LP limit of " +
                            std::to_string(kW1MaxLpQubits) + "; use w1loc_upper_bound");
  return w1loc_dual_from_norms(marginal_trace_norms(delta), m, schedule);
}

double w1loc_upper_bound(const HermitianOperator& delta, const PenaltySchedule& schedule) {
  require_traceless(delta, "w1loc_upper_bound");
  const int m = delta.num_qubits();
  require_schedule_covers(schedule, m, "w1loc_upper_bound");

  // Any marginal trace norm is bounded by sqrt(dim) * Frobenius norm of the
  // full operator (marginals only shrink the trace norm), which caps what an
  // uncomputed level could still contribute to a site maximum.
  const double global_cap =
      std::sqrt(static_cast<double>(delta.dim())) * delta.matrix().norm();

  std::vector<double> best(std::size_t(m), 0.0);
  for (int level = 1; level <= m; ++level) {
    const double denom = 2.0 * level * schedule.at(level);
    double floor_best = best[0];
    for (double b : best) floor_best = std::min(floor_best, b);
    if (level > 1 && global_cap / denom <= floor_best) break;

    // Enumerate masks of this popcount.
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << m); ++mask) {
      if (std::popcount(mask) != level) continue;
      std::vector<int> keep;
      for (int x = 0; x < m; ++x)
        if (mask & (std::uint32_t(1) << x))
          keep.push_back(delta.support().labels()[std::size_t(x)]);
      const double norm = trace_norm_raw(partial_trace(delta, QubitSet(keep)).matrix());
      const double contrib = norm / denom;
      for (int x = 0; x < m; ++x)
        if (mask & (std::uint32_t(1) << x))
          best[std::size_t(x)] = std::max(best[std::size_t(x)], contrib);
    }
  }
  double total = 0.0;
  for (double b : best) total += b;
  return total;
}

double w1loc_trace_lower_bound(const HermitianOperator& delta, const PenaltySchedule& schedule) {
  require_traceless(delta, "w1loc_trace_lower_bound");
  require_schedule_covers(schedule, delta.num_qubits(), "w1loc_trace_lower_bound");
  return trace_norm(delta) / (2.0 * schedule.at(delta.num_qubits()));
}

LocalDecomposition::LocalDecomposition(QubitSet universe, std::vector<HermitianOperator> terms)
    : universe_(std::move(universe)), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.support().empty())
      throw std::invalid_argument("LocalDecomposition: term with empty support");
    if (!t.support().subset_of(universe_))
      throw std::invalid_argument("LocalDecomposition: term support escapes the universe");
  }
}

HermitianOperator LocalDecomposition::assemble() const {
  HermitianOperator acc = HermitianOperator::zero(universe_);
  for (const auto& t : terms_) acc = acc + embed(t, universe_);
  return acc;
}

double local_norm_of_decomposition(const LocalDecomposition& d, const PenaltySchedule& schedule) {
  int max_term = 0;
  for (const auto& t : d.terms()) max_term = std::max(max_term, t.num_qubits());
  require_schedule_covers(schedule, max_term, "local_norm_of_decomposition");

  std::vector<double> term_norms;
  term_norms.reserve(d.terms().size());
  for (const auto& t : d.terms()) term_norms.push_back(operator_norm(t));

  double best = 0.0;
  for (int x : d.universe().labels()) {
    double site = 0.0;
    for (std::size_t i = 0; i < d.terms().size(); ++i)
      if (d.terms()[i].support().contains(x))
        site += schedule.at(d.terms()[i].num_qubits()) * term_norms[i];
    best = std::max(best, site);
  }
  return 2.0 * best;
}

double lipschitz_upper_bound(const HermitianOperator& h) {
  if (h.support().empty()) return 0.0;
  double best = 0.0;
  for (int x : h.support().labels()) {
    const QubitSet rest = h.support().minus(QubitSet({x}));
    const HermitianOperator reduced = partial_trace(h, rest).scaled(0.5);
    const HermitianOperator diff = h - embed(reduced, h.support());
    best = std::max(best, 2.0 * operator_norm(diff));
  }
  return best;
}

}  // namespace locw1
