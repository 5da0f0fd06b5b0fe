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

#ifndef LOCW1_W1LOC_HPP
#define LOCW1_W1LOC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "locw1/lp.hpp"
#include "locw1/operator.hpp"

namespace locw1 {

// Size-dependent penalty weights c_1 <= c_2 <= ... <= c_n with c_1 = 1.
// They control how strongly large-support marginals are discounted in the
// transport norm below.
class PenaltySchedule {
 public:
  explicit PenaltySchedule(std::vector<double> weights);

  // c_l = 1 for every l.
  static PenaltySchedule ones(int n);

  // c_l = base^{l-1} / l. Monotonicity forces base >= 2 (the ratio
  // c_{l+1}/c_l = base*l/(l+1) dips below 1 at l = 1 otherwise).
  static PenaltySchedule geometric(int n, double base);

  double at(int l) const;  // c_l, 1-based
  int max_size() const { return static_cast<int>(weights_.size()); }

 private:
  std::vector<double> weights_;
};

// Trace norms of all reduced operators of a traceless `delta`. Entry `mask`
// (bit i = i-th support label, bit 0 = first label) holds
// ||Tr_{complement} delta||_1; entry 0 is 0. Requires |Tr delta| <= 1e-10.
std::vector<double> marginal_trace_norms(const HermitianOperator& delta);

// Number of qubits the exact transport norm (an LP over subset constraints)
// is willing to handle.
inline constexpr int kW1MaxLpQubits = 8;
// Constraints whose right-hand side falls below this are dropped.
inline constexpr double kW1PruneTolerance = 1e-12;

struct W1Primal {
  double value = 0.0;
  std::vector<double> site_assignment;  // per support position
};

struct W1Dual {
  double value = 0.0;
  // (mask, weight) for every retained subset variable.
  std::vector<std::pair<std::uint32_t, double>> weights;
};

// Transport norm of a traceless operator:
//   min sum_x a_x  s.t.  ||Tr_{L^c} delta||_1 / (2 c_|L|) <= sum_{x in L} a_x
// over nonempty subsets L, a >= 0.
W1Primal w1loc_primal(const HermitianOperator& delta, const PenaltySchedule& schedule);
W1Primal w1loc_primal_from_norms(const std::vector<double>& norms, int m,
                                 const PenaltySchedule& schedule);

// The same value through the dual program:
//   max sum_L ||Tr_{L^c} delta||_1 t_L  s.t.  t >= 0,
//   2 sum_{L owning x} c_|L| t_L <= 1 for every x.
W1Dual w1loc_dual(const HermitianOperator& delta, const PenaltySchedule& schedule);
W1Dual w1loc_dual_from_norms(const std::vector<double>& norms, int m,
                             const PenaltySchedule& schedule);

// Closed-form upper bound: sum_x max_{L owning x} ||Tr_{L^c} delta||_1 /
// (2 |L| c_|L|). Avoids the LP, so it scales past kW1MaxLpQubits; provably
// dominated subset sizes are skipped.
double w1loc_upper_bound(const HermitianOperator& delta, const PenaltySchedule& schedule);

// ||delta||_1 / (2 c_n), the generic lower bound.
double w1loc_trace_lower_bound(const HermitianOperator& delta, const PenaltySchedule& schedule);

// An operator written as a sum of local terms embedded into a common
// universe of qubits.
class LocalDecomposition {
 public:
  LocalDecomposition(QubitSet universe, std::vector<HermitianOperator> terms);

  const QubitSet& universe() const { return universe_; }
  const std::vector<HermitianOperator>& terms() const { return terms_; }
  HermitianOperator assemble() const;

 private:
  QubitSet universe_;
  std::vector<HermitianOperator> terms_;
};

// 2 max_x sum_{terms owning x} c_|support| ||term||_inf. The dual norm of
// the transport norm is bounded by this over any decomposition.
double local_norm_of_decomposition(const LocalDecomposition& d, const PenaltySchedule& schedule);

// max_x 2 ||h - I_x tensor Tr_x h / 2||_inf, a schedule-free bound on the
// best single-site Lipschitz constant of h.
double lipschitz_upper_bound(const HermitianOperator& h);

}  // namespace locw1

#endif
