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

#ifndef LOCW1_SHADOWS_HPP
#define LOCW1_SHADOWS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "locw1/operator.hpp"
#include "locw1/pauli.hpp"
#include "locw1/rng.hpp"

namespace locw1 {

// One randomized single-qubit-basis measurement round: the basis drawn for
// each qubit (X, Y or Z, never I) and the +-1 outcome observed.
struct PauliPrimitiveShadow {
  std::vector<PauliLetter> bases;
  std::vector<int> outcomes;

  int n() const { return static_cast<int>(bases.size()); }
};

// Draw one round from `rho`: bases are i.i.d. uniform over {X,Y,Z} (drawn
// for qubits 1..n first), then outcomes are sampled qubit by qubit from the
// exact conditional Born rule.
PauliPrimitiveShadow sample_shadow(const DensityMatrix& rho, Rng& rng);

std::vector<PauliPrimitiveShadow> sample_shadows(const DensityMatrix& rho, std::int64_t count,
                                                 Rng& rng);

// The inverted-channel single-round estimator: tensor over qubits of
// (3 |b><b| - I). Trace 1 by construction.
HermitianOperator shadow_to_operator(const PauliPrimitiveShadow& s);

// Tr[P rho_hat] for the round's estimator, via the per-qubit factorization:
// 1 for I, 3*outcome when the letter matches the measured basis, else 0.
double shadow_expectation(const PauliPrimitiveShadow& s, const PauliString& p);

struct WeightedShadow {
  PauliPrimitiveShadow shadow;
  double probability;
};

inline constexpr int kShadowEnumerationMaxQubits = 3;

// All 6^n (basis, outcome) rounds with their exact probabilities.
std::vector<WeightedShadow> enumerate_shadow_distribution(const DensityMatrix& rho);

// Exact expectation of the single-round estimator. Equals rho.
HermitianOperator exact_shadow_mean(const DensityMatrix& rho);

std::vector<double> empirical_mean_estimate(const std::vector<PauliPrimitiveShadow>& shadows,
                                            const std::vector<PauliString>& targets);

struct MedianOfMeansReport {
  std::vector<double> estimates;  // one per target
  int batches = 0;
  std::int64_t used = 0;  // shadows actually consumed (batches * batch size)
  bool truncated = false;
};

// Split the rounds into `batches` equal groups (truncating a non-dividing
// tail, flagged in the report) and take the per-target median of the group
// means. batches = 1 reduces to the plain mean.
MedianOfMeansReport median_of_means_estimate(const std::vector<PauliPrimitiveShadow>& shadows,
                                             int batches,
                                             const std::vector<PauliString>& targets);

// Rounds needed so that M targets of weight <= k are all within epsilon with
// probability 1 - delta (plain mean, Bernstein route):
// ceil(3^{k+1} ln(2 M / delta) / epsilon^2).
std::int64_t required_shadow_count(int k, std::int64_t m_targets, double delta, double epsilon);

// Per-word empirical means for every word of weight <= k_cut (identity entry
// is 1); other entries are 0.
PauliCoefficients shadow_pauli_estimates(const std::vector<PauliPrimitiveShadow>& shadows,
                                         int n, int k_cut);

// State estimate from the truncated word expansion:
// (1/2^n) sum_{|P| <= k_cut} est(P) P. Unit trace by construction.
HermitianOperator shadow_state_estimate(const std::vector<PauliPrimitiveShadow>& shadows, int n,
                                        int k_cut);

// Text round-trip, one round per line, tokens like "X+ Z- Y+".
std::string shadow_to_string(const PauliPrimitiveShadow& s);
PauliPrimitiveShadow shadow_from_string(std::string_view line);
void write_shadows(std::ostream& out, const std::vector<PauliPrimitiveShadow>& shadows);
std::vector<PauliPrimitiveShadow> read_shadows(std::istream& in);

}  // namespace locw1

#endif
