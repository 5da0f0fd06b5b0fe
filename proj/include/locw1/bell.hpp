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

#ifndef LOCW1_BELL_HPP
#define LOCW1_BELL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "locw1/operator.hpp"
#include "locw1/pauli.hpp"
#include "locw1/rng.hpp"

namespace locw1 {

// Bell basis on a qubit pair, in the convention
//   PsiPlus  = (|00> + |11>)/sqrt2,  PsiMinus = (|00> - |11>)/sqrt2,
//   PhiPlus  = (|01> + |10>)/sqrt2,  PhiMinus = (|01> - |10>)/sqrt2.
// Each vector is an eigenvector of sigma x sigma for every Pauli sigma; the
// signs are tabulated in bell_sign below.
enum class BellLabel : std::uint8_t { PsiPlus = 0, PsiMinus = 1, PhiPlus = 2, PhiMinus = 3 };

char const* bell_label_token(BellLabel l);  // "P+", "P-", "F+", "F-"

// Eigenvalue of sigma x sigma on the labelled Bell vector.
int bell_sign(PauliLetter sigma, BellLabel label);

// The Bell vector as a 4-dim column (first qubit of the pair = top bit).
Eigen::Vector4cd bell_vector(BellLabel label);

// Outcome of measuring every pair (k, n+k) of two state copies in the Bell
// basis; labels[k-1] is the result for pair k.
struct BellOutcomeRecord {
  std::vector<BellLabel> labels;

  int n() const { return static_cast<int>(labels.size()); }
};

inline constexpr int kBellSamplerMaxQubits = 6;

// Exact sampler for the joint distribution of all pair outcomes on rho x rho.
// Pr[L] = (1/4^n) sum_P prod_k bell_sign(P_k, L_k) <P>^2, materialized as a
// chain of prefix marginals so one record costs O(n) draws.
class BellSampler {
 public:
  explicit BellSampler(const DensityMatrix& rho);

  int n() const { return n_; }
  BellOutcomeRecord sample(Rng& rng) const;

  // Joint table over label words (base-4, pair 1 most significant), size 4^n.
  const std::vector<double>& joint_distribution() const { return prefix_.back(); }

 private:
  int n_;
  // prefix_[j-1][w] = Pr[first j labels = w], j = 1..n.
  std::vector<std::vector<double>> prefix_;
};

std::vector<BellOutcomeRecord> sample_bell_outcomes(const DensityMatrix& rho,
                                                    std::int64_t count, Rng& rng);

// Mean of prod_k bell_sign(P_k, L_k) over records; estimates <P>^2.
double magnitude_sq_estimate(const std::vector<BellOutcomeRecord>& records,
                             const PauliString& p);

// sqrt of the clamped square estimate.
double magnitude_estimate(const std::vector<BellOutcomeRecord>& records, const PauliString& p);

struct SignEstimate {
  int sign = 1;
  std::int64_t n2_used = 0;  // even requests are raised to the next odd
};

// Majority vote over n2 independent single-copy measurements of P, each a
// Bernoulli draw with success probability (1 + <P>)/2.
SignEstimate sign_estimate(const DensityMatrix& rho, const PauliString& p, std::int64_t n2,
                           Rng& rng);

struct BellCalibration {
  double c1 = 8.0;
  double c2 = 8.0;
};

struct BellBudget {
  std::int64_t n1 = 0;            // records (each consumes two copies)
  std::int64_t n2 = 0;            // single-copy sign draws, odd
  std::int64_t total_copies = 0;  // 2 n1 + n2
};

// n1 = ceil(c1 ln(2M/delta) / eps^4), n2 = ceil(c2 ln(2M/delta) / eps^2)
// raised to odd. The constants default to calibrated values, not asymptotic
// ones.
BellBudget required_copies_bell(std::int64_t m_targets, double delta, double epsilon,
                                const BellCalibration& calib = {});

// Full protocol: estimate |<P>| for every word of weight <= k_cut from n1
// Bell records, query the sign (majority vote) only for magnitudes above
// epsilon, zero the rest, and reconstruct the truncated expansion.
HermitianOperator bell_state_estimate(const DensityMatrix& rho, int k_cut, double epsilon,
                                      double delta, Rng& rng,
                                      const BellCalibration& calib = {},
                                      BellBudget* budget_out = nullptr);

// Text round-trip, one record per line, tokens like "P+ F- P-".
std::string bell_record_to_string(const BellOutcomeRecord& r);
BellOutcomeRecord bell_record_from_string(std::string_view line);
void write_bell_records(std::ostream& out, const std::vector<BellOutcomeRecord>& records);
std::vector<BellOutcomeRecord> read_bell_records(std::istream& in);

}  // namespace locw1

#endif
