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

#ifndef LOCW1_CHANNELS_HPP
#define LOCW1_CHANNELS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "locw1/operator.hpp"
#include "locw1/rng.hpp"

namespace locw1 {

// Single-qubit CPTP map in Kraus form; construction checks the trace
// preservation condition sum K^dag K = I.
struct SingleQubitChannel {
  std::string name;
  std::vector<Eigen::Matrix2cd> kraus;

  SingleQubitChannel(std::string name, std::vector<Eigen::Matrix2cd> kraus);
};

// rho -> (1-p) rho + p I/2, p in [0, 1].
SingleQubitChannel depolarizing_channel(double p);

// Decay |1> -> |0> with probability gamma in [0, 1].
SingleQubitChannel amplitude_damping_channel(double gamma);

SingleQubitChannel unitary_channel(const Eigen::Matrix2cd& u);

Eigen::Matrix2cd haar_unitary_2x2(Rng& rng);

// Mixture of two Haar random unitaries with a random weight.
SingleQubitChannel random_mixed_unitary_channel(Rng& rng);

// Apply a channel to one qubit of an operator (the qubit label must belong
// to the operator's support).
HermitianOperator apply_channel(const HermitianOperator& a, int qubit,
                                const SingleQubitChannel& ch);
DensityMatrix apply_channel(const DensityMatrix& rho, int qubit, const SingleQubitChannel& ch);

}  // namespace locw1

#endif
