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

#ifndef LOCW1_STATES_HPP
#define LOCW1_STATES_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "locw1/operator.hpp"
#include "locw1/rng.hpp"

namespace locw1 {

// Computational basis state |b1 b2 ... bn><...| on qubits {1..n}.
DensityMatrix basis_state(const std::vector<int>& bits);
DensityMatrix basis_state(std::string_view bits);  // e.g. "0110"

// (|0...0> + sign |1...1>)/sqrt(2) as a state; n >= 2, sign is +1 or -1.
DensityMatrix ghz(int n, int sign);

DensityMatrix maximally_mixed(int n);

DensityMatrix haar_random_pure(int n, Rng& rng);
DensityMatrix haar_random_pure(int n, std::uint64_t seed);

// Normalized G G^dag with G a 2^n x rank complex Gaussian matrix, so the
// state has exactly `rank` nonzero eigenvalues.
DensityMatrix random_mixed(int n, int rank, Rng& rng);
DensityMatrix random_mixed(int n, int rank, std::uint64_t seed);

// exp(-h) / Tr exp(-h), computed spectrally with the ground energy shifted
// out first.
DensityMatrix gibbs(const HermitianOperator& h);

// Random traceless Hermitian operator with Gaussian entries (GUE minus its
// trace part); handy as a generic perturbation.
HermitianOperator random_traceless(int n, Rng& rng);

// Copies of `a` with support renamed to `target` (same size, order kept).
HermitianOperator relabeled(const HermitianOperator& a, const QubitSet& target);

// Tensor product of states; factor i is placed on the next block of labels.
DensityMatrix product_state(const std::vector<DensityMatrix>& factors);

// Nearest-neighbour chain on {1..n}: for every edge (q, q+1) one Hermitian
// term holding all 15 non-identity two-qubit Pauli words with i.i.d.
// uniform[-1,1] coefficients. `total` is the sum of the embedded terms.
struct ChainHamiltonian {
  HermitianOperator total;
  std::vector<HermitianOperator> terms;  // one per edge, support {q, q+1}
};

ChainHamiltonian random_chain_hamiltonian(int n, Rng& rng);
ChainHamiltonian random_chain_hamiltonian(int n, std::uint64_t seed);

}  // namespace locw1

#endif
