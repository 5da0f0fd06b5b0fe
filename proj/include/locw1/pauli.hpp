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

#ifndef LOCW1_PAULI_HPP
#define LOCW1_PAULI_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "locw1/operator.hpp"
#include "locw1/qubits.hpp"

namespace locw1 {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_letter_char(PauliLetter p);

// A Pauli word on qubits 1..n. Codes are base-4 big-endian: digit for qubit 1
// is the most significant, letters I,X,Y,Z are digits 0..3. The identity word
// has code 0.
class PauliString {
 public:
  explicit PauliString(std::vector<PauliLetter> letters);

  static PauliString identity(int n);
  static PauliString parse(std::string_view text);  // e.g. "XIZY"
  static PauliString from_code(std::uint64_t code, int n);

  int n() const { return static_cast<int>(letters_.size()); }
  PauliLetter letter(int qubit) const;  // 1-based
  int weight() const;
  QubitSet support() const;
  std::uint64_t code() const;
  std::string str() const;

  bool operator==(const PauliString& other) const = default;

 private:
  std::vector<PauliLetter> letters_;
};

// Dense matrix of the word on support {1..n}.
HermitianOperator pauli_matrix(const PauliString& p);

// Tr[P a] for a on support {1..n}; O(2^n) via the permutation structure of P.
double pauli_expectation(const HermitianOperator& a, const PauliString& p);

// Full table of Tr[P a] over all 4^n words, indexed by code.
struct PauliCoefficients {
  int n = 0;
  std::vector<double> values;  // size 4^n

  double at(const PauliString& p) const { return values.at(p.code()); }
  double& at(const PauliString& p) { return values.at(p.code()); }
};

PauliCoefficients pauli_coefficients(const HermitianOperator& a);

// (1/2^n) sum_P coeff(P) P; inverse of pauli_coefficients.
HermitianOperator pauli_reconstruct(const PauliCoefficients& coeffs);

// Number of words with weight between 1 and k: sum_{i=1}^{k} C(n,i) 3^i.
std::int64_t pauli_count_up_to_weight(int n, int k);

// Codes of all words with weight between 1 and k, ascending.
std::vector<std::uint64_t> pauli_codes_up_to_weight(int n, int k);

}  // namespace locw1

#endif
