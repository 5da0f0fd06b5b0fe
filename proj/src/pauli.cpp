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

#include "locw1/pauli.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace locw1 {

namespace {

// A Pauli word acts on basis states as P|j> = phase(j) |j ^ flip> with
// flip collecting X/Y bits and phase(j) = i^{#Y} * (-1)^{popcount(j & yz)}.
struct WordAction {
  std::uint64_t flip = 0;
  std::uint64_t yz = 0;
  int num_y = 0;
};

WordAction action_of(const PauliString& p) {
  WordAction a;
  const int n = p.n();
  for (int q = 1; q <= n; ++q) {
    const std::uint64_t bit = std::uint64_t(1) << (n - q);
    switch (p.letter(q)) {
      case PauliLetter::I:
        break;
      case PauliLetter::X:
        a.flip |= bit;
        break;
      case PauliLetter::Y:
        a.flip |= bit;
        a.yz |= bit;
        ++a.num_y;
        break;
      case PauliLetter::Z:
        a.yz |= bit;
        break;
    }
  }
  return a;
}

std::complex<double> i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void require_full_support(const HermitianOperator& a, const char* who) {
  if (!(a.support() == QubitSet::range(a.num_qubits())))
    throw std::invalid_argument(std::string(who) + ": operator support must be {1..n}");
}

}  // namespace

char pauli_letter_char(PauliLetter p) {
  switch (p) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    default: return 'Z';
  }
}

PauliString::PauliString(std::vector<PauliLetter> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw std::invalid_argument("PauliString: empty word");
}

PauliString PauliString::identity(int n) {
  if (n < 1) throw std::invalid_argument("PauliString::identity: n must be positive");
  return PauliString(std::vector<PauliLetter>(std::size_t(n), PauliLetter::I));
}

PauliString PauliString::parse(std::string_view text) {
  std::vector<PauliLetter> letters;
  letters.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': letters.push_back(PauliLetter::I); break;
      case 'X': letters.push_back(PauliLetter::X); break;
      case 'Y': letters.push_back(PauliLetter::Y); break;
      case 'Z': letters.push_back(PauliLetter::Z); break;
      default:
        throw std::invalid_argument("PauliString::parse: bad character '" + std::string(1, c) +
                                    "'");
    }
  }
  return PauliString(std::move(letters));
}

PauliString PauliString::from_code(std::uint64_t code, int n) {
  if (n < 1 || n > 31) throw std::invalid_argument("PauliString::from_code: bad n");
  std::vector<PauliLetter> letters(static_cast<std::size_t>(n));
  for (int q = n; q >= 1; --q) {
    letters[std::size_t(q - 1)] = static_cast<PauliLetter>(code & 3);
    code >>= 2;
  }
  if (code != 0) throw std::invalid_argument("PauliString::from_code: code out of range");
  return PauliString(std::move(letters));
}

PauliLetter PauliString::letter(int qubit) const {
  if (qubit < 1 || qubit > n()) throw std::out_of_range("PauliString::letter: bad qubit");
  return letters_[std::size_t(qubit - 1)];
}

int PauliString::weight() const {
  int w = 0;
  for (PauliLetter p : letters_)
    if (p != PauliLetter::I) ++w;
  return w;
}

QubitSet PauliString::support() const {
  std::vector<int> labels;
  for (int q = 1; q <= n(); ++q)
    if (letters_[std::size_t(q - 1)] != PauliLetter::I) labels.push_back(q);
  return QubitSet(std::move(labels));
}

std::uint64_t PauliString::code() const {
  std::uint64_t c = 0;
  for (PauliLetter p : letters_) c = (c << 2) | static_cast<std::uint64_t>(p);
  return c;
}

std::string PauliString::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (PauliLetter p : letters_) s.push_back(pauli_letter_char(p));
  return s;
}

HermitianOperator pauli_matrix(const PauliString& p) {
  const int n = p.n();
  const Eigen::Index d = Eigen::Index(1) << n;
  const WordAction a = action_of(p);
  const std::complex<double> front = i_power(a.num_y);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const int par = std::popcount(std::uint64_t(j) & a.yz) & 1;
    m(Eigen::Index(std::uint64_t(j) ^ a.flip), j) = par ? -front : front;
  }
  return HermitianOperator(QubitSet::range(n), std::move(m));
}

double pauli_expectation(const HermitianOperator& a, const PauliString& p) {
  require_full_support(a, "pauli_expectation");
  if (p.n() != a.num_qubits())
    throw std::invalid_argument("pauli_expectation: word length does not match operator");
  const WordAction act = action_of(p);
  const Eigen::Index d = a.dim();
  std::complex<double> acc = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const int par = std::popcount(std::uint64_t(k) & act.yz) & 1;
    const std::complex<double> v = a.matrix()(k, Eigen::Index(std::uint64_t(k) ^ act.flip));
    acc += par ? -v : v;
  }
  return (i_power(act.num_y) * acc).real();
}

PauliCoefficients pauli_coefficients(const HermitianOperator& a) {
  require_full_support(a, "pauli_coefficients");
  const int n = a.num_qubits();
  PauliCoefficients out;
  out.n = n;
  out.values.resize(std::size_t(1) << (2 * n));
  for (std::uint64_t code = 0; code < out.values.size(); ++code)
    out.values[code] = pauli_expectation(a, PauliString::from_code(code, n));
  return out;
}

HermitianOperator pauli_reconstruct(const PauliCoefficients& coeffs) {
  const int n = coeffs.n;
  if (n < 1 || coeffs.values.size() != (std::size_t(1) << (2 * n)))
    throw std::invalid_argument("pauli_reconstruct: bad coefficient table");
  const Eigen::Index d = Eigen::Index(1) << n;
  const double inv = 1.0 / static_cast<double>(d);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::uint64_t code = 0; code < coeffs.values.size(); ++code) {
    const double c = coeffs.values[code];
    if (c == 0.0) continue;
    const WordAction act = action_of(PauliString::from_code(code, n));
    const std::complex<double> front = i_power(act.num_y) * (c * inv);
    for (Eigen::Index j = 0; j < d; ++j) {
      const int par = std::popcount(std::uint64_t(j) & act.yz) & 1;
      m(Eigen::Index(std::uint64_t(j) ^ act.flip), j) += par ? -front : front;
    }
  }
  return HermitianOperator(QubitSet::range(n), std::move(m));
}

std::int64_t pauli_count_up_to_weight(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("pauli_count_up_to_weight: bad (n, k)");
  unsigned __int128 total = 0;
  for (int i = 1; i <= k; ++i) {
    unsigned __int128 binom = 1;
    for (int j = 0; j < i; ++j) binom = binom * std::uint64_t(n - j) / std::uint64_t(j + 1);
    unsigned __int128 pow3 = 1;
    for (int j = 0; j < i; ++j) pow3 *= 3;
    total += binom * pow3;
    if (total > (unsigned __int128)INT64_MAX)
      throw std::overflow_error("pauli_count_up_to_weight: overflow");
  }
  return static_cast<std::int64_t>(total);
}

namespace {
void collect_codes(int n, int q, int weight_left, std::uint64_t prefix,
                   std::vector<std::uint64_t>& out) {
  if (q > n) {
    if (weight_left < 0) return;
    out.push_back(prefix);
    return;
  }
  collect_codes(n, q + 1, weight_left, prefix << 2, out);
  if (weight_left > 0)
    for (std::uint64_t l = 1; l <= 3; ++l)
      collect_codes(n, q + 1, weight_left - 1, (prefix << 2) | l, out);
}
}  // namespace

std::vector<std::uint64_t> pauli_codes_up_to_weight(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("pauli_codes_up_to_weight: bad (n, k)");
  std::vector<std::uint64_t> out;
  collect_codes(n, 1, k, 0, out);
  // Drop the identity word (weight 0) and sort ascending.
  std::sort(out.begin(), out.end());
  if (!out.empty() && out.front() == 0) out.erase(out.begin());
  return out;
}

}  // namespace locw1
