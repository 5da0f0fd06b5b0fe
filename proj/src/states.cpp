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

#include "locw1/states.hpp"

#include <stdexcept>

#include "locw1/pauli.hpp"

namespace locw1 {

namespace {

DensityMatrix pure_state(int n, const Eigen::VectorXcd& v) {
  Eigen::MatrixXcd m = v * v.adjoint();
  return DensityMatrix(QubitSet::range(n), std::move(m));
}

}  // namespace

DensityMatrix basis_state(const std::vector<int>& bits) {
  const int n = static_cast<int>(bits.size());
  if (n < 1) throw std::invalid_argument("basis_state: empty bit string");
  Eigen::Index idx = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("basis_state: bits must be 0 or 1");
    idx = (idx << 1) | b;
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
  v(idx) = 1.0;
  return pure_state(n, v);
}

DensityMatrix basis_state(std::string_view bits) {
  std::vector<int> v;
  v.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("basis_state: bits must be 0 or 1");
    v.push_back(c - '0');
  }
  return basis_state(v);
}

DensityMatrix ghz(int n, int sign) {
  if (n < 2) throw std::invalid_argument("ghz: need at least 2 qubits");
  if (sign != 1 && sign != -1) throw std::invalid_argument("ghz: sign must be +1 or -1");
  const Eigen::Index d = Eigen::Index(1) << n;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  const double r = 1.0 / std::sqrt(2.0);
  v(0) = r;
  v(d - 1) = sign * r;
  return pure_state(n, v);
}

DensityMatrix maximally_mixed(int n) {
  if (n < 1) throw std::invalid_argument("maximally_mixed: n must be positive");
  const Eigen::Index d = Eigen::Index(1) << n;
  return DensityMatrix(QubitSet::range(n),
                       Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix haar_random_pure(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("haar_random_pure: n must be positive");
  const Eigen::Index d = Eigen::Index(1) << n;
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.complex_normal();
  v.normalize();
  return pure_state(n, v);
}

DensityMatrix haar_random_pure(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_pure(n, rng);
}

DensityMatrix random_mixed(int n, int rank, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_mixed: n must be positive");
  const Eigen::Index d = Eigen::Index(1) << n;
  if (rank < 1 || rank > d) throw std::invalid_argument("random_mixed: rank out of range");
  Eigen::MatrixXcd g(d, rank);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  Eigen::MatrixXcd m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(QubitSet::range(n), std::move(m));
}

DensityMatrix random_mixed(int n, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_mixed(n, rank, rng);
}

DensityMatrix gibbs(const HermitianOperator& h) {
  const EigResult es = eig(h);
  // exp(-(e - e_min)) avoids overflow for large spectra; the shift cancels
  // in the normalization.
  const double e0 = es.values.minCoeff();
  Eigen::VectorXd w = (-(es.values.array() - e0)).exp();
  w /= w.sum();
  Eigen::MatrixXcd m = es.vectors * w.asDiagonal() * es.vectors.adjoint();
  return DensityMatrix(h.support(), std::move(m));
}

HermitianOperator random_traceless(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random_traceless: n must be positive");
  const Eigen::Index d = Eigen::Index(1) << n;
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  Eigen::MatrixXcd m = 0.5 * (g + g.adjoint().eval());
  m -= (m.trace() / static_cast<double>(d)) * Eigen::MatrixXcd::Identity(d, d);
  return HermitianOperator(QubitSet::range(n), std::move(m));
}

HermitianOperator relabeled(const HermitianOperator& a, const QubitSet& target) {
  if (target.size() != a.num_qubits())
    throw std::invalid_argument("relabeled: size mismatch");
  return HermitianOperator(target, a.matrix());
}

DensityMatrix product_state(const std::vector<DensityMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_state: no factors");
  int offset = 0;
  HermitianOperator acc = HermitianOperator::identity(QubitSet());
  for (const DensityMatrix& f : factors) {
    std::vector<int> labels;
    for (int q = 1; q <= f.num_qubits(); ++q) labels.push_back(offset + q);
    acc = tensor(acc, relabeled(f.op(), QubitSet(std::move(labels))));
    offset += f.num_qubits();
  }
  return DensityMatrix(std::move(acc));
}

ChainHamiltonian random_chain_hamiltonian(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("random_chain_hamiltonian: need at least 2 qubits");
  std::vector<HermitianOperator> terms;
  terms.reserve(std::size_t(n - 1));
  for (int q = 1; q < n; ++q) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    // All 15 non-identity words on the edge, lexicographic draw order.
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (a == 0 && b == 0) continue;
        const double coeff = rng.uniform(-1.0, 1.0);
        const PauliString word(
            {static_cast<PauliLetter>(a), static_cast<PauliLetter>(b)});
        m += coeff * pauli_matrix(word).matrix();
      }
    terms.emplace_back(QubitSet({q, q + 1}), std::move(m));
  }
  const QubitSet universe = QubitSet::range(n);
  HermitianOperator total = HermitianOperator::zero(universe);
  for (const auto& t : terms) total = total + embed(t, universe);
  return {std::move(total), std::move(terms)};
}

ChainHamiltonian random_chain_hamiltonian(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_chain_hamiltonian(n, rng);
}

}  // namespace locw1
