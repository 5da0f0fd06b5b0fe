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

#include "locw1/shadows.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace locw1 {

namespace {

// Measurement eigenvectors: row index 0/1 = outcome +1/-1.
Eigen::Vector2cd basis_vector(PauliLetter basis, int outcome) {
  const double r = 1.0 / std::sqrt(2.0);
  const std::complex<double> im(0.0, 1.0);
  switch (basis) {
    case PauliLetter::X:
      return outcome > 0 ? Eigen::Vector2cd(r, r) : Eigen::Vector2cd(r, -r);
    case PauliLetter::Y:
      return outcome > 0 ? Eigen::Vector2cd(r, r * im) : Eigen::Vector2cd(r, -r * im);
    case PauliLetter::Z:
      return outcome > 0 ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    default:
      throw std::invalid_argument("basis_vector: basis must be X, Y or Z");
  }
}

void check_round(const PauliPrimitiveShadow& s, const char* who) {
  if (s.bases.empty() || s.bases.size() != s.outcomes.size())
    throw std::invalid_argument(std::string(who) + ": malformed round");
  for (PauliLetter b : s.bases)
    if (b == PauliLetter::I)
      throw std::invalid_argument(std::string(who) + ": basis letter I is not measurable");
  for (int o : s.outcomes)
    if (o != 1 && o != -1) throw std::invalid_argument(std::string(who) + ": outcome not +-1");
}

}  // namespace

PauliPrimitiveShadow sample_shadow(const DensityMatrix& rho, Rng& rng) {
  const int n = rho.num_qubits();
  PauliPrimitiveShadow s;
  s.bases.resize(std::size_t(n));
  s.outcomes.resize(std::size_t(n));
  for (int q = 0; q < n; ++q)
    s.bases[std::size_t(q)] = static_cast<PauliLetter>(1 + rng.uniform_int(3));

  // Measure qubit by qubit; `cur` holds the normalized conditional state of
  // the remaining qubits, with the next qubit as its top bit.
  Eigen::MatrixXcd cur = rho.matrix();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index half = cur.rows() / 2;
    // 2x2 matrix of block traces T(a,b) = Tr cur[a block, b block].
    Eigen::Matrix2cd t = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        t(a, b) = cur.block(a * half, b * half, half, half).trace();
    const Eigen::Vector2cd plus = basis_vector(s.bases[std::size_t(q)], +1);
    double p_plus = (plus.adjoint() * t * plus)(0).real();
    p_plus = std::min(std::max(p_plus, 0.0), 1.0);
    const int outcome = rng.uniform() < p_plus ? +1 : -1;
    s.outcomes[std::size_t(q)] = outcome;

    if (q == n - 1) break;
    const Eigen::Vector2cd v = basis_vector(s.bases[std::size_t(q)], outcome);
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(half, half);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        next += std::conj(v(a)) * v(b) * cur.block(a * half, b * half, half, half);
    const double p = std::max(next.trace().real(), 1e-300);
    cur = next / p;
  }
  return s;
}

std::vector<PauliPrimitiveShadow> sample_shadows(const DensityMatrix& rho, std::int64_t count,
                                                 Rng& rng) {
  if (count < 0) throw std::invalid_argument("sample_shadows: negative count");
  std::vector<PauliPrimitiveShadow> out;
  out.reserve(std::size_t(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(sample_shadow(rho, rng));
  return out;
}

HermitianOperator shadow_to_operator(const PauliPrimitiveShadow& s) {
  check_round(s, "shadow_to_operator");
  const int n = s.n();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Eigen::Vector2cd v = basis_vector(s.bases[std::size_t(q)], s.outcomes[std::size_t(q)]);
    const Eigen::Matrix2cd f = 3.0 * (v * v.adjoint()) - Eigen::Matrix2cd::Identity();
    // Grow to the right so qubit 1 stays the most significant factor.
    Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
    for (Eigen::Index i = 0; i < acc.rows(); ++i)
      for (Eigen::Index j = 0; j < acc.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = acc(i, j) * f;
    acc = std::move(next);
  }
  return HermitianOperator(QubitSet::range(n), std::move(acc));
}

double shadow_expectation(const PauliPrimitiveShadow& s, const PauliString& p) {
  check_round(s, "shadow_expectation");
  if (p.n() != s.n())
    throw std::invalid_argument("shadow_expectation: word length does not match round");
  double acc = 1.0;
  for (int q = 1; q <= p.n(); ++q) {
    const PauliLetter l = p.letter(q);
    if (l == PauliLetter::I) continue;
    if (l != s.bases[std::size_t(q - 1)]) return 0.0;
    acc *= 3.0 * s.outcomes[std::size_t(q - 1)];
  }
  return acc;
}

std::vector<WeightedShadow> enumerate_shadow_distribution(const DensityMatrix& rho) {
  const int n = rho.num_qubits();
  if (n > kShadowEnumerationMaxQubits)
    throw std::invalid_argument("enumerate_shadow_distribution: more than " +
                                std::to_string(kShadowEnumerationMaxQubits) + " qubits");
  const Eigen::Index d = rho.matrix().rows();
  const double basis_weight = std::pow(3.0, -n);

  std::vector<WeightedShadow> out;
  std::vector<int> basis(std::size_t(n), 0);  // 0..2 -> X,Y,Z
  for (;;) {
    for (Eigen::Index pattern = 0; pattern < d; ++pattern) {
      PauliPrimitiveShadow s;
      s.bases.resize(std::size_t(n));
      s.outcomes.resize(std::size_t(n));
      Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
      for (int q = 0; q < n; ++q) {
        s.bases[std::size_t(q)] = static_cast<PauliLetter>(1 + basis[std::size_t(q)]);
        const int outcome = ((pattern >> (n - 1 - q)) & 1) ? -1 : +1;
        s.outcomes[std::size_t(q)] = outcome;
        const Eigen::Vector2cd v = basis_vector(s.bases[std::size_t(q)], outcome);
        // Append on the right: qubit 1 owns the most significant amplitude bit.
        Eigen::VectorXcd next(psi.size() * 2);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
          next(2 * i) = psi(i) * v(0);
          next(2 * i + 1) = psi(i) * v(1);
        }
        psi = std::move(next);
      }
      const double born = std::max((psi.adjoint() * rho.matrix() * psi)(0).real(), 0.0);
      out.push_back({std::move(s), basis_weight * born});
    }
    int q = n - 1;
    while (q >= 0 && basis[std::size_t(q)] == 2) basis[std::size_t(q--)] = 0;
    if (q < 0) break;
    ++basis[std::size_t(q)];
  }
  return out;
}

HermitianOperator exact_shadow_mean(const DensityMatrix& rho) {
  const auto dist = enumerate_shadow_distribution(rho);
  HermitianOperator acc = HermitianOperator::zero(rho.support());
  for (const auto& ws : dist)
    if (ws.probability > 0.0) acc = acc + shadow_to_operator(ws.shadow).scaled(ws.probability);
  return acc;
}

std::vector<double> empirical_mean_estimate(const std::vector<PauliPrimitiveShadow>& shadows,
                                            const std::vector<PauliString>& targets) {
  if (shadows.empty()) throw std::invalid_argument("empirical_mean_estimate: no rounds");
  std::vector<double> out(targets.size(), 0.0);
  for (const auto& s : shadows)
    for (std::size_t t = 0; t < targets.size(); ++t) out[t] += shadow_expectation(s, targets[t]);
  for (double& v : out) v /= static_cast<double>(shadows.size());
  return out;
}

MedianOfMeansReport median_of_means_estimate(const std::vector<PauliPrimitiveShadow>& shadows,
                                             int batches,
                                             const std::vector<PauliString>& targets) {
  const std::int64_t total = static_cast<std::int64_t>(shadows.size());
  if (batches < 1) throw std::invalid_argument("median_of_means_estimate: batches must be >= 1");
  if (batches > total)
    throw std::invalid_argument("median_of_means_estimate: more batches than rounds");

  MedianOfMeansReport report;
  report.batches = batches;
  const std::int64_t per_batch = total / batches;
  report.used = per_batch * batches;
  report.truncated = report.used < total;

  std::vector<double> means(static_cast<std::size_t>(batches));
  report.estimates.resize(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    for (int b = 0; b < batches; ++b) {
      double acc = 0.0;
      for (std::int64_t i = b * per_batch; i < (b + 1) * per_batch; ++i)
        acc += shadow_expectation(shadows[std::size_t(i)], targets[t]);
      means[std::size_t(b)] = acc / static_cast<double>(per_batch);
    }
    std::sort(means.begin(), means.end());
    report.estimates[t] = batches % 2 == 1
                              ? means[std::size_t(batches / 2)]
                              : 0.5 * (means[std::size_t(batches / 2 - 1)] +
                                       means[std::size_t(batches / 2)]);
  }
  return report;
}

std::int64_t required_shadow_count(int k, std::int64_t m_targets, double delta, double epsilon) {
  if (k < 1) throw std::invalid_argument("required_shadow_count: k must be >= 1");
  if (m_targets < 1) throw std::invalid_argument("required_shadow_count: M must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("required_shadow_count: delta must lie in (0,1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("required_shadow_count: epsilon must be > 0");
  const double raw = std::pow(3.0, k + 1) *
                     std::log(2.0 * static_cast<double>(m_targets) / delta) /
                     (epsilon * epsilon);
  if (raw > 9.0e18) throw std::overflow_error("required_shadow_count: overflow");
  return static_cast<std::int64_t>(std::ceil(raw));
}

PauliCoefficients shadow_pauli_estimates(const std::vector<PauliPrimitiveShadow>& shadows,
                                         int n, int k_cut) {
  if (n < 1) throw std::invalid_argument("shadow_pauli_estimates: n must be positive");
  if (k_cut < 0 || k_cut > n)
    throw std::invalid_argument("shadow_pauli_estimates: k_cut out of range");
  if (shadows.empty()) throw std::invalid_argument("shadow_pauli_estimates: no rounds");
  PauliCoefficients est;
  est.n = n;
  est.values.assign(std::size_t(1) << (2 * n), 0.0);

  // Subsets of qubits with size <= k_cut (their masks, bit q-1 = qubit q).
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask)
    if (std::popcount(mask) <= k_cut) subsets.push_back(mask);

  for (const auto& s : shadows) {
    if (s.n() != n) throw std::invalid_argument("shadow_pauli_estimates: mixed round sizes");
    check_round(s, "shadow_pauli_estimates");
    for (std::uint32_t mask : subsets) {
      double value = 1.0;
      std::uint64_t code = 0;
      for (int q = 1; q <= n; ++q) {
        if (!(mask & (std::uint32_t(1) << (q - 1)))) continue;
        value *= 3.0 * s.outcomes[std::size_t(q - 1)];
        code |= static_cast<std::uint64_t>(s.bases[std::size_t(q - 1)])
                << (2 * (n - q));
      }
      est.values[code] += value;
    }
  }
  const double inv = 1.0 / static_cast<double>(shadows.size());
  for (double& v : est.values) v *= inv;
  est.values[0] = 1.0;
  return est;
}

HermitianOperator shadow_state_estimate(const std::vector<PauliPrimitiveShadow>& shadows, int n,
                                        int k_cut) {
  return pauli_reconstruct(shadow_pauli_estimates(shadows, n, k_cut));
}

std::string shadow_to_string(const PauliPrimitiveShadow& s) {
  check_round(s, "shadow_to_string");
  std::string out;
  for (int q = 0; q < s.n(); ++q) {
    if (q) out.push_back(' ');
    out.push_back(pauli_letter_char(s.bases[std::size_t(q)]));
    out.push_back(s.outcomes[std::size_t(q)] > 0 ? '+' : '-');
  }
  return out;
}

PauliPrimitiveShadow shadow_from_string(std::string_view line) {
  PauliPrimitiveShadow s;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() != 2) throw std::invalid_argument("shadow_from_string: bad token '" + tok + "'");
    PauliLetter b;
    switch (tok[0]) {
      case 'X': b = PauliLetter::X; break;
      case 'Y': b = PauliLetter::Y; break;
      case 'Z': b = PauliLetter::Z; break;
      default:
        throw std::invalid_argument("shadow_from_string: bad basis in '" + tok + "'");
    }
    if (tok[1] != '+' && tok[1] != '-')
      throw std::invalid_argument("shadow_from_string: bad outcome in '" + tok + "'");
    s.bases.push_back(b);
    s.outcomes.push_back(tok[1] == '+' ? 1 : -1);
  }
  if (s.bases.empty()) throw std::invalid_argument("shadow_from_string: empty line");
  return s;
}

void write_shadows(std::ostream& out, const std::vector<PauliPrimitiveShadow>& shadows) {
  for (const auto& s : shadows) out << shadow_to_string(s) << '\n';
}

std::vector<PauliPrimitiveShadow> read_shadows(std::istream& in) {
  std::vector<PauliPrimitiveShadow> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(shadow_from_string(line));
  }
  return out;
}

}  // namespace locw1
