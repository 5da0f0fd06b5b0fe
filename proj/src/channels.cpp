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

#include "locw1/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace locw1 {

SingleQubitChannel::SingleQubitChannel(std::string name_, std::vector<Eigen::Matrix2cd> kraus_)
    : name(std::move(name_)), kraus(std::move(kraus_)) {
  if (kraus.empty()) throw std::invalid_argument("SingleQubitChannel: no Kraus operators");
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  for (const auto& k : kraus) acc += k.adjoint() * k;
  if ((acc - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("SingleQubitChannel: Kraus operators are not trace preserving");
}

SingleQubitChannel depolarizing_channel(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing_channel: p out of [0,1]");
  const std::complex<double> im(0.0, 1.0);
  Eigen::Matrix2cd x, y, z;
  x << 0, 1, 1, 0;
  y << 0, -im, im, 0;
  z << 1, 0, 0, -1;
  std::vector<Eigen::Matrix2cd> kraus;
  kraus.push_back(std::sqrt(1.0 - 0.75 * p) * Eigen::Matrix2cd::Identity());
  kraus.push_back(std::sqrt(0.25 * p) * x);
  kraus.push_back(std::sqrt(0.25 * p) * y);
  kraus.push_back(std::sqrt(0.25 * p) * z);
  return SingleQubitChannel("depolarizing(" + std::to_string(p) + ")", std::move(kraus));
}

SingleQubitChannel amplitude_damping_channel(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("amplitude_damping_channel: gamma out of [0,1]");
  Eigen::Matrix2cd k0, k1;
  k0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  k1 << 0, std::sqrt(gamma), 0, 0;
  return SingleQubitChannel("amplitude-damping(" + std::to_string(gamma) + ")", {k0, k1});
}

SingleQubitChannel unitary_channel(const Eigen::Matrix2cd& u) {
  return SingleQubitChannel("unitary", {u});
}

Eigen::Matrix2cd haar_unitary_2x2(Rng& rng) {
  // Gram-Schmidt on a complex Gaussian matrix.
  Eigen::Vector2cd a(rng.complex_normal(), rng.complex_normal());
  Eigen::Vector2cd b(rng.complex_normal(), rng.complex_normal());
  a.normalize();
  b -= a.dot(b) * a;
  b.normalize();
  Eigen::Matrix2cd u;
  u.col(0) = a;
  u.col(1) = b;
  return u;
}

SingleQubitChannel random_mixed_unitary_channel(Rng& rng) {
  const double p = rng.uniform();
  const Eigen::Matrix2cd u1 = haar_unitary_2x2(rng);
  const Eigen::Matrix2cd u2 = haar_unitary_2x2(rng);
  return SingleQubitChannel("mixed-unitary",
                            {std::sqrt(p) * u1, std::sqrt(1.0 - p) * u2});
}

namespace {

// B = (I ... K ... I) A with K acting on the bit of significance s.
Eigen::MatrixXcd left_apply(const Eigen::Matrix2cd& k, const Eigen::MatrixXcd& a, int s) {
  const Eigen::Index d = a.rows();
  const Eigen::Index bit = Eigen::Index(1) << s;
  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const Eigen::Index rb = (r >> s) & 1;
    const Eigen::Index r0 = r & ~bit;
    out.row(r) = k(rb, 0) * a.row(r0) + k(rb, 1) * a.row(r0 | bit);
  }
  return out;
}

}  // namespace

HermitianOperator apply_channel(const HermitianOperator& a, int qubit,
                                const SingleQubitChannel& ch) {
  const int pos = a.support().position_of(qubit);
  if (pos < 0) throw std::invalid_argument("apply_channel: qubit not in support");
  const int s = a.num_qubits() - 1 - pos;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(a.dim(), a.dim());
  for (const auto& k : ch.kraus) {
    const Eigen::MatrixXcd half = left_apply(k, a.matrix(), s);
    // B K^dag = (K B^dag)^dag
    acc += left_apply(k, half.adjoint(), s).adjoint();
  }
  return HermitianOperator(a.support(), std::move(acc));
}

DensityMatrix apply_channel(const DensityMatrix& rho, int qubit, const SingleQubitChannel& ch) {
  return DensityMatrix(apply_channel(rho.op(), qubit, ch));
}

}  // namespace locw1
