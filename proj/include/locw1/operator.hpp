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

#ifndef LOCW1_OPERATOR_HPP
#define LOCW1_OPERATOR_HPP

#include <Eigen/Dense>
#include <complex>

#include "locw1/qubits.hpp"

namespace locw1 {

// Construction-time tolerances. Hermiticity is relative to the largest entry
// magnitude; trace and positivity checks for states are absolute.
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

// Dense Hermitian operator on an explicit set of qubit labels. The matrix is
// indexed big-endian over the sorted labels (smallest label = most
// significant bit). Construction rejects matrices that are not Hermitian
// within kHermitianTolerance and stores the symmetrized (A + A^dag)/2 so that
// downstream spectral routines see an exactly Hermitian matrix.
class HermitianOperator {
 public:
  HermitianOperator(QubitSet support, Eigen::MatrixXcd entries);

  static HermitianOperator zero(const QubitSet& support);
  static HermitianOperator identity(const QubitSet& support);

  const QubitSet& support() const { return support_; }
  int num_qubits() const { return support_.size(); }
  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }

  double trace() const { return mat_.trace().real(); }
  double max_abs() const { return mat_.size() == 0 ? 0.0 : mat_.cwiseAbs().maxCoeff(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator-() const;
  HermitianOperator scaled(double factor) const;

 private:
  QubitSet support_;
  Eigen::MatrixXcd mat_;
};

inline HermitianOperator operator*(double factor, const HermitianOperator& a) {
  return a.scaled(factor);
}

// Quantum state: Hermitian, unit trace within kTraceTolerance, smallest
// eigenvalue >= -kPsdTolerance.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op);
  DensityMatrix(QubitSet support, Eigen::MatrixXcd entries)
      : DensityMatrix(HermitianOperator(std::move(support), std::move(entries))) {}

  const HermitianOperator& op() const { return op_; }
  const Eigen::MatrixXcd& matrix() const { return op_.matrix(); }
  const QubitSet& support() const { return op_.support(); }
  int num_qubits() const { return op_.num_qubits(); }

 private:
  HermitianOperator op_;
};

struct EigResult {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns match values
};

// Tensor product over disjoint supports; the result lives on the union with
// the global label order (not simply a Kronecker product unless the supports
// are already label-ordered blocks).
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

// Pad with identity on target \ support. Requires support(a) subset of target.
HermitianOperator embed(const HermitianOperator& a, const QubitSet& target);

// Trace out support(a) \ keep. Requires keep subset of support(a).
HermitianOperator partial_trace(const HermitianOperator& a, const QubitSet& keep);

EigResult eig(const HermitianOperator& a);
double trace_norm(const HermitianOperator& a);
double operator_norm(const HermitianOperator& a);

// Tr[a b] for Hermitian a, b on the same support (always real).
double pairing(const HermitianOperator& a, const HermitianOperator& b);

HermitianOperator matrix_exp(const HermitianOperator& a);
// Throws std::domain_error if the spectrum is not strictly positive.
HermitianOperator matrix_log(const HermitianOperator& a);

// Tr[rho (log rho - log sigma)] in nats. Throws std::domain_error if rho has
// weight outside the support of sigma (beyond tolerance).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

namespace detail {

// Trace out one bit of a 2^nbits-dim matrix; `pos` counts from the most
// significant bit (pos 0 = MSB), matching the label ordering above.
Eigen::MatrixXcd trace_out_bit(const Eigen::MatrixXcd& m, int nbits, int pos);

}  // namespace detail

}  // namespace locw1

#endif
