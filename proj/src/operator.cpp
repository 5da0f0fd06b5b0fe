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

#include "locw1/operator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace locw1 {

namespace {

// Eigenvalues of sigma below this are treated as its kernel when computing
// relative entropy. Must sit above eigensolver noise (~1e-16 * ||sigma||) and
// below any physically meaningful population.
constexpr double kSigmaKernelTol = 1e-14;
constexpr double kKernelWeightTol = 1e-9;

Eigen::Index dim_for(const QubitSet& s) { return Eigen::Index(1) << s.size(); }

// Scatter the bits of `x` (big-endian over `positions`) into an index with
// `total` bits, where positions count from the MSB.
std::vector<Eigen::Index> scatter_table(const std::vector<int>& positions, int total) {
  const int k = static_cast<int>(positions.size());
  std::vector<Eigen::Index> table(std::size_t(1) << k, 0);
  for (Eigen::Index x = 0; x < (Eigen::Index(1) << k); ++x) {
    Eigen::Index out = 0;
    for (int i = 0; i < k; ++i) {
      const Eigen::Index bit = (x >> (k - 1 - i)) & 1;
      out |= bit << (total - 1 - positions[i]);
    }
    table[std::size_t(x)] = out;
  }
  return table;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig_solver(const Eigen::MatrixXcd& m,
                                                           bool vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es;
  es.compute(m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition did not converge");
  return es;
}

}  // namespace

HermitianOperator::HermitianOperator(QubitSet support, Eigen::MatrixXcd entries)
    : support_(std::move(support)), mat_(std::move(entries)) {
  const Eigen::Index d = dim_for(support_);
  if (mat_.rows() != d || mat_.cols() != d)
    throw std::invalid_argument("HermitianOperator: matrix is " + std::to_string(mat_.rows()) +
                                "x" + std::to_string(mat_.cols()) + ", expected " +
                                std::to_string(d) + "x" + std::to_string(d));
  const double scale = mat_.size() == 0 ? 0.0 : mat_.cwiseAbs().maxCoeff();
  const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitianTolerance * std::max(scale, 1e-300))
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian (deviation " +
                                std::to_string(dev) + " at scale " + std::to_string(scale) + ")");
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
}

HermitianOperator HermitianOperator::zero(const QubitSet& support) {
  return HermitianOperator(support, Eigen::MatrixXcd::Zero(dim_for(support), dim_for(support)));
}

HermitianOperator HermitianOperator::identity(const QubitSet& support) {
  return HermitianOperator(support,
                           Eigen::MatrixXcd::Identity(dim_for(support), dim_for(support)));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  if (!(support_ == other.support_))
    throw std::invalid_argument("operator+: supports differ");
  return HermitianOperator(support_, mat_ + other.mat_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  if (!(support_ == other.support_))
    throw std::invalid_argument("operator-: supports differ");
  return HermitianOperator(support_, mat_ - other.mat_);
}

HermitianOperator HermitianOperator::operator-() const {
  return HermitianOperator(support_, -mat_);
}

HermitianOperator HermitianOperator::scaled(double factor) const {
  return HermitianOperator(support_, factor * mat_);
}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance)
    throw std::invalid_argument("DensityMatrix: trace is " + std::to_string(tr));
  const auto es = eig_solver(op_.matrix(), false);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < -kPsdTolerance)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(lo));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  if (!a.support().disjoint_from(b.support()))
    throw std::invalid_argument("tensor: supports overlap");
  const QubitSet u = a.support().unite(b.support());
  const int m = u.size();
  const Eigen::Index d = Eigen::Index(1) << m;

  // For each index of the union space, the sub-indices into a and b.
  std::vector<Eigen::Index> ia(static_cast<std::size_t>(d)), ib(static_cast<std::size_t>(d));
  std::vector<int> owner(static_cast<std::size_t>(m));  // 0 -> a, 1 -> b
  for (int p = 0; p < m; ++p) owner[std::size_t(p)] = a.support().contains(u.labels()[std::size_t(p)]) ? 0 : 1;
  for (Eigen::Index r = 0; r < d; ++r) {
    Eigen::Index ra = 0, rb = 0;
    for (int p = 0; p < m; ++p) {
      const Eigen::Index bit = (r >> (m - 1 - p)) & 1;
      if (owner[std::size_t(p)] == 0)
        ra = (ra << 1) | bit;
      else
        rb = (rb << 1) | bit;
    }
    ia[std::size_t(r)] = ra;
    ib[std::size_t(r)] = rb;
  }

  Eigen::MatrixXcd out(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c)
      out(r, c) = a.matrix()(ia[std::size_t(r)], ia[std::size_t(c)]) *
                  b.matrix()(ib[std::size_t(r)], ib[std::size_t(c)]);
  return HermitianOperator(u, std::move(out));
}

HermitianOperator embed(const HermitianOperator& a, const QubitSet& target) {
  if (!a.support().subset_of(target))
    throw std::invalid_argument("embed: support is not contained in target");
  if (a.support() == target) return a;
  const int m = target.size();
  std::vector<int> apos, rpos;
  for (int p = 0; p < m; ++p) {
    if (a.support().contains(target.labels()[std::size_t(p)]))
      apos.push_back(p);
    else
      rpos.push_back(p);
  }
  const auto place_a = scatter_table(apos, m);
  const auto place_r = scatter_table(rpos, m);
  const Eigen::Index da = a.dim();
  const Eigen::Index dr = Eigen::Index(1) << rpos.size();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index(1) << m, Eigen::Index(1) << m);
  for (Eigen::Index xa = 0; xa < da; ++xa)
    for (Eigen::Index ya = 0; ya < da; ++ya) {
      const std::complex<double> v = a.matrix()(xa, ya);
      if (v == std::complex<double>(0.0, 0.0)) continue;
      for (Eigen::Index t = 0; t < dr; ++t)
        out(place_a[std::size_t(xa)] | place_r[std::size_t(t)],
            place_a[std::size_t(ya)] | place_r[std::size_t(t)]) = v;
    }
  return HermitianOperator(target, std::move(out));
}

HermitianOperator partial_trace(const HermitianOperator& a, const QubitSet& keep) {
  if (!keep.subset_of(a.support()))
    throw std::invalid_argument("partial_trace: keep is not contained in support");
  if (keep == a.support()) return a;
  const int m = a.num_qubits();
  std::vector<int> kpos, tpos;
  for (int p = 0; p < m; ++p) {
    if (keep.contains(a.support().labels()[std::size_t(p)]))
      kpos.push_back(p);
    else
      tpos.push_back(p);
  }
  const auto place_k = scatter_table(kpos, m);
  const auto place_t = scatter_table(tpos, m);
  const Eigen::Index dk = Eigen::Index(1) << kpos.size();
  const Eigen::Index dt = Eigen::Index(1) << tpos.size();

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  for (Eigen::Index x = 0; x < dk; ++x)
    for (Eigen::Index y = 0; y < dk; ++y) {
      std::complex<double> acc = 0.0;
      for (Eigen::Index t = 0; t < dt; ++t)
        acc += a.matrix()(place_k[std::size_t(x)] | place_t[std::size_t(t)],
                          place_k[std::size_t(y)] | place_t[std::size_t(t)]);
      out(x, y) = acc;
    }
  return HermitianOperator(keep, std::move(out));
}

EigResult eig(const HermitianOperator& a) {
  const auto es = eig_solver(a.matrix(), true);
  return {es.eigenvalues(), es.eigenvectors()};
}

double trace_norm(const HermitianOperator& a) {
  const auto es = eig_solver(a.matrix(), false);
  return es.eigenvalues().cwiseAbs().sum();
}

double operator_norm(const HermitianOperator& a) {
  const auto es = eig_solver(a.matrix(), false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double pairing(const HermitianOperator& a, const HermitianOperator& b) {
  if (!(a.support() == b.support()))
    throw std::invalid_argument("pairing: supports differ");
  // Tr[ab] = sum_ij a_ij conj(b_ij) for Hermitian b.
  return a.matrix().cwiseProduct(b.matrix().conjugate()).sum().real();
}

HermitianOperator matrix_exp(const HermitianOperator& a) {
  const auto es = eig_solver(a.matrix(), true);
  const Eigen::VectorXd d = es.eigenvalues().array().exp();
  Eigen::MatrixXcd out =
      es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  return HermitianOperator(a.support(), std::move(out));
}

HermitianOperator matrix_log(const HermitianOperator& a) {
  const auto es = eig_solver(a.matrix(), true);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("matrix_log: spectrum is not strictly positive (min " +
                            std::to_string(es.eigenvalues().minCoeff()) + ")");
  const Eigen::VectorXd d = es.eigenvalues().array().log();
  Eigen::MatrixXcd out =
      es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  return HermitianOperator(a.support(), std::move(out));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(rho.support() == sigma.support()))
    throw std::invalid_argument("relative_entropy: supports differ");

  const auto es_rho = eig_solver(rho.matrix(), false);
  double s_rho = 0.0;  // Tr[rho log rho]
  for (Eigen::Index i = 0; i < es_rho.eigenvalues().size(); ++i) {
    const double p = es_rho.eigenvalues()(i);
    if (p > 0.0) s_rho += p * std::log(p);
  }

  const auto es_sig = eig_solver(sigma.matrix(), true);
  // Weight of rho on each sigma eigenvector.
  const Eigen::VectorXd w =
      (es_sig.eigenvectors().adjoint() * rho.matrix() * es_sig.eigenvectors())
          .diagonal()
          .real();
  double cross = 0.0;  // Tr[rho log sigma]
  double kernel_weight = 0.0;
  for (Eigen::Index j = 0; j < es_sig.eigenvalues().size(); ++j) {
    const double q = es_sig.eigenvalues()(j);
    const double wj = std::max(w(j), 0.0);
    if (q <= kSigmaKernelTol) {
      kernel_weight += wj;
    } else {
      cross += wj * std::log(q);
    }
  }
  if (kernel_weight > kKernelWeightTol)
    throw std::domain_error("relative_entropy: first state has weight " +
                            std::to_string(kernel_weight) +
                            " outside the support of the second");
  return s_rho - cross;
}

namespace detail {

Eigen::MatrixXcd trace_out_bit(const Eigen::MatrixXcd& m, int nbits, int pos) {
  if (pos < 0 || pos >= nbits) throw std::invalid_argument("trace_out_bit: bad position");
  const int s = nbits - 1 - pos;  // significance from LSB
  const Eigen::Index low_mask = (Eigen::Index(1) << s) - 1;
  const Eigen::Index half = Eigen::Index(1) << (nbits - 1);
  auto insert_bit = [&](Eigen::Index x, Eigen::Index b) {
    return ((x >> s) << (s + 1)) | (b << s) | (x & low_mask);
  };
  Eigen::MatrixXcd out(half, half);
  for (Eigen::Index r = 0; r < half; ++r)
    for (Eigen::Index c = 0; c < half; ++c)
      out(r, c) = m(insert_bit(r, 0), insert_bit(c, 0)) + m(insert_bit(r, 1), insert_bit(c, 1));
  return out;
}

}  // namespace detail

}  // namespace locw1
