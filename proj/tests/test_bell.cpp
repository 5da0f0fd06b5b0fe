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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "locw1/bell.hpp"
#include "locw1/states.hpp"

using namespace locw1;

namespace {

constexpr BellLabel kLabels[4] = {BellLabel::PsiPlus, BellLabel::PsiMinus, BellLabel::PhiPlus,
                                  BellLabel::PhiMinus};

Eigen::Matrix2cd letter_matrix(PauliLetter l) {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (l) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << 0, -i, i, 0; break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// rho x rho on 2n qubits, copy one in the high bits.
Eigen::MatrixXcd two_copies(const DensityMatrix& rho) {
  const Eigen::Index d = rho.matrix().rows();
  Eigen::MatrixXcd out(d * d, d * d);
  for (Eigen::Index i = 0; i < d * d; ++i)
    for (Eigen::Index j = 0; j < d * d; ++j)
      out(i, j) = rho.matrix()(i / d, j / d) * rho.matrix()(i % d, j % d);
  return out;
}

// Projector onto the Bell word L, pair k living on qubits (k, n+k) of the
// 2n-qubit register with qubit 1 as the most significant bit.
Eigen::MatrixXcd bell_word_projector(const std::vector<BellLabel>& labels) {
  const int n = static_cast<int>(labels.size());
  const Eigen::Index dim = Eigen::Index(1) << (2 * n);
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(dim, dim);
  for (int k = 1; k <= n; ++k) {
    const Eigen::Vector4cd v = bell_vector(labels[std::size_t(k - 1)]);
    const Eigen::Matrix4cd p4 = v * v.adjoint();
    const int shift_hi = 2 * n - k;       // bit of qubit k
    const int shift_lo = n - k;           // bit of qubit n + k
    Eigen::MatrixXcd factor = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const Eigen::Index rest_i = i & ~((Eigen::Index(1) << shift_hi) | (Eigen::Index(1) << shift_lo));
        const Eigen::Index rest_j = j & ~((Eigen::Index(1) << shift_hi) | (Eigen::Index(1) << shift_lo));
        if (rest_i != rest_j) continue;
        const int ai = int(((i >> shift_hi) & 1) * 2 + ((i >> shift_lo) & 1));
        const int aj = int(((j >> shift_hi) & 1) * 2 + ((j >> shift_lo) & 1));
        factor(i, j) = p4(ai, aj);
      }
    }
    proj = proj * factor;
  }
  return proj;
}

std::vector<BellLabel> decode_word(std::size_t w, int n) {
  std::vector<BellLabel> labels(static_cast<std::size_t>(n));
  for (int k = n; k >= 1; --k) {
    labels[std::size_t(k - 1)] = static_cast<BellLabel>(w & 3);
    w >>= 2;
  }
  return labels;
}

std::vector<PauliString> all_words(int n) {
  std::vector<PauliString> out;
  for (std::uint64_t c = 0; c < (std::uint64_t(1) << (2 * n)); ++c)
    out.push_back(PauliString::from_code(c, n));
  return out;
}

double sign_product(const PauliString& p, const std::vector<BellLabel>& labels) {
  int prod = 1;
  for (int k = 1; k <= p.n(); ++k) {
    if (p.letter(k) == PauliLetter::I) continue;
    prod *= bell_sign(p.letter(k), labels[std::size_t(k - 1)]);
  }
  return prod;
}

}  // namespace

TEST_CASE("Bell vectors are an orthonormal eigenbasis with the tabulated signs") {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const std::complex<double> ip = bell_vector(kLabels[a]).adjoint() * bell_vector(kLabels[b]);
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-14);
    }
  }
  // Re-derive every entry of the sign table from the matrix action of
  // sigma x sigma on the labelled vector.
  const PauliLetter letters[4] = {PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z};
  for (PauliLetter sigma : letters) {
    const Eigen::Matrix2cd m = letter_matrix(sigma);
    Eigen::Matrix4cd mm;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) mm.block<2, 2>(2 * i, 2 * j) = m(i, j) * m;
    for (BellLabel l : kLabels) {
      const Eigen::Vector4cd v = bell_vector(l);
      const Eigen::Vector4cd expect = double(bell_sign(sigma, l)) * v;
      CHECK((mm * v - expect).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("joint distribution matches a two-copy projector computation") {
  Rng rng(41);
  std::vector<DensityMatrix> states;
  states.push_back(haar_random_pure(1, rng));
  states.push_back(random_mixed(1, 2, rng));
  states.push_back(ghz(2, +1));
  states.push_back(haar_random_pure(2, rng));
  states.push_back(random_mixed(2, 3, rng));
  states.push_back(basis_state("01"));
  for (const DensityMatrix& rho : states) {
    const int n = rho.num_qubits();
    const BellSampler sampler(rho);
    const std::vector<double>& joint = sampler.joint_distribution();
    REQUIRE(joint.size() == (std::size_t(1) << (2 * n)));
    const Eigen::MatrixXcd pair_state = two_copies(rho);
    double total = 0.0;
    for (std::size_t w = 0; w < joint.size(); ++w) {
      const Eigen::MatrixXcd proj = bell_word_projector(decode_word(w, n));
      const double expect = (proj * pair_state).trace().real();
      CHECK(joint[w] == doctest::Approx(expect).epsilon(1e-10));
      CHECK(joint[w] > -1e-12);
      total += joint[w];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("joint distribution matches the Pauli sign formula") {
  Rng rng(43);
  for (int n = 2; n <= 3; ++n) {
    const DensityMatrix rho = random_mixed(n, 1 << (n - 1), rng);
    const BellSampler sampler(rho);
    const std::vector<double>& joint = sampler.joint_distribution();
    const double scale = std::pow(0.25, n);
    for (std::size_t w = 0; w < joint.size(); ++w) {
      const std::vector<BellLabel> labels = decode_word(w, n);
      double acc = 0.0;
      for (const PauliString& p : all_words(n)) {
        const double mean = pauli_expectation(rho.op(), p);
        acc += sign_product(p, labels) * mean * mean;
      }
      CHECK(joint[w] == doctest::Approx(scale * acc).epsilon(1e-10));
    }
  }
}

TEST_CASE("magnitude square estimator is unbiased under the exact joint law") {
  Rng rng(47);
  std::vector<DensityMatrix> states;
  states.push_back(ghz(2, +1));
  states.push_back(haar_random_pure(2, rng));
  states.push_back(random_mixed(2, 4, rng));
  for (const DensityMatrix& rho : states) {
    const BellSampler sampler(rho);
    const std::vector<double>& joint = sampler.joint_distribution();
    for (const PauliString& p : all_words(2)) {
      double mean = 0.0;
      for (std::size_t w = 0; w < joint.size(); ++w)
        mean += joint[w] * sign_product(p, decode_word(w, 2));
      const double target = pauli_expectation(rho.op(), p);
      CHECK(std::abs(mean - target * target) < 1e-10);
    }
  }
}

TEST_CASE("sampled records follow the joint law") {
  Rng rng(53);
  const DensityMatrix rho = haar_random_pure(2, rng);
  const BellSampler sampler(rho);
  const std::vector<double>& joint = sampler.joint_distribution();
  const std::int64_t draws = 200000;
  std::vector<double> seen(joint.size(), 0.0);
  for (std::int64_t i = 0; i < draws; ++i) {
    const BellOutcomeRecord rec = sampler.sample(rng);
    std::size_t w = 0;
    for (int k = 1; k <= 2; ++k) w = w * 4 + std::size_t(rec.labels[std::size_t(k - 1)]);
    seen[w] += 1.0;
  }
  for (std::size_t w = 0; w < joint.size(); ++w) {
    const double p = std::max(joint[w], 0.0);
    const double sigma = std::sqrt(std::max(p * (1.0 - p) / double(draws), 1e-12));
    CHECK(std::abs(seen[w] / double(draws) - p) < 5.0 * sigma + 1e-6);
  }
}

TEST_CASE("GHZ pair records have deterministic parity products") {
  // <XX> = <ZZ> = 1 and <YY> = -1, so the squared means are all 1 and every
  // record must carry product +1 for each of the three words.
  Rng rng(59);
  const DensityMatrix rho = ghz(2, +1);
  const auto records = sample_bell_outcomes(rho, 500, rng);
  REQUIRE(records.size() == 500);
  for (const char* word : {"XX", "YY", "ZZ"}) {
    const PauliString p = PauliString::parse(word);
    for (const auto& rec : records) CHECK(sign_product(p, rec.labels) == 1.0);
    CHECK(magnitude_sq_estimate(records, p) == doctest::Approx(1.0));
    CHECK(magnitude_estimate(records, p) == doctest::Approx(1.0));
  }
}

TEST_CASE("magnitude estimator hand cases, clamping, and input checks") {
  BellOutcomeRecord plus{{BellLabel::PsiPlus}};
  BellOutcomeRecord minus{{BellLabel::PsiMinus}};
  const PauliString x = PauliString::parse("X");
  const PauliString z = PauliString::parse("Z");
  // sign(X, P+) = +1, sign(X, P-) = -1; sign(Z, .) = +1 on both.
  CHECK(magnitude_sq_estimate({plus, minus}, x) == doctest::Approx(0.0));
  CHECK(magnitude_sq_estimate({plus, minus}, z) == doctest::Approx(1.0));
  // A negative running mean is clamped before the square root.
  CHECK(magnitude_sq_estimate({minus, minus}, x) == doctest::Approx(-1.0));
  CHECK(magnitude_estimate({minus, minus}, x) == 0.0);
  CHECK_THROWS_AS(magnitude_sq_estimate({}, x), std::invalid_argument);
  CHECK_THROWS_AS(magnitude_sq_estimate({plus}, PauliString::parse("XZ")), std::invalid_argument);
}

TEST_CASE("sign estimate follows the majority of single-copy draws") {
  Rng rng(61);
  // Deterministic corners: success probability 1 and 0.
  const SignEstimate up = sign_estimate(basis_state("0"), PauliString::parse("Z"), 7, rng);
  CHECK(up.sign == +1);
  CHECK(up.n2_used == 7);
  const SignEstimate down = sign_estimate(basis_state("1"), PauliString::parse("Z"), 8, rng);
  CHECK(down.sign == -1);
  CHECK(down.n2_used == 9);  // even request raised to odd
  const SignEstimate flat = sign_estimate(ghz(2, -1), PauliString::parse("XX"), 101, rng);
  CHECK(flat.sign == -1);
  // Biased but not deterministic: diag(0.9, 0.1) has <Z> = 0.8.
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 0.9;
  d(1, 1) = 0.1;
  const DensityMatrix rho(QubitSet::range(1), d);
  int agree = 0;
  for (int rep = 0; rep < 50; ++rep)
    if (sign_estimate(rho, PauliString::parse("Z"), 101, rng).sign == +1) ++agree;
  CHECK(agree == 50);
  CHECK_THROWS_AS(sign_estimate(rho, PauliString::parse("Z"), 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sign_estimate(rho, PauliString::parse("ZZ"), 3, rng), std::invalid_argument);
}

TEST_CASE("copy budget pins, parity, monotonicity, and validation") {
  const BellBudget a = required_copies_bell(6, 0.1, 0.5);
  CHECK(a.n1 == 613);
  CHECK(a.n2 == 155);
  CHECK(a.total_copies == 1381);
  const BellBudget b = required_copies_bell(15, 0.1, 0.5);
  CHECK(b.n1 == 731);
  CHECK(b.n2 == 183);
  CHECK(b.total_copies == 1645);
  const BellBudget c = required_copies_bell(66, 0.1, 0.35);
  CHECK(c.n1 == 3831);
  CHECK(c.n2 == 471);
  CHECK(c.total_copies == 8133);
  const BellBudget d = required_copies_bell(66, 0.1, 0.25);
  CHECK(d.n1 == 14716);
  CHECK(d.n2 == 921);
  CHECK(d.total_copies == 30353);

  std::int64_t last1 = 0, last2 = 0;
  for (double eps : {0.9, 0.6, 0.4, 0.2, 0.1}) {
    const BellBudget e = required_copies_bell(10, 0.05, eps);
    CHECK(e.n2 % 2 == 1);
    CHECK(e.n1 >= last1);
    CHECK(e.n2 >= last2);
    CHECK(e.total_copies == 2 * e.n1 + e.n2);
    last1 = e.n1;
    last2 = e.n2;
  }
  CHECK(required_copies_bell(20, 0.1, 0.5).n1 > required_copies_bell(10, 0.1, 0.5).n1);

  CHECK_THROWS_AS(required_copies_bell(0, 0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(required_copies_bell(5, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(required_copies_bell(5, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(required_copies_bell(5, 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(required_copies_bell(5, 0.1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(required_copies_bell(5, 0.1, 0.5, {0.0, 8.0}), std::invalid_argument);
  CHECK_THROWS_AS(required_copies_bell(5, 0.1, 1e-6), std::overflow_error);
}

TEST_CASE("full protocol reconstructs GHZ pairs including the sign") {
  for (int sign : {+1, -1}) {
    const DensityMatrix rho = ghz(2, sign);
    Rng rng(sign > 0 ? 67 : 71);
    BellBudget budget;
    const HermitianOperator est = bell_state_estimate(rho, 2, 0.5, 0.1, rng, {}, &budget);
    // 15 words of weight <= 2 on two qubits.
    const BellBudget expect = required_copies_bell(15, 0.1, 0.5);
    CHECK(budget.n1 == expect.n1);
    CHECK(budget.n2 == expect.n2);
    // The three weight-two correlators have |mean| = 1, so their magnitude
    // estimates are exact and the majority votes are deterministic; every
    // other word sits far below the 0.5 threshold at this sample size.
    CHECK(trace_norm(est - rho.op()) < 1e-10);
  }
  Rng rng(73);
  CHECK_THROWS_AS(bell_state_estimate(ghz(2, +1), 0, 0.5, 0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(bell_state_estimate(ghz(2, +1), 3, 0.5, 0.1, rng), std::invalid_argument);
}

TEST_CASE("record serialization round trips") {
  BellOutcomeRecord rec{{BellLabel::PsiPlus, BellLabel::PhiMinus, BellLabel::PsiMinus}};
  const std::string text = bell_record_to_string(rec);
  CHECK(text == "P+ F- P-");
  const BellOutcomeRecord back = bell_record_from_string(text);
  REQUIRE(back.n() == 3);
  for (int k = 0; k < 3; ++k) CHECK(back.labels[std::size_t(k)] == rec.labels[std::size_t(k)]);

  CHECK_THROWS_AS(bell_record_from_string("P+ Q-"), std::invalid_argument);
  CHECK_THROWS_AS(bell_record_from_string("   "), std::invalid_argument);
  CHECK_THROWS_AS(bell_record_to_string(BellOutcomeRecord{}), std::invalid_argument);

  Rng rng(79);
  const auto records = sample_bell_outcomes(ghz(3, +1), 25, rng);
  std::stringstream io;
  write_bell_records(io, records);
  io.seekg(0);
  const auto round = read_bell_records(io);
  REQUIRE(round.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    CHECK(bell_record_to_string(round[i]) == bell_record_to_string(records[i]));
}

TEST_CASE("sampler validates its input") {
  CHECK_THROWS_AS(BellSampler(ghz(7, +1)), std::invalid_argument);
  Rng rng(83);
  CHECK_THROWS_AS(sample_bell_outcomes(ghz(2, +1), -1, rng), std::invalid_argument);
  // Support away from {1..n} is rejected.
  const HermitianOperator moved = relabeled(ghz(2, +1).op(), QubitSet({2, 3}));
  CHECK_THROWS_AS(BellSampler(DensityMatrix(moved)), std::invalid_argument);
}
