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
#include <complex>
#include <set>
#include <vector>

#include "doctest.h"
#include "locw1/pauli.hpp"
#include "locw1/rng.hpp"

using namespace locw1;
using cd = std::complex<double>;

namespace {

Eigen::Matrix2cd letter_matrix(PauliLetter p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case PauliLetter::I: m << 1, 0, 0, 1; break;
    case PauliLetter::X: m << 0, 1, 1, 0; break;
    case PauliLetter::Y: m << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0); break;
    case PauliLetter::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Reference construction by plain Kronecker products, qubit 1 leftmost.
Eigen::MatrixXcd kron_reference(const PauliString& p) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 1; q <= p.n(); ++q) {
    const Eigen::Matrix2cd f = letter_matrix(p.letter(q));
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * 2, j * 2, 2, 2) = out(i, j) * f;
    out.swap(next);
  }
  return out;
}

Eigen::MatrixXcd random_hermitian(int dim, Rng& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  return 0.5 * (g + g.adjoint().eval());
}

}  // namespace

TEST_CASE("parse, print, code round-trips") {
  const PauliString p = PauliString::parse("XIZY");
  CHECK(p.n() == 4);
  CHECK(p.str() == "XIZY");
  CHECK(p.letter(1) == PauliLetter::X);
  CHECK(p.letter(2) == PauliLetter::I);
  CHECK(p.letter(3) == PauliLetter::Z);
  CHECK(p.letter(4) == PauliLetter::Y);
  CHECK(p.weight() == 3);
  CHECK(p.support() == QubitSet({1, 3, 4}));
  // Base-4 big-endian: X=1,I=0,Z=3,Y=2 -> 1*64 + 0*16 + 3*4 + 2.
  CHECK(p.code() == 78);
  CHECK(PauliString::from_code(78, 4) == p);
  CHECK(PauliString::identity(3).code() == 0);
  CHECK(PauliString::identity(3).weight() == 0);
  CHECK_THROWS_AS(PauliString::parse("XQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_code(16, 2), std::invalid_argument);
}

TEST_CASE("pauli matrices match Kronecker references") {
  Rng rng(31);
  for (int n = 1; n <= 3; ++n) {
    const std::uint64_t total = std::uint64_t(1) << (2 * n);
    for (std::uint64_t code = 0; code < total; ++code) {
      const PauliString p = PauliString::from_code(code, n);
      const Eigen::MatrixXcd ref = kron_reference(p);
      CHECK((pauli_matrix(p).matrix() - ref).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("pauli expectation equals the dense trace") {
  Rng rng(37);
  for (int n = 1; n <= 3; ++n) {
    const HermitianOperator a(QubitSet::range(n), random_hermitian(1 << n, rng));
    const std::uint64_t total = std::uint64_t(1) << (2 * n);
    for (std::uint64_t code = 0; code < total; ++code) {
      const PauliString p = PauliString::from_code(code, n);
      const cd dense = (kron_reference(p) * a.matrix()).trace();
      CHECK(std::abs(dense.imag()) < 1e-12);
      CHECK(pauli_expectation(a, p) == doctest::Approx(dense.real()).epsilon(1e-12));
    }
  }
}

TEST_CASE("coefficient table inverts through reconstruction") {
  Rng rng(41);
  for (int n = 1; n <= 3; ++n) {
    const HermitianOperator a(QubitSet::range(n), random_hermitian(1 << n, rng));
    const PauliCoefficients coeffs = pauli_coefficients(a);
    REQUIRE(coeffs.values.size() == (std::size_t(1) << (2 * n)));
    const HermitianOperator back = pauli_reconstruct(coeffs);
    CHECK((back.matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("pauli word counts match the binomial sum") {
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      // Direct evaluation with exact integer binomials.
      std::int64_t want = 0;
      for (int i = 1; i <= k; ++i) {
        std::int64_t binom = 1;
        for (int j = 0; j < i; ++j) binom = binom * (n - j) / (j + 1);
        std::int64_t p3 = 1;
        for (int j = 0; j < i; ++j) p3 *= 3;
        want += binom * p3;
      }
      CHECK(pauli_count_up_to_weight(n, k) == want);
    }
  }
  CHECK(pauli_count_up_to_weight(4, 2) == 66);
  CHECK(pauli_count_up_to_weight(4, 4) == 255);
  CHECK(pauli_count_up_to_weight(5, 5) == 1023);
  CHECK_THROWS_AS(pauli_count_up_to_weight(40, 40), std::overflow_error);
}

TEST_CASE("weight-limited code lists are sorted, unique, complete") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto codes = pauli_codes_up_to_weight(n, k);
      CHECK(std::int64_t(codes.size()) == pauli_count_up_to_weight(n, k));
      std::set<std::uint64_t> seen;
      for (std::uint64_t code : codes) {
        const PauliString p = PauliString::from_code(code, n);
        CHECK(p.weight() >= 1);
        CHECK(p.weight() <= k);
        seen.insert(code);
      }
      CHECK(seen.size() == codes.size());
      CHECK(std::is_sorted(codes.begin(), codes.end()));
      // Exhaustive cross-check against a brute filter.
      std::vector<std::uint64_t> brute;
      for (std::uint64_t c = 0; c < (std::uint64_t(1) << (2 * n)); ++c) {
        const int w = PauliString::from_code(c, n).weight();
        if (w >= 1 && w <= k) brute.push_back(c);
      }
      CHECK(brute == codes);
    }
  }
}

TEST_CASE("pauli strings are traceless except the identity") {
  for (std::uint64_t code = 0; code < 64; ++code) {
    const PauliString p = PauliString::from_code(code, 3);
    CHECK(pauli_matrix(p).trace() == doctest::Approx(code == 0 ? 8.0 : 0.0));
  }
}

TEST_CASE("orthogonality: Tr[P Q] = 2^n [P == Q]") {
  const int n = 2;
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b) {
      const double t = pauli_expectation(pauli_matrix(PauliString::from_code(a, n)),
                                         PauliString::from_code(b, n));
      CHECK(t == doctest::Approx(a == b ? 4.0 : 0.0).epsilon(1e-12));
    }
}
