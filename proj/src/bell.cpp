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

#include "locw1/bell.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace locw1 {

namespace {

// Rows I, X, Y, Z; columns PsiPlus, PsiMinus, PhiPlus, PhiMinus.
constexpr int kSignTable[4][4] = {
    {+1, +1, +1, +1},
    {+1, -1, +1, -1},
    {-1, +1, +1, -1},
    {+1, +1, -1, -1},
};

}  // namespace

char const* bell_label_token(BellLabel l) {
  switch (l) {
    case BellLabel::PsiPlus: return "P+";
    case BellLabel::PsiMinus: return "P-";
    case BellLabel::PhiPlus: return "F+";
    default: return "F-";
  }
}

int bell_sign(PauliLetter sigma, BellLabel label) {
  return kSignTable[static_cast<int>(sigma)][static_cast<int>(label)];
}

Eigen::Vector4cd bell_vector(BellLabel label) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (label) {
    case BellLabel::PsiPlus: return {r, 0.0, 0.0, r};
    case BellLabel::PsiMinus: return {r, 0.0, 0.0, -r};
    case BellLabel::PhiPlus: return {0.0, r, r, 0.0};
    default: return {0.0, r, -r, 0.0};
  }
}

BellSampler::BellSampler(const DensityMatrix& rho) : n_(rho.num_qubits()) {
  if (n_ > kBellSamplerMaxQubits)
    throw std::invalid_argument("BellSampler: more than " +
                                std::to_string(kBellSamplerMaxQubits) + " qubits");
  if (!(rho.support() == QubitSet::range(n_)))
    throw std::invalid_argument("BellSampler: state support must be {1..n}");

  const PauliCoefficients coeffs = pauli_coefficients(rho.op());

  prefix_.resize(std::size_t(n_));
  for (int j = 1; j <= n_; ++j) {
    const std::size_t dim = std::size_t(1) << (2 * j);
    std::vector<double> table(dim);
    // Start from <P' x I>^2 for the length-j prefix words; words with a
    // non-identity tail integrate out of the marginal because every non-I
    // sign column sums to zero.
    for (std::size_t code = 0; code < dim; ++code) {
      const double c = coeffs.values[code << (2 * (n_ - j))];
      table[code] = c * c;
    }
    // One sign transform per pair axis: out[l] = sum_p sign[p][l] in[p].
    for (int axis = 0; axis < j; ++axis) {
      const std::size_t stride = std::size_t(1) << (2 * (j - 1 - axis));
      std::vector<double> next(dim, 0.0);
      for (std::size_t base = 0; base < dim; ++base) {
        const std::size_t digit = (base / stride) & 3;
        if (digit != 0) continue;  // visit each aligned group once
        double in[4];
        for (std::size_t p = 0; p < 4; ++p) in[p] = table[base + p * stride];
        for (std::size_t l = 0; l < 4; ++l) {
          double acc = 0.0;
          for (std::size_t p = 0; p < 4; ++p) acc += kSignTable[p][l] * in[p];
          next[base + l * stride] = acc;
        }
      }
      table = std::move(next);
    }
    const double scale = std::pow(0.25, j);
    for (double& v : table) v *= scale;
    prefix_[std::size_t(j - 1)] = std::move(table);
  }
}

BellOutcomeRecord BellSampler::sample(Rng& rng) const {
  BellOutcomeRecord rec;
  rec.labels.resize(std::size_t(n_));
  std::size_t word = 0;
  for (int j = 1; j <= n_; ++j) {
    const std::vector<double>& table = prefix_[std::size_t(j - 1)];
    double probs[4];
    double total = 0.0;
    for (std::size_t l = 0; l < 4; ++l) {
      probs[l] = std::max(table[word * 4 + l], 0.0);
      total += probs[l];
    }
    std::size_t pick = 3;
    if (total > 0.0) {
      double u = rng.uniform() * total;
      for (std::size_t l = 0; l < 4; ++l) {
        if (u < probs[l] || l == 3) {
          pick = l;
          break;
        }
        u -= probs[l];
      }
    } else {
      pick = rng.uniform_int(4);  // numerically dead branch
    }
    rec.labels[std::size_t(j - 1)] = static_cast<BellLabel>(pick);
    word = word * 4 + pick;
  }
  return rec;
}

std::vector<BellOutcomeRecord> sample_bell_outcomes(const DensityMatrix& rho,
                                                    std::int64_t count, Rng& rng) {
  if (count < 0) throw std::invalid_argument("sample_bell_outcomes: negative count");
  const BellSampler sampler(rho);
  std::vector<BellOutcomeRecord> out;
  out.reserve(std::size_t(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(sampler.sample(rng));
  return out;
}

double magnitude_sq_estimate(const std::vector<BellOutcomeRecord>& records,
                             const PauliString& p) {
  if (records.empty()) throw std::invalid_argument("magnitude_sq_estimate: no records");
  double acc = 0.0;
  for (const auto& rec : records) {
    if (rec.n() != p.n())
      throw std::invalid_argument("magnitude_sq_estimate: record size does not match word");
    int prod = 1;
    for (int k = 1; k <= p.n(); ++k) {
      const PauliLetter l = p.letter(k);
      if (l == PauliLetter::I) continue;
      prod *= bell_sign(l, rec.labels[std::size_t(k - 1)]);
    }
    acc += prod;
  }
  return acc / static_cast<double>(records.size());
}

double magnitude_estimate(const std::vector<BellOutcomeRecord>& records, const PauliString& p) {
  return std::sqrt(std::max(magnitude_sq_estimate(records, p), 0.0));
}

SignEstimate sign_estimate(const DensityMatrix& rho, const PauliString& p, std::int64_t n2,
                           Rng& rng) {
  if (n2 < 1) throw std::invalid_argument("sign_estimate: n2 must be >= 1");
  if (p.n() != rho.num_qubits())
    throw std::invalid_argument("sign_estimate: word length does not match state");
  SignEstimate est;
  est.n2_used = (n2 % 2 == 0) ? n2 + 1 : n2;
  const double mean = pauli_expectation(rho.op(), p);
  const double success = std::min(std::max(0.5 * (1.0 + mean), 0.0), 1.0);
  std::int64_t ups = 0;
  for (std::int64_t i = 0; i < est.n2_used; ++i)
    if (rng.uniform() < success) ++ups;
  est.sign = (2 * ups > est.n2_used) ? +1 : -1;
  return est;
}

BellBudget required_copies_bell(std::int64_t m_targets, double delta, double epsilon,
                                const BellCalibration& calib) {
  if (m_targets < 1) throw std::invalid_argument("required_copies_bell: M must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("required_copies_bell: delta must lie in (0,1)");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("required_copies_bell: epsilon must lie in (0,1]");
  if (!(calib.c1 > 0.0 && calib.c2 > 0.0))
    throw std::invalid_argument("required_copies_bell: calibration constants must be positive");
  const double log_term = std::log(2.0 * static_cast<double>(m_targets) / delta);
  const double raw1 = calib.c1 * log_term / std::pow(epsilon, 4);
  const double raw2 = calib.c2 * log_term / (epsilon * epsilon);
  if (raw1 > 4.0e18 || raw2 > 4.0e18)
    throw std::overflow_error("required_copies_bell: overflow");
  BellBudget b;
  b.n1 = static_cast<std::int64_t>(std::ceil(raw1));
  b.n2 = static_cast<std::int64_t>(std::ceil(raw2));
  if (b.n2 % 2 == 0) ++b.n2;
  b.total_copies = 2 * b.n1 + b.n2;
  return b;
}

HermitianOperator bell_state_estimate(const DensityMatrix& rho, int k_cut, double epsilon,
                                      double delta, Rng& rng, const BellCalibration& calib,
                                      BellBudget* budget_out) {
  const int n = rho.num_qubits();
  if (k_cut < 1 || k_cut > n)
    throw std::invalid_argument("bell_state_estimate: k_cut out of range");
  const std::int64_t m_targets = pauli_count_up_to_weight(n, k_cut);
  const BellBudget budget = required_copies_bell(m_targets, delta, epsilon, calib);
  if (budget_out) *budget_out = budget;

  const BellSampler sampler(rho);
  std::vector<BellOutcomeRecord> records;
  records.reserve(std::size_t(budget.n1));
  for (std::int64_t i = 0; i < budget.n1; ++i) records.push_back(sampler.sample(rng));

  PauliCoefficients est;
  est.n = n;
  est.values.assign(std::size_t(1) << (2 * n), 0.0);
  est.values[0] = 1.0;
  for (std::uint64_t code : pauli_codes_up_to_weight(n, k_cut)) {
    const PauliString word = PauliString::from_code(code, n);
    const double mag = magnitude_estimate(records, word);
    if (mag > epsilon) {
      const SignEstimate se = sign_estimate(rho, word, budget.n2, rng);
      est.values[code] = se.sign * mag;
    }
  }
  return pauli_reconstruct(est);
}

std::string bell_record_to_string(const BellOutcomeRecord& r) {
  if (r.labels.empty()) throw std::invalid_argument("bell_record_to_string: empty record");
  std::string out;
  for (int k = 0; k < r.n(); ++k) {
    if (k) out.push_back(' ');
    out += bell_label_token(r.labels[std::size_t(k)]);
  }
  return out;
}

BellOutcomeRecord bell_record_from_string(std::string_view line) {
  BellOutcomeRecord rec;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    if (tok == "P+")
      rec.labels.push_back(BellLabel::PsiPlus);
    else if (tok == "P-")
      rec.labels.push_back(BellLabel::PsiMinus);
    else if (tok == "F+")
      rec.labels.push_back(BellLabel::PhiPlus);
    else if (tok == "F-")
      rec.labels.push_back(BellLabel::PhiMinus);
    else
      throw std::invalid_argument("bell_record_from_string: bad token '" + tok + "'");
  }
  if (rec.labels.empty()) throw std::invalid_argument("bell_record_from_string: empty line");
  return rec;
}

void write_bell_records(std::ostream& out, const std::vector<BellOutcomeRecord>& records) {
  for (const auto& r : records) out << bell_record_to_string(r) << '\n';
}

std::vector<BellOutcomeRecord> read_bell_records(std::istream& in) {
  std::vector<BellOutcomeRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(bell_record_from_string(line));
  }
  return out;
}

}  // namespace locw1
