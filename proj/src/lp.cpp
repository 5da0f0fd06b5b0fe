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

#include "locw1/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace locw1 {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Two-phase dense simplex for  max c.x  s.t.  A x <= b,  x >= 0  (b of any
// sign). Classic tableau formulation with (value, label) lexicographic
// pivoting; an iteration cap turns pathological cycling into an explicit
// failure instead of a hang.
struct MaxSimplex {
  int m, n;
  std::vector<int> N, B;
  std::vector<std::vector<double>> D;
  long iterations = 0;
  long cap;
  bool capped = false;

  MaxSimplex(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : m(int(b.size())), n(int(c.size())), N(n + 1), B(m),
        D(m + 2, std::vector<double>(n + 2)),
        cap(4000 + 200L * (m + n)) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) D[i][j] = a(i, j);
    for (int i = 0; i < m; ++i) {
      B[i] = n + i;
      D[i][n] = -1;
      D[i][n + 1] = b(i);
    }
    for (int j = 0; j < n; ++j) {
      N[j] = j;
      D[m][j] = -c(j);
    }
    N[n] = -1;
    D[m + 1][n] = 1;
  }

  void pivot(int r, int s) {
    double* a = D[r].data();
    double inv = 1 / a[s];
    for (int i = 0; i < m + 2; ++i)
      if (i != r && std::abs(D[i][s]) > kEps) {
        double* b = D[i].data();
        double inv2 = b[s] * inv;
        for (int j = 0; j < n + 2; ++j) b[j] -= a[j] * inv2;
        b[s] = a[s] * inv2;
      }
    for (int j = 0; j < n + 2; ++j)
      if (j != s) D[r][j] *= inv;
    for (int i = 0; i < m + 2; ++i)
      if (i != r) D[i][s] *= -inv;
    D[r][s] = inv;
    std::swap(B[r], N[s]);
  }

  bool simplex(int phase) {
    int x = m + phase - 1;
    for (;;) {
      if (++iterations > cap) {
        capped = true;
        return false;
      }
      int s = -1;
      for (int j = 0; j <= n; ++j) {
        if (N[j] == -phase) continue;
        if (s == -1 || std::make_pair(D[x][j], N[j]) < std::make_pair(D[x][s], N[s])) s = j;
      }
      if (D[x][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m; ++i) {
        if (D[i][s] <= kEps) continue;
        if (r == -1 || std::make_pair(D[i][n + 1] / D[i][s], B[i]) <
                           std::make_pair(D[r][n + 1] / D[r][s], B[r]))
          r = i;
      }
      if (r == -1) return false;  // unbounded in phase 1, infeasible signal in phase 2
      pivot(r, s);
    }
  }

  // Returns the optimum, +inf if unbounded, -inf if infeasible.
  double solve(Eigen::VectorXd& x) {
    int r = 0;
    for (int i = 1; i < m; ++i)
      if (D[i][n + 1] < D[r][n + 1]) r = i;
    if (D[r][n + 1] < -kEps) {
      pivot(r, n);
      if (!simplex(2) || D[m + 1][n + 1] < -kEps) return capped ? std::nan("") : -kInf;
      for (int i = 0; i < m; ++i)
        if (B[i] == -1) {
          int s = 0;
          for (int j = 1; j <= n; ++j)
            if (std::make_pair(D[i][j], N[j]) < std::make_pair(D[i][s], N[s])) s = j;
          pivot(i, s);
        }
    }
    bool ok = simplex(1);
    x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
      if (B[i] < n) x(B[i]) = D[i][n + 1];
    if (capped) return std::nan("");
    return ok ? D[m][n + 1] : kInf;
  }
};

struct MaxResult {
  enum Kind { OK, INFEASIBLE, UNBOUNDED, FAIL } kind = FAIL;
  double value = 0.0;
  Eigen::VectorXd x;
};

// max c.x s.t. A x <= b, x >= 0
MaxResult simplex_max(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                      const Eigen::VectorXd& c) {
  MaxResult res;
  const int n = int(c.size());
  if (n == 0) {
    res.kind = b.size() == 0 || b.minCoeff() >= -kEps ? MaxResult::OK : MaxResult::INFEASIBLE;
    res.value = 0.0;
    res.x = Eigen::VectorXd::Zero(0);
    return res;
  }
  if (b.size() == 0) {
    // No constraints besides x >= 0.
    res.x = Eigen::VectorXd::Zero(n);
    if (c.maxCoeff() > kEps) {
      res.kind = MaxResult::UNBOUNDED;
    } else {
      res.kind = MaxResult::OK;
      res.value = 0.0;
    }
    return res;
  }
  MaxSimplex solver(a, b, c);
  Eigen::VectorXd x;
  const double v = solver.solve(x);
  if (std::isnan(v)) {
    res.kind = MaxResult::FAIL;
  } else if (v == kInf) {
    res.kind = MaxResult::UNBOUNDED;
    res.x = x;
  } else if (v == -kInf) {
    res.kind = MaxResult::INFEASIBLE;
  } else {
    res.kind = MaxResult::OK;
    res.value = v;
    res.x = x;
  }
  return res;
}

}  // namespace

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    default: return "numerical-failure";
  }
}

LpSolution lp_solve(const LinearProgram& lp) {
  const int m = int(lp.h.size());
  const int n = int(lp.c.size());
  if (lp.g.rows() != m || lp.g.cols() != n)
    throw std::invalid_argument("lp_solve: inconsistent dimensions");

  LpSolution sol;

  // Primal: min c.x, G x >= h  ==  -(max (-c).x, (-G) x <= -h).
  const MaxResult primal = simplex_max(-lp.g, -lp.h, -lp.c);
  if (primal.kind == MaxResult::INFEASIBLE) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  if (primal.kind == MaxResult::FAIL) {
    sol.status = LpStatus::NumericalFailure;
    return sol;
  }
  if (primal.kind == MaxResult::UNBOUNDED) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.value = -primal.value;
  sol.x = primal.x;

  // Feasibility check of the returned point.
  if (m > 0) {
    const double feas_tol = 1e-6 * std::max(1.0, lp.h.cwiseAbs().maxCoeff());
    const double viol = (lp.h - lp.g * sol.x).maxCoeff();
    if (viol > feas_tol || (n > 0 && sol.x.minCoeff() < -feas_tol)) {
      sol.status = LpStatus::NumericalFailure;
      return sol;
    }
  }

  // Dual: max h.y s.t. G^T y <= c, y >= 0, solved on its own as the
  // certificate.
  const MaxResult dual = simplex_max(lp.g.transpose(), lp.c, lp.h);
  if (dual.kind != MaxResult::OK) {
    // A bounded feasible primal must have a bounded feasible dual.
    sol.status = LpStatus::NumericalFailure;
    return sol;
  }
  sol.dual_value = dual.value;
  sol.y = dual.x;
  sol.gap = std::abs(sol.value - sol.dual_value);
  sol.status = sol.gap <= kLpGapTolerance * std::max(1.0, std::abs(sol.value))
                   ? LpStatus::Optimal
                   : LpStatus::NumericalFailure;
  return sol;
}

}  // namespace locw1
