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

#ifndef LOCW1_LP_HPP
#define LOCW1_LP_HPP

#include <Eigen/Dense>

namespace locw1 {

// Canonical form:  minimize c.x  subject to  G x >= h,  x >= 0.
struct LinearProgram {
  Eigen::MatrixXd g;  // rows = constraints
  Eigen::VectorXd h;
  Eigen::VectorXd c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* lp_status_name(LpStatus s);

// Solution with a duality certificate. `value` and `x` come from solving the
// primal with a two-phase dense simplex; `dual_value` and `y` from solving
// the dual program (max h.y, G^T y <= c, y >= 0) independently. Status is
// Optimal only when both solves agree within the gap tolerance and the
// primal point verifies feasible.
struct LpSolution {
  LpStatus status = LpStatus::NumericalFailure;
  double value = 0.0;
  Eigen::VectorXd x;
  double dual_value = 0.0;
  Eigen::VectorXd y;
  double gap = 0.0;  // |value - dual_value|
};

// Relative gap tolerance for the certificate: |p - d| <= tol * max(1, |p|).
inline constexpr double kLpGapTolerance = 1e-7;

LpSolution lp_solve(const LinearProgram& lp);

}  // namespace locw1

#endif
