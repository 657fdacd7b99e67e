#pragma once

#include <map>
#include <string>

#include "tripm/types.hpp"

namespace tripm {

struct TrustRegionSolution {
  Vector u;
  double delta = 0;        // multiplier, >= 0
  double model_value = 0;  // 1/2 u'Hu + g'u at the minimizer
  bool on_boundary = false;
  bool hard_case = false;
};

// Exact global solve of min_{||u|| <= r} 1/2 u'Hu + g'u.
// Eigendecomposition once, then safeguarded Newton/bisection on the secular
// equation; hard case handled by adding a minimal-eigenvector component.
TrustRegionSolution solve_trust_region(const Matrix& H, const Vector& g, double r,
                                       double tol = 1e-10);

// KKT residuals of a candidate solution: norm_excess, complementarity,
// stationarity, psd_violation, model_consistency. When the caller supplies the
// split H = H0 + A'A, adds split_bound_slack = max(0, ||Au||^2 - (-u'H0u - 2 model)).
std::map<std::string, double> verify_tr(const Matrix& H, const Vector& g, double r,
                                        const TrustRegionSolution& sol,
                                        const Matrix* H0 = nullptr,
                                        const Matrix* A = nullptr);

}  // namespace tripm
