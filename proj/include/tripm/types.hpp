#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace tripm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundaryViolation : SolverError {
  using SolverError::SolverError;
};
struct UnknownProblem : SolverError {
  using SolverError::SolverError;
};
struct BadParams : SolverError {
  using SolverError::SolverError;
};
struct NonFiniteInput : SolverError {
  using SolverError::SolverError;
};
struct NoConvergence : SolverError {
  using SolverError::SolverError;
};
struct PremiseViolated : SolverError {
  using SolverError::SolverError;
};
struct CertificateVerificationFailed : SolverError {
  using SolverError::SolverError;
};

// Global smoothness constants: L0 bounds gradients, L1 Hessian norms,
// L2 Hessian Lipschitz moduli, over the region of interest.
struct LipschitzConstants {
  double L0, L1, L2;

  LipschitzConstants(double l0, double l1, double l2) : L0(l0), L1(l1), L2(l2) {
    if (!(L0 > 0.0) || !(L1 > 0.0) || !(L2 > 0.0))
      throw BadParams("LipschitzConstants must be strictly positive");
  }
};

enum class CurvatureMode { Nonconvex, Convex };

}  // namespace tripm
