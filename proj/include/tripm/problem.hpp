#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tripm/types.hpp"

namespace tripm {

// Evaluable NLP: min f(x) s.t. a(x) >= 0, with user-supplied smoothness
// constants. Evaluators must be deterministic and total on {a(x) > 0}.
class Problem {
 public:
  Problem(int n, int m, LipschitzConstants lip) : n_(n), m_(m), lip_(lip) {
    if (n < 1 || m < 1) throw BadParams("problem dimensions must be positive");
  }
  virtual ~Problem() = default;

  int dim() const { return n_; }
  int num_constraints() const { return m_; }
  const LipschitzConstants& lip() const { return lip_; }

  virtual double f(const Vector& x) const = 0;
  virtual Vector grad_f(const Vector& x) const = 0;
  virtual Matrix hess_f(const Vector& x) const = 0;
  virtual Vector a(const Vector& x) const = 0;
  virtual Matrix jac_a(const Vector& x) const = 0;
  virtual Matrix hess_a(const Vector& x, int i) const = 0;

 private:
  int n_, m_;
  LipschitzConstants lip_;
};

using ProblemPtr = std::shared_ptr<const Problem>;

using ParamMap = std::map<std::string, double>;

// Registry: lp1d, box_qp_nonconvex, annulus, circle_lp_convex, infeasible_1d.
// Recognized params: optional L0/L1/L2 overrides. Unknown name -> UnknownProblem,
// unknown key -> BadParams.
ProblemPtr builtin_problem(const std::string& name, const ParamMap& params = {});
std::vector<std::string> builtin_problem_names();

struct DerivativeReport {
  double max_grad_err = 0;
  double max_jac_err = 0;
  double max_hess_err = 0;
  bool pass = false;
};

// Central finite differences with h = eps^(1/3) * (1 + ||x||_inf).
// Requires a(x) > 0 componentwise (BoundaryViolation otherwise).
DerivativeReport check_derivatives(const Problem& p, const Vector& x, double tol);

}  // namespace tripm
