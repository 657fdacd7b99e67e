#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "tripm/barrier.hpp"
#include "tripm/ipm.hpp"
#include "tripm/problem.hpp"
#include "tripm/types.hpp"

namespace tripm {

struct TwoPhaseConfig {
  double eps_opt = 0;
  double eps_inf = 0;
  long max_iters = 1000000;  // per phase

  // warnings for the advisory premises eps_opt <= sqrt(eps_inf), eps_inf <= L0/m
  std::vector<std::string> validate(const Problem& p) const;
};

// Variables (x, t); objective t; constraints (a(x) + t*1; t; eps_opt/2 + t0 - t).
class PhaseOneProblem : public Problem {
 public:
  PhaseOneProblem(ProblemPtr base, double eps_opt, double t0);

  double t0() const { return t0_; }
  const ProblemPtr& base() const { return base_; }

  double f(const Vector& z) const override;
  Vector grad_f(const Vector& z) const override;
  Matrix hess_f(const Vector& z) const override;
  Vector a(const Vector& z) const override;
  Matrix jac_a(const Vector& z) const override;
  Matrix hess_a(const Vector& z, int i) const override;

 private:
  ProblemPtr base_;
  double eps_opt_, t0_;
};

// t0 = eps_opt/2 + max{max_i(-a_i(x0)), 0}; start = (x0, t0), strictly feasible.
std::pair<std::shared_ptr<const PhaseOneProblem>, Vector> build_phase_one(
    ProblemPtr p, const Vector& x0, double eps_opt);

// Same problem with constraints shifted to a(x) + eps_opt * 1.
ProblemPtr build_phase_two(ProblemPtr p, double eps_opt);

enum class TwoPhaseStatus { Certified, IterationLimit };

struct TwoPhaseResult {
  TwoPhaseStatus status = TwoPhaseStatus::IterationLimit;
  Certificate certificate;  // valid when Certified; always re-verified
  bool phase_one_ran = false;
  std::vector<IterateRecord> phase1_trace, phase2_trace;
};

// Full pipeline: phase one from any start (skipped when t0 <= eps_opt/2),
// infeasibility detection, phase two, and certificate verification.
TwoPhaseResult two_phase_ipm(ProblemPtr p, const TwoPhaseConfig& cfg, const Vector& x0);

}  // namespace tripm
