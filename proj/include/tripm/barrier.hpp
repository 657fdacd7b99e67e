#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "tripm/problem.hpp"
#include "tripm/types.hpp"

namespace tripm {

// psi_mu(x) = f(x) - mu * sum_i log a_i(x) with derivatives, slacks and the
// primal-feasible duals y = mu * S^-1 * 1 at one point.
struct BarrierEval {
  Vector x;
  double mu = 0;
  double value = 0;
  Vector grad;
  Matrix hess;
  Vector slack;  // s = a(x), strictly positive
  Vector dual;   // y with y_i * s_i == mu exactly
  Matrix jac;    // jacobian of a at x
};

BarrierEval barrier_eval(const Problem& p, double mu, const Vector& x);

// M(u) = 1/2 u' hess u + grad' u
double model_value(const BarrierEval& be, const Vector& u);

struct FJResiduals {
  bool feasible_primal = false;  // a(x) > 0 and y > 0 componentwise
  double comp_err = 0;           // max_i |y_i a_i(x) - mu|
  double comp_bound = 0;         // tau_c * mu / 2
  double lag_norm = 0;           // ||grad f - jac' y||_2
  double lag_bound = 0;          // tau_l * mu * sqrt(||y||_1 + 1)
  double min_eig = 0;            // lambda_min of the barrier Hessian at x
  double eig_bound = 0;          // -sqrt(tau_l) * (1 + ||y||_1)
  bool fj1 = false;
  bool fj2 = false;
};

FJResiduals fj_residuals(const Problem& p, double mu, double tau_l, double tau_c,
                         const Vector& x, const Vector& y);

enum class CertKind { FritzJohn, KKT, Infeasible };

struct ResidualEntry {
  double value = 0;
  double bound = 0;
};

struct Certificate {
  CertKind kind = CertKind::FritzJohn;
  Vector x;
  std::optional<double> t;
  Vector y;
  std::map<std::string, ResidualEntry> residuals;
};

struct CheckFailure {
  std::string name;  // first violated inequality
  double value = 0;
  double bound = 0;
};

using CertOrFailure = std::variant<Certificate, CheckFailure>;

// Unscaled KKT: a >= -eps_opt, ||grad_x L|| <= eps_opt, y >= 0, a_i y_i <= eps_opt.
CertOrFailure kkt_residuals(const Problem& p, double eps_opt, const Vector& x,
                            const Vector& y);

// Infeasibility certificate: min_i a_i < -eps_opt/2, a + t >= 0,
// ||jac' y|| <= eps_inf, ||y||_1 = 1 (to 1e-12), y >= 0, (a_i+t) y_i <= eps_inf*eps_opt.
CertOrFailure inf_residuals(const Problem& p, double eps_opt, double eps_inf,
                            const Vector& x, double t, const Vector& y);

}  // namespace tripm
