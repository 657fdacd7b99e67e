#pragma once

#include <string>
#include <vector>

#include "tripm/barrier.hpp"
#include "tripm/problem.hpp"
#include "tripm/types.hpp"

namespace tripm {

struct IPMParams {
  double mu = 0;     // > 0
  double tau_l = 0;  // > 0
  double tau_c = 0;  // in (0,1)
  double eta_s = 0;  // in (0,1)
  double eta_x = 0;  // in (0,1)
  CurvatureMode mode = CurvatureMode::Nonconvex;
  long max_iters = 1000000;

  void validate() const;
};

struct EtaPair {
  double eta_s = 0;
  double eta_x = 0;
};

// Nonconvex: eta_s = (1/40)(tau_l^2 mu / L1)^(1/4), eta_x = eta_s / 2.
// Convex:    eta_x = (1/20)(tau_l^2 mu / L1)^(1/6), eta_s = (1/20)(...)^(1/3).
EtaPair eta_params(double mu, double tau_l, double L1, CurvatureMode mode);

struct SmallMuCheck {
  double tau_c = 0;
  std::vector<std::string> warnings;
};

// Nonconvex: tau_c = sqrt(tau_l^2 mu / L1), warn unless L2^2 mu / L1^3 <= 1.
// Convex:    tau_c = (tau_l^2 mu / L1)^(1/3), warn unless L2^3 mu / (L1^4 tau_l) <= 1.
// Also warns when tau_c leaves (0, 1].
SmallMuCheck validate_small_mu(double mu, double tau_l, double L1, double L2,
                               CurvatureMode mode);

// r = eta_x * sqrt(mu / (L1 (1 + ||y||_1)))
double trust_radius(double mu, double L1, const Vector& y, double eta_x);

// alpha = min{eta_s / ||S^-1 ds||, 1}; alpha = 1 when ds = 0.
double step_size(const Vector& slack, const Vector& ds, double eta_s);

struct Direction {
  Vector dx, ds, dy;
  double delta = 0;
  double model_at_dx = 0;
  double r = 0;
};

Direction compute_direction(const Problem& p, double mu, const Vector& x, double r);
Direction compute_direction(const BarrierEval& be, double r);

struct IterateRecord {
  long k = 0;
  double psi = 0;
  double grad_norm = 0;
  double min_slack = 0;
  double y_norm1 = 0;
  double r = 0;
  double alpha = 0;
  double delta = 0;
  double model = 0;    // M(dx)
  double s_ratio = 0;  // ||S^-1 ds||_2
  bool fj1 = false;    // at the candidate (x+, y+)
  bool fj2 = false;
  // extra diagnostics (not part of the canonical CSV schema)
  Vector x;
  double dx_norm = 0;
  double min_eig = 0;          // lambda_min of barrier Hessian at the candidate
  double newton_residual = 0;  // max block residual of the perturbed Newton system
  double kappa = 0;            // alpha*s_ratio + L1 ||alpha dx||^2 ||y||_2 / mu
  double min_slack_ratio = 0;  // min_i a_i(x+)/a_i(x)
  double max_slack_ratio = 0;
};

enum class IPMStatus { Converged, IterationLimit };

struct IPMResult {
  IPMStatus status = IPMStatus::IterationLimit;
  Vector x;  // terminal point (candidate on convergence)
  Vector y;
  Certificate certificate;  // valid when status == Converged
  std::vector<IterateRecord> trace;
};

// Adaptive trust-region barrier loop; terminates at a candidate satisfying
// FJ1 (and FJ2 in Nonconvex mode). The returned certificate is re-verified
// against fj_residuals before being returned.
IPMResult trust_ipm(const Problem& p, const IPMParams& params, const Vector& x0);

// 2 + 2 (psi0 - psi_star) / ((7 mu / 48000) (tau_l^2 mu / L1)^(3/4))
double nonconvex_iteration_bound(double psi0, double psi_star, double mu,
                                 double tau_l, double L1);

}  // namespace tripm
