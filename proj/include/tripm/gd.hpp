#pragma once

#include <vector>

#include "tripm/problem.hpp"
#include "tripm/types.hpp"

namespace tripm {

enum class GDOutcome { Converged, IterationLimit, LeftFeasibleRegion };

struct GDRecord {
  long k = 0;
  Vector x;
  double psi = 0;
  double grad_norm = 0;
  double alpha = 0;
  double ell1 = 0;  // local Lipschitz estimate (adaptive mode)
  double min_slack = 0;
};

struct GDTrace {
  std::vector<GDRecord> rows;
  GDOutcome outcome = GDOutcome::IterationLimit;
  long exit_k = 0;  // iteration index at exit (boundary crossing for LeftFeasibleRegion)
};

// ell1(x) = L1 (1 + 2||y||_1) + 4 L0^2 ||y||_2^2 / mu
double local_lipschitz(double L0, double L1, double mu, const Vector& y);

// x <- x - alpha * grad psi_mu(x); stops at the shared criterion
// ||grad psi_mu|| <= tau_l mu (1 + ||y||_1), at max_iters, or the first time an
// iterate leaves {a > 0}.
GDTrace fixed_step_gd(const Problem& p, double mu, double alpha, const Vector& x0,
                      long max_iters, double tau_l = 1.0);

struct AdaptiveGDResult {
  Vector x;
  Vector y;
  GDTrace trace;
};

// dx = -grad psi_mu(x), alpha = min{min_i a_i / (2 L0 ||dx||), 1/ell1(x)}.
AdaptiveGDResult adaptive_gd(const Problem& p, double mu, double tau_l,
                             const Vector& x0, long max_iters);

// 4 (psi0 - psi_star) (2 L0^2 tau^-2 mu^-3 + L0 tau^-1 mu^-2 + L1 tau^-2 mu^-2)
double gd_iteration_bound(double psi0, double psi_star, double mu, double tau_l,
                          double L0, double L1);

}  // namespace tripm
