#pragma once

#include <vector>

#include "tripm/ipm.hpp"
#include "tripm/problem.hpp"
#include "tripm/types.hpp"

namespace tripm {

struct AnnealConfig {
  double mu0 = 0;   // initial barrier parameter
  double eps = 0;   // target optimality
  double R = 0;     // bound on the feasible-region diameter
  double tau_l = 0; // fixed across the schedule
  long max_outer = 64;
  long inner_max_iters = 1000000;
  double zeta = 0;  // optional dual bound (Assumption-style); 0 = unknown

  void validate() const;
};

struct OuterRecord {
  int j = 0;
  double mu = 0;
  long inner_iters = 0;
  double f = 0;
  double lag_norm = 0;
  double comp_max = 0;  // max_i |a_i y_i - mu|
  double y_norm1 = 0;
  bool dual_bound_ok = true;  // ||y||_1 + 1 <= zeta when zeta was supplied
};

struct AnnealResult {
  bool converged = false;
  Vector x;
  Vector y;  // duals from the final inner solve
  int terminating_j = -1;
  std::vector<OuterRecord> outer;
  std::vector<IterateRecord> last_inner_trace;
};

// Outer loop: inner trust_ipm in Convex mode with per-mu tau_c/eta, mu halved
// (bit-exact) until 2 mu m <= eps.
AnnealResult annealed_ipm(const Problem& p, const AnnealConfig& cfg, const Vector& x0);

// ||grad_x L(x,y)|| R + sum_i (a_i(x) y_i - mu); requires a_i y_i >= mu for all i
// (PremiseViolated otherwise). Also valid at mu = 0 for plain suboptimality.
double suboptimality_bound(const Problem& p, double R, double mu, const Vector& x,
                           const Vector& y);

// 1 + (3 m mu + 2 L0 R) / gamma
double slater_dual_bound(int m, double mu, double L0, double R, double gamma);

// premise of the Slater bound: mu <= gamma / (2 tau_l R)
bool slater_mu_ok(double mu, double gamma, double tau_l, double R);

struct ConvexDefaults {
  double tau_l = 0;
  double mu0 = 0;
};

// tau_l = m / (R sqrt(zeta)); mu0 = min{L1 R^2 zeta / m^2, L1^4 m / (R L2^3 sqrt(zeta))}.
// Requires zeta > 1.
ConvexDefaults convex_defaults(int m, double R, double zeta, double L1, double L2);

}  // namespace tripm
