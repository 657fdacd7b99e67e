#include "tripm/gd.hpp"

#include <cmath>

#include "tripm/barrier.hpp"

namespace tripm {

double local_lipschitz(double L0, double L1, double mu, const Vector& y) {
  if (!(L0 > 0.0) || L1 < 0.0 || !(mu > 0.0))
    throw BadParams("local_lipschitz: bad constants");
  if ((y.array() <= 0.0).any()) throw BadParams("local_lipschitz: y must be positive");
  return L1 * (1.0 + 2.0 * y.lpNorm<1>()) + 4.0 * L0 * L0 * y.squaredNorm() / mu;
}

GDTrace fixed_step_gd(const Problem& p, double mu, double alpha, const Vector& x0,
                      long max_iters, double tau_l) {
  if (!(alpha > 0.0)) throw BadParams("fixed_step_gd: alpha must be positive");
  if ((p.a(x0).array() <= 0.0).any())
    throw BoundaryViolation("fixed_step_gd: start must be strictly feasible");

  GDTrace trace;
  Vector x = x0;
  for (long k = 0; k < max_iters; ++k) {
    BarrierEval be = barrier_eval(p, mu, x);
    GDRecord rec;
    rec.k = k;
    rec.x = x;
    rec.psi = be.value;
    rec.grad_norm = be.grad.norm();
    rec.alpha = alpha;
    rec.min_slack = be.slack.minCoeff();
    trace.rows.push_back(rec);

    if (be.grad.norm() <= tau_l * mu * (1.0 + be.dual.lpNorm<1>())) {
      trace.outcome = GDOutcome::Converged;
      trace.exit_k = k;
      return trace;
    }

    Vector xn = x - alpha * be.grad;
    if ((p.a(xn).array() <= 0.0).any()) {
      trace.outcome = GDOutcome::LeftFeasibleRegion;
      trace.exit_k = k;
      return trace;
    }
    x = xn;
  }
  trace.outcome = GDOutcome::IterationLimit;
  trace.exit_k = max_iters;
  return trace;
}

AdaptiveGDResult adaptive_gd(const Problem& p, double mu, double tau_l,
                             const Vector& x0, long max_iters) {
  if (!(tau_l > 0.0)) throw BadParams("adaptive_gd: tau_l must be positive");
  if ((p.a(x0).array() <= 0.0).any())
    throw BoundaryViolation("adaptive_gd: start must be strictly feasible");

  const double L0 = p.lip().L0;
  const double L1 = p.lip().L1;
  AdaptiveGDResult out;
  Vector x = x0;
  for (long k = 0; k < max_iters; ++k) {
    BarrierEval be = barrier_eval(p, mu, x);
    double ell1 = local_lipschitz(L0, L1, mu, be.dual);
    Vector dx = -be.grad;
    double dn = dx.norm();
    double alpha =
        dn == 0.0 ? 1.0 / ell1
                  : std::min(be.slack.minCoeff() / (2.0 * L0 * dn), 1.0 / ell1);

    GDRecord rec;
    rec.k = k;
    rec.x = x;
    rec.psi = be.value;
    rec.grad_norm = dn;
    rec.alpha = alpha;
    rec.ell1 = ell1;
    rec.min_slack = be.slack.minCoeff();
    out.trace.rows.push_back(rec);

    if (dn <= tau_l * mu * (1.0 + be.dual.lpNorm<1>())) {
      out.trace.outcome = GDOutcome::Converged;
      out.trace.exit_k = k;
      out.x = x;
      out.y = be.dual;
      return out;
    }
    x += alpha * dx;
  }
  out.trace.outcome = GDOutcome::IterationLimit;
  out.trace.exit_k = max_iters;
  out.x = x;
  out.y = barrier_eval(p, mu, x).dual;
  return out;
}

double gd_iteration_bound(double psi0, double psi_star, double mu, double tau_l,
                          double L0, double L1) {
  if (psi0 < psi_star) throw BadParams("gd_iteration_bound: psi0 >= psi_star");
  double t2 = tau_l * tau_l;
  return 4.0 * (psi0 - psi_star) *
         (2.0 * L0 * L0 / (t2 * mu * mu * mu) + L0 / (tau_l * mu * mu) +
          L1 / (t2 * mu * mu));
}

}  // namespace tripm
