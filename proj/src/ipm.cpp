#include "tripm/ipm.hpp"

#include <cmath>

#include "tripm/trust_region.hpp"

namespace tripm {

void IPMParams::validate() const {
  if (!(mu > 0.0) || !(tau_l > 0.0)) throw BadParams("IPMParams: mu, tau_l > 0");
  if (!(tau_c > 0.0) || !(tau_c < 1.0)) throw BadParams("IPMParams: tau_c in (0,1)");
  if (!(eta_s > 0.0) || !(eta_s < 1.0) || !(eta_x > 0.0) || !(eta_x < 1.0))
    throw BadParams("IPMParams: eta_s, eta_x in (0,1)");
  if (max_iters < 1) throw BadParams("IPMParams: max_iters >= 1");
}

EtaPair eta_params(double mu, double tau_l, double L1, CurvatureMode mode) {
  if (!(mu > 0.0) || !(tau_l > 0.0) || !(L1 > 0.0))
    throw BadParams("eta_params: positive inputs required");
  double q = tau_l * tau_l * mu / L1;
  EtaPair eta;
  if (mode == CurvatureMode::Nonconvex) {
    eta.eta_s = std::pow(q, 0.25) / 40.0;
    eta.eta_x = eta.eta_s / 2.0;
  } else {
    eta.eta_x = std::pow(q, 1.0 / 6.0) / 20.0;
    eta.eta_s = std::cbrt(q) / 20.0;
  }
  return eta;
}

SmallMuCheck validate_small_mu(double mu, double tau_l, double L1, double L2,
                               CurvatureMode mode) {
  if (!(mu > 0.0) || !(tau_l > 0.0) || !(L1 > 0.0) || !(L2 > 0.0))
    throw BadParams("validate_small_mu: positive inputs required");
  double q = tau_l * tau_l * mu / L1;
  SmallMuCheck out;
  double ratio;
  if (mode == CurvatureMode::Nonconvex) {
    out.tau_c = std::sqrt(q);
    ratio = L2 * L2 * mu / (L1 * L1 * L1);
    if (ratio > 1.0)
      out.warnings.push_back("L2^2*mu/L1^3 = " + std::to_string(ratio) + " > 1");
  } else {
    out.tau_c = std::cbrt(q);
    ratio = L2 * L2 * L2 * mu / (L1 * L1 * L1 * L1 * tau_l);
    if (ratio > 1.0)
      out.warnings.push_back("L2^3*mu/(L1^4*tau_l) = " + std::to_string(ratio) + " > 1");
  }
  if (!(out.tau_c > 0.0) || out.tau_c > 1.0)
    out.warnings.push_back("tau_c = " + std::to_string(out.tau_c) + " outside (0,1]");
  return out;
}

double trust_radius(double mu, double L1, const Vector& y, double eta_x) {
  if (!(mu > 0.0) || !(L1 > 0.0) || !(eta_x > 0.0))
    throw BadParams("trust_radius: positive inputs required");
  return eta_x * std::sqrt(mu / (L1 * (1.0 + y.lpNorm<1>())));
}

double step_size(const Vector& slack, const Vector& ds, double eta_s) {
  if ((slack.array() <= 0.0).any()) throw BadParams("step_size: slack must be positive");
  if (!(eta_s > 0.0) || !(eta_s < 1.0)) throw BadParams("step_size: eta_s in (0,1)");
  double ratio = slack.cwiseInverse().cwiseProduct(ds).norm();
  if (ratio == 0.0) return 1.0;
  return std::min(eta_s / ratio, 1.0);
}

Direction compute_direction(const BarrierEval& be, double r) {
  TrustRegionSolution tr = solve_trust_region(be.hess, be.grad, r);
  Direction d;
  d.dx = tr.u;
  d.ds = be.jac * tr.u;
  d.dy = -be.mu * be.slack.array().square().inverse() * d.ds.array();
  d.delta = tr.delta;
  d.model_at_dx = tr.model_value;
  d.r = r;
  return d;
}

Direction compute_direction(const Problem& p, double mu, const Vector& x, double r) {
  return compute_direction(barrier_eval(p, mu, x), r);
}

double nonconvex_iteration_bound(double psi0, double psi_star, double mu,
                                 double tau_l, double L1) {
  if (psi0 < psi_star) throw BadParams("nonconvex_iteration_bound: psi0 >= psi_star");
  double per_pair = (7.0 * mu / 48000.0) * std::pow(tau_l * tau_l * mu / L1, 0.75);
  return 2.0 + 2.0 * (psi0 - psi_star) / per_pair;
}

namespace {

double newton_block_residual(const Problem& p, const BarrierEval& be,
                             const Direction& d) {
  // (hess_xx L + delta I) dx - J' dy = -grad_x L;  J dx = ds;  S dy + Y ds = mu - S y
  const int n = p.dim();
  Matrix HL = p.hess_f(be.x);
  for (int i = 0; i < p.num_constraints(); ++i) HL -= be.dual(i) * p.hess_a(be.x, i);
  Vector gL = p.grad_f(be.x) - be.jac.transpose() * be.dual;
  double b1 = ((HL + d.delta * Matrix::Identity(n, n)) * d.dx -
               be.jac.transpose() * d.dy + gL)
                  .norm();
  double b2 = (be.jac * d.dx - d.ds).norm();
  Vector b3v = be.slack.cwiseProduct(d.dy) + be.dual.cwiseProduct(d.ds) +
               be.slack.cwiseProduct(be.dual) - be.mu * Vector::Ones(be.slack.size());
  return std::max({b1, b2, b3v.lpNorm<Eigen::Infinity>()});
}

}  // namespace

IPMResult trust_ipm(const Problem& p, const IPMParams& params, const Vector& x0) {
  params.validate();
  if ((p.a(x0).array() <= 0.0).any())
    throw BoundaryViolation("trust_ipm: start must be strictly feasible");

  const double L1 = p.lip().L1;
  IPMResult out;
  Vector x = x0;

  for (long k = 0; k < params.max_iters; ++k) {
    BarrierEval be = barrier_eval(p, params.mu, x);
    double r = trust_radius(params.mu, L1, be.dual, params.eta_x);
    Direction d = compute_direction(be, r);
    double alpha = step_size(be.slack, d.ds, params.eta_s);

    Vector xp = x + alpha * d.dx;
    Vector yp = be.dual + alpha * d.dy;
    FJResiduals fj = fj_residuals(p, params.mu, params.tau_l, params.tau_c, xp, yp);

    IterateRecord rec;
    rec.k = k;
    rec.psi = be.value;
    rec.grad_norm = be.grad.norm();
    rec.min_slack = be.slack.minCoeff();
    rec.y_norm1 = be.dual.lpNorm<1>();
    rec.r = r;
    rec.alpha = alpha;
    rec.delta = d.delta;
    rec.model = d.model_at_dx;
    rec.s_ratio = be.slack.cwiseInverse().cwiseProduct(d.ds).norm();
    rec.fj1 = fj.fj1;
    rec.fj2 = fj.fj2;
    rec.x = x;
    rec.dx_norm = d.dx.norm();
    rec.min_eig = fj.min_eig;
    rec.newton_residual = newton_block_residual(p, be, d);
    rec.kappa = alpha * rec.s_ratio +
                L1 * (alpha * d.dx).squaredNorm() * be.dual.norm() / params.mu;
    Vector sp = p.a(xp);
    if ((sp.array() > 0.0).all()) {
      Vector ratios = sp.cwiseQuotient(be.slack);
      rec.min_slack_ratio = ratios.minCoeff();
      rec.max_slack_ratio = ratios.maxCoeff();
    }
    out.trace.push_back(rec);

    bool done = fj.fj1 && (params.mode == CurvatureMode::Convex || fj.fj2);
    if (done) {
      Certificate cert;
      cert.kind = CertKind::FritzJohn;
      cert.x = xp;
      cert.y = yp;
      cert.residuals["primal_slack"] = {-p.a(xp).minCoeff(), 0.0};
      cert.residuals["dual_positivity"] = {-yp.minCoeff(), 0.0};
      cert.residuals["complementarity"] = {fj.comp_err, fj.comp_bound};
      cert.residuals["stationarity"] = {fj.lag_norm, fj.lag_bound};
      if (params.mode == CurvatureMode::Nonconvex)
        cert.residuals["curvature"] = {-fj.min_eig, -fj.eig_bound};

      FJResiduals check =
          fj_residuals(p, params.mu, params.tau_l, params.tau_c, cert.x, cert.y);
      if (!check.fj1 || (params.mode == CurvatureMode::Nonconvex && !check.fj2))
        throw CertificateVerificationFailed("trust_ipm: terminal candidate failed re-verification");

      out.status = IPMStatus::Converged;
      out.x = xp;
      out.y = yp;
      out.certificate = cert;
      return out;
    }
    x = xp;  // candidate duals are discarded; next loop rebuilds y = mu S^-1 1
  }

  out.status = IPMStatus::IterationLimit;
  out.x = x;
  out.y = barrier_eval(p, params.mu, x).dual;
  return out;
}

}  // namespace tripm
