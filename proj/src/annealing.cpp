#include "tripm/annealing.hpp"

#include <cmath>

#include "tripm/barrier.hpp"

namespace tripm {

void AnnealConfig::validate() const {
  if (!(mu0 > 0.0) || !(eps > 0.0) || !(R > 0.0) || !(tau_l > 0.0))
    throw BadParams("AnnealConfig: mu0, eps, R, tau_l must be positive");
  if (max_outer < 1) throw BadParams("AnnealConfig: max_outer >= 1");
  if (zeta < 0.0) throw BadParams("AnnealConfig: zeta must be nonnegative");
}

AnnealResult annealed_ipm(const Problem& p, const AnnealConfig& cfg, const Vector& x0) {
  cfg.validate();
  const int m = p.num_constraints();
  const double L1 = p.lip().L1;
  const double L2 = p.lip().L2;

  AnnealResult out;
  Vector x = x0;
  double mu = cfg.mu0;

  for (int j = 0; j < cfg.max_outer; ++j, mu /= 2.0) {
    SmallMuCheck smc = validate_small_mu(mu, cfg.tau_l, L1, L2, CurvatureMode::Convex);
    EtaPair eta = eta_params(mu, cfg.tau_l, L1, CurvatureMode::Convex);
    IPMParams params;
    params.mu = mu;
    params.tau_l = cfg.tau_l;
    params.tau_c = std::min(smc.tau_c, 1.0 - 1e-12);
    params.eta_s = eta.eta_s;
    params.eta_x = eta.eta_x;
    params.mode = CurvatureMode::Convex;
    params.max_iters = cfg.inner_max_iters;

    IPMResult inner = trust_ipm(p, params, x);
    if (inner.status != IPMStatus::Converged) {
      out.converged = false;
      out.x = inner.x;
      out.y = inner.y;
      out.last_inner_trace = std::move(inner.trace);
      return out;
    }
    x = inner.x;

    OuterRecord rec;
    rec.j = j;
    rec.mu = mu;
    rec.inner_iters = static_cast<long>(inner.trace.size());
    rec.f = p.f(x);
    rec.lag_norm = (p.grad_f(x) - p.jac_a(x).transpose() * inner.y).norm();
    rec.comp_max = ((p.a(x).cwiseProduct(inner.y)).array() - mu).abs().maxCoeff();
    rec.y_norm1 = inner.y.lpNorm<1>();
    if (cfg.zeta > 0.0) rec.dual_bound_ok = rec.y_norm1 + 1.0 <= cfg.zeta;
    out.outer.push_back(rec);
    out.y = inner.y;
    out.last_inner_trace = std::move(inner.trace);

    if (2.0 * mu * m <= cfg.eps) {
      out.converged = true;
      out.x = x;
      out.terminating_j = j;
      return out;
    }
  }
  out.converged = false;
  out.x = x;
  return out;
}

double suboptimality_bound(const Problem& p, double R, double mu, const Vector& x,
                           const Vector& y) {
  if (!(R > 0.0) || mu < 0.0) throw BadParams("suboptimality_bound: bad R or mu");
  Vector s = p.a(x);
  if ((s.array() <= 0.0).any() || (y.array() <= 0.0).any())
    throw BadParams("suboptimality_bound: need a(x) > 0 and y > 0");
  Vector comp = s.cwiseProduct(y);
  if ((comp.array() < mu).any())
    throw PremiseViolated("suboptimality_bound: a_i y_i >= mu violated");
  double lag = (p.grad_f(x) - p.jac_a(x).transpose() * y).norm();
  return lag * R + (comp.array() - mu).sum();
}

double slater_dual_bound(int m, double mu, double L0, double R, double gamma) {
  if (m < 1 || !(mu > 0.0) || !(L0 > 0.0) || !(R > 0.0) || !(gamma > 0.0))
    throw BadParams("slater_dual_bound: positive inputs required");
  return 1.0 + (3.0 * m * mu + 2.0 * L0 * R) / gamma;
}

bool slater_mu_ok(double mu, double gamma, double tau_l, double R) {
  return mu <= gamma / (2.0 * tau_l * R);
}

ConvexDefaults convex_defaults(int m, double R, double zeta, double L1, double L2) {
  if (m < 1 || !(R > 0.0) || !(L1 > 0.0) || !(L2 > 0.0))
    throw BadParams("convex_defaults: positive inputs required");
  if (!(zeta > 1.0)) throw BadParams("convex_defaults: zeta must exceed 1");
  ConvexDefaults d;
  d.tau_l = m / (R * std::sqrt(zeta));
  double cand1 = L1 * R * R * zeta / (double(m) * m);
  double cand2 = std::pow(L1, 4) * m / (R * std::pow(L2, 3) * std::sqrt(zeta));
  d.mu0 = std::min(cand1, cand2);
  return d;
}

}  // namespace tripm
