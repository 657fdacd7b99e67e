#include "tripm/barrier.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace tripm {

namespace {

// Representable y with y*s as close to mu as floating point allows; mu/s
// rounded once can miss by an ulp, so search the immediate neighbours.
double exact_dual(double mu, double s) {
  double y = mu / s;
  double best = y;
  double best_err = std::abs(y * s - mu);
  for (int dir : {+1, -1}) {
    double cand = y;
    for (int step = 0; step < 4 && best_err > 0.0; ++step) {
      cand = std::nextafter(cand, dir > 0 ? HUGE_VAL : -HUGE_VAL);
      double err = std::abs(cand * s - mu);
      if (err < best_err) {
        best_err = err;
        best = cand;
      }
    }
  }
  return best;
}

}  // namespace

BarrierEval barrier_eval(const Problem& p, double mu, const Vector& x) {
  if (!(mu > 0.0)) throw BadParams("barrier_eval: mu must be positive");
  if (!x.allFinite()) throw NonFiniteInput("barrier_eval: non-finite x");

  BarrierEval be;
  be.x = x;
  be.mu = mu;
  be.slack = p.a(x);
  if ((be.slack.array() <= 0.0).any())
    throw BoundaryViolation("barrier_eval: iterate left the strictly feasible set");

  const int m = p.num_constraints();
  be.dual.resize(m);
  for (int i = 0; i < m; ++i) be.dual(i) = exact_dual(mu, be.slack(i));

  be.value = p.f(x) - mu * be.slack.array().log().sum();
  be.jac = p.jac_a(x);
  be.grad = p.grad_f(x) - be.jac.transpose() * be.dual;

  Matrix H = p.hess_f(x);
  for (int i = 0; i < m; ++i) H -= be.dual(i) * p.hess_a(x, i);
  Vector inv_s2 = be.slack.array().square().inverse();
  H += mu * be.jac.transpose() * inv_s2.asDiagonal() * be.jac;
  be.hess = 0.5 * (H + H.transpose());
  return be;
}

double model_value(const BarrierEval& be, const Vector& u) {
  return 0.5 * u.dot(be.hess * u) + be.grad.dot(u);
}

FJResiduals fj_residuals(const Problem& p, double mu, double tau_l, double tau_c,
                         const Vector& x, const Vector& y) {
  if (!(mu > 0.0) || !(tau_l > 0.0) || !(tau_c > 0.0) || !(tau_c < 1.0))
    throw BadParams("fj_residuals: need mu, tau_l > 0 and tau_c in (0,1)");

  FJResiduals res;
  Vector s = p.a(x);
  res.feasible_primal = (s.array() > 0.0).all() && (y.array() > 0.0).all();
  res.comp_err = (s.cwiseProduct(y).array() - mu).abs().maxCoeff();
  res.comp_bound = tau_c * mu / 2.0;

  double y1 = y.lpNorm<1>();
  res.lag_norm = (p.grad_f(x) - p.jac_a(x).transpose() * y).norm();
  res.lag_bound = tau_l * mu * std::sqrt(y1 + 1.0);

  res.eig_bound = -std::sqrt(tau_l) * (1.0 + y1);
  if ((s.array() != 0.0).all()) {
    Matrix H = p.hess_f(x);
    Matrix J = p.jac_a(x);
    Vector yb = mu * s.array().square().inverse();
    for (int i = 0; i < p.num_constraints(); ++i)
      H -= (mu / s(i)) * p.hess_a(x, i);
    H += J.transpose() * yb.asDiagonal() * J;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.transpose()),
                                             Eigen::EigenvaluesOnly);
    res.min_eig = es.eigenvalues().minCoeff();
  } else {
    res.min_eig = std::numeric_limits<double>::quiet_NaN();
  }

  res.fj1 = res.feasible_primal && res.comp_err <= res.comp_bound &&
            res.lag_norm <= res.lag_bound;
  res.fj2 = res.min_eig >= res.eig_bound;
  return res;
}

namespace {

struct Checker {
  std::map<std::string, ResidualEntry> entries;
  std::optional<CheckFailure> failure;

  // invariant value <= bound
  void require(const std::string& name, double value, double bound) {
    entries[name] = {value, bound};
    if (!failure && !(value <= bound)) failure = CheckFailure{name, value, bound};
  }
};

}  // namespace

CertOrFailure kkt_residuals(const Problem& p, double eps_opt, const Vector& x,
                            const Vector& y) {
  if (!(eps_opt > 0.0)) throw BadParams("kkt_residuals: eps_opt must be positive");
  Vector s = p.a(x);
  Checker c;
  c.require("primal_feasibility", -s.minCoeff(), eps_opt);
  c.require("stationarity", (p.grad_f(x) - p.jac_a(x).transpose() * y).norm(), eps_opt);
  c.require("dual_nonnegativity", -y.minCoeff(), 0.0);
  c.require("complementarity", s.cwiseProduct(y).maxCoeff(), eps_opt);
  if (c.failure) return *c.failure;

  Certificate cert;
  cert.kind = CertKind::KKT;
  cert.x = x;
  cert.y = y;
  cert.residuals = c.entries;
  return cert;
}

CertOrFailure inf_residuals(const Problem& p, double eps_opt, double eps_inf,
                            const Vector& x, double t, const Vector& y) {
  if (!(eps_opt > 0.0) || !(eps_inf > 0.0))
    throw BadParams("inf_residuals: tolerances must be positive");
  Vector s = p.a(x);
  Checker c;
  c.require("infeasibility_witness", s.minCoeff(), -eps_opt / 2.0);
  c.require("shifted_feasibility", -(s.array() + t).minCoeff(), 0.0);
  c.require("dual_stationarity", (p.jac_a(x).transpose() * y).norm(), eps_inf);
  c.require("dual_normalization", std::abs(y.lpNorm<1>() - 1.0), 1e-12);
  c.require("dual_nonnegativity", -y.minCoeff(), 0.0);
  c.require("shifted_complementarity", ((s.array() + t) * y.array()).maxCoeff(),
            eps_inf * eps_opt);
  if (c.failure) return *c.failure;

  Certificate cert;
  cert.kind = CertKind::Infeasible;
  cert.x = x;
  cert.t = t;
  cert.y = y;
  cert.residuals = c.entries;
  return cert;
}

}  // namespace tripm
