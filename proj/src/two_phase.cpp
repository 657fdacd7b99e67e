#include "tripm/two_phase.hpp"

#include <algorithm>
#include <cmath>

namespace tripm {

std::vector<std::string> TwoPhaseConfig::validate(const Problem& p) const {
  if (!(eps_opt > 0.0) || !(eps_inf > 0.0))
    throw BadParams("TwoPhaseConfig: tolerances must be positive");
  if (max_iters < 1) throw BadParams("TwoPhaseConfig: max_iters >= 1");
  std::vector<std::string> warnings;
  if (eps_opt > std::sqrt(eps_inf))
    warnings.push_back("eps_opt exceeds sqrt(eps_inf)");
  if (eps_inf > p.lip().L0 / p.num_constraints())
    warnings.push_back("eps_inf exceeds L0/m");
  return warnings;
}

namespace {

// t-blocks are affine; curvature constants carry over from the base, the new
// coordinate contributes gradient norm 1.
LipschitzConstants phase_one_lip(const LipschitzConstants& base) {
  return {std::hypot(base.L0, 1.0), base.L1, base.L2};
}

}  // namespace

PhaseOneProblem::PhaseOneProblem(ProblemPtr base, double eps_opt, double t0)
    : Problem(base->dim() + 1, base->num_constraints() + 2, phase_one_lip(base->lip())),
      base_(std::move(base)),
      eps_opt_(eps_opt),
      t0_(t0) {}

double PhaseOneProblem::f(const Vector& z) const { return z(dim() - 1); }

Vector PhaseOneProblem::grad_f(const Vector&) const {
  Vector g = Vector::Zero(dim());
  g(dim() - 1) = 1.0;
  return g;
}

Matrix PhaseOneProblem::hess_f(const Vector&) const {
  return Matrix::Zero(dim(), dim());
}

Vector PhaseOneProblem::a(const Vector& z) const {
  const int mb = base_->num_constraints();
  double t = z(dim() - 1);
  Vector v(mb + 2);
  v.head(mb) = base_->a(z.head(dim() - 1)).array() + t;
  v(mb) = t;
  v(mb + 1) = eps_opt_ / 2.0 + t0_ - t;
  return v;
}

Matrix PhaseOneProblem::jac_a(const Vector& z) const {
  const int nb = dim() - 1;
  const int mb = base_->num_constraints();
  Matrix J = Matrix::Zero(mb + 2, dim());
  J.topLeftCorner(mb, nb) = base_->jac_a(z.head(nb));
  J.col(nb).head(mb).setOnes();
  J(mb, nb) = 1.0;
  J(mb + 1, nb) = -1.0;
  return J;
}

Matrix PhaseOneProblem::hess_a(const Vector& z, int i) const {
  Matrix H = Matrix::Zero(dim(), dim());
  if (i < base_->num_constraints())
    H.topLeftCorner(dim() - 1, dim() - 1) = base_->hess_a(z.head(dim() - 1), i);
  return H;
}

std::pair<std::shared_ptr<const PhaseOneProblem>, Vector> build_phase_one(
    ProblemPtr p, const Vector& x0, double eps_opt) {
  if (!(eps_opt > 0.0)) throw BadParams("build_phase_one: eps_opt must be positive");
  double violation = std::max((-p->a(x0)).maxCoeff(), 0.0);
  double t0 = eps_opt / 2.0 + violation;
  Vector start(x0.size() + 1);
  start << x0, t0;
  return {std::make_shared<PhaseOneProblem>(std::move(p), eps_opt, t0), start};
}

namespace {

class ShiftedProblem final : public Problem {
 public:
  ShiftedProblem(ProblemPtr base, double shift)
      : Problem(base->dim(), base->num_constraints(), base->lip()),
        base_(std::move(base)),
        shift_(shift) {}
  double f(const Vector& x) const override { return base_->f(x); }
  Vector grad_f(const Vector& x) const override { return base_->grad_f(x); }
  Matrix hess_f(const Vector& x) const override { return base_->hess_f(x); }
  Vector a(const Vector& x) const override {
    return base_->a(x).array() + shift_;
  }
  Matrix jac_a(const Vector& x) const override { return base_->jac_a(x); }
  Matrix hess_a(const Vector& x, int i) const override { return base_->hess_a(x, i); }

 private:
  ProblemPtr base_;
  double shift_;
};

IPMParams phase_params(double mu, double tau_l, double L1, double L2, long max_iters) {
  SmallMuCheck smc = validate_small_mu(mu, tau_l, L1, L2, CurvatureMode::Nonconvex);
  EtaPair eta = eta_params(mu, tau_l, L1, CurvatureMode::Nonconvex);
  IPMParams params;
  params.mu = mu;
  params.tau_l = tau_l;
  params.tau_c = std::min(smc.tau_c, 1.0 - 1e-12);
  params.eta_s = eta.eta_s;
  params.eta_x = eta.eta_x;
  params.mode = CurvatureMode::Nonconvex;
  params.max_iters = max_iters;
  return params;
}

}  // namespace

ProblemPtr build_phase_two(ProblemPtr p, double eps_opt) {
  if (!(eps_opt > 0.0)) throw BadParams("build_phase_two: eps_opt must be positive");
  return std::make_shared<ShiftedProblem>(std::move(p), eps_opt);
}

TwoPhaseResult two_phase_ipm(ProblemPtr p, const TwoPhaseConfig& cfg, const Vector& x0) {
  cfg.validate(*p);
  const int m = p->num_constraints();
  const double L0 = p->lip().L0;
  const double L1 = p->lip().L1;
  const double L2 = p->lip().L2;

  TwoPhaseResult out;
  Vector x_p1 = x0;

  auto [p1, start] = build_phase_one(p, x0, cfg.eps_opt);
  if (p1->t0() > cfg.eps_opt / 2.0) {
    out.phase_one_ran = true;
    double mu1 = cfg.eps_inf * cfg.eps_opt / 12.0;
    double tau_l1 = std::min(1.0 / cfg.eps_opt,
                             std::sqrt(L1 / (2.0 * cfg.eps_opt * cfg.eps_inf)));
    IPMResult r1 = trust_ipm(*p1, phase_params(mu1, tau_l1, p1->lip().L1,
                                               p1->lip().L2, cfg.max_iters),
                             start);
    out.phase1_trace = std::move(r1.trace);
    if (r1.status != IPMStatus::Converged) return out;

    Vector x = r1.x.head(p->dim());
    double t = r1.x(p->dim());
    Vector y_p1 = r1.y.head(m);
    if (p->a(x).minCoeff() < -cfg.eps_opt / 2.0) {
      Vector y_norm = y_p1 / y_p1.lpNorm<1>();
      CertOrFailure cert =
          inf_residuals(*p, cfg.eps_opt, cfg.eps_inf, x, t, y_norm);
      if (auto* fail = std::get_if<CheckFailure>(&cert))
        throw CertificateVerificationFailed(
            "two_phase_ipm: infeasibility certificate failed at '" + fail->name + "'");
      out.status = TwoPhaseStatus::Certified;
      out.certificate = std::get<Certificate>(cert);
      return out;
    }
    x_p1 = x;
  }

  ProblemPtr p2 = build_phase_two(p, cfg.eps_opt);
  double mu2 = cfg.eps_opt / 4.0;
  double tau_l2 = std::sqrt(cfg.eps_inf / (2.0 * (L0 + 1.0)));
  IPMResult r2 = trust_ipm(*p2, phase_params(mu2, tau_l2, L1, L2, cfg.max_iters), x_p1);
  out.phase2_trace = std::move(r2.trace);
  if (r2.status != IPMStatus::Converged) return out;

  CertOrFailure cert =
      r2.y.lpNorm<1>() > 1.0 / cfg.eps_inf
          ? inf_residuals(*p, cfg.eps_opt, cfg.eps_inf, r2.x, cfg.eps_opt,
                          Vector(r2.y / r2.y.lpNorm<1>()))
          : kkt_residuals(*p, cfg.eps_opt, r2.x, r2.y);
  if (auto* fail = std::get_if<CheckFailure>(&cert))
    throw CertificateVerificationFailed("two_phase_ipm: certificate failed at '" +
                                        fail->name + "'");
  out.status = TwoPhaseStatus::Certified;
  out.certificate = std::get<Certificate>(cert);
  return out;
}

}  // namespace tripm
