#include "tripm/problem.hpp"

#include <cfloat>
#include <cmath>
#include <functional>

namespace tripm {

namespace {

LipschitzConstants with_overrides(double L0, double L1, double L2,
                                  const ParamMap& params,
                                  const std::vector<std::string>& extra_keys = {}) {
  for (const auto& [key, val] : params) {
    if (key == "L0")
      L0 = val;
    else if (key == "L1")
      L1 = val;
    else if (key == "L2")
      L2 = val;
    else {
      bool known = false;
      for (const auto& k : extra_keys) known = known || k == key;
      if (!known) throw BadParams("unknown parameter '" + key + "'");
    }
  }
  return {L0, L1, L2};
}

//-- lp1d: min x s.t. x >= 0, 2 - x >= 0

struct Lp1d final : Problem {
  explicit Lp1d(LipschitzConstants lip) : Problem(1, 2, lip) {}
  double f(const Vector& x) const override { return x(0); }
  Vector grad_f(const Vector&) const override { return Vector::Ones(1); }
  Matrix hess_f(const Vector&) const override { return Matrix::Zero(1, 1); }
  Vector a(const Vector& x) const override {
    Vector v(2);
    v << x(0), 2.0 - x(0);
    return v;
  }
  Matrix jac_a(const Vector&) const override {
    Matrix J(2, 1);
    J << 1.0, -1.0;
    return J;
  }
  Matrix hess_a(const Vector&, int) const override { return Matrix::Zero(1, 1); }
};

//-- box_qp_nonconvex: indefinite quadratic over the unit box

struct BoxQp final : Problem {
  explicit BoxQp(LipschitzConstants lip) : Problem(2, 4, lip) {}
  double f(const Vector& x) const override {
    return 0.5 * (x(0) * x(0) - x(1) * x(1)) + 0.3 * x(0) + 0.2 * x(1);
  }
  Vector grad_f(const Vector& x) const override {
    Vector g(2);
    g << x(0) + 0.3, -x(1) + 0.2;
    return g;
  }
  Matrix hess_f(const Vector&) const override {
    Matrix H = Matrix::Zero(2, 2);
    H(0, 0) = 1.0;
    H(1, 1) = -1.0;
    return H;
  }
  Vector a(const Vector& x) const override {
    Vector v(4);
    v << 1.0 - x(0), 1.0 + x(0), 1.0 - x(1), 1.0 + x(1);
    return v;
  }
  Matrix jac_a(const Vector&) const override {
    Matrix J(4, 2);
    J << -1, 0, 1, 0, 0, -1, 0, 1;
    return J;
  }
  Matrix hess_a(const Vector&, int) const override { return Matrix::Zero(2, 2); }
};

//-- annulus: min x1 over 1 <= ||x||^2 <= 4

struct Annulus final : Problem {
  explicit Annulus(LipschitzConstants lip) : Problem(2, 2, lip) {}
  double f(const Vector& x) const override { return x(0); }
  Vector grad_f(const Vector&) const override {
    Vector g(2);
    g << 1.0, 0.0;
    return g;
  }
  Matrix hess_f(const Vector&) const override { return Matrix::Zero(2, 2); }
  Vector a(const Vector& x) const override {
    double n2 = x.squaredNorm();
    Vector v(2);
    v << n2 - 1.0, 4.0 - n2;
    return v;
  }
  Matrix jac_a(const Vector& x) const override {
    Matrix J(2, 2);
    J.row(0) = 2.0 * x.transpose();
    J.row(1) = -2.0 * x.transpose();
    return J;
  }
  Matrix hess_a(const Vector&, int i) const override {
    return (i == 0 ? 2.0 : -2.0) * Matrix::Identity(2, 2);
  }
};

//-- circle_lp_convex: min x1 over the unit disk

struct CircleLp final : Problem {
  explicit CircleLp(LipschitzConstants lip) : Problem(2, 1, lip) {}
  double f(const Vector& x) const override { return x(0); }
  Vector grad_f(const Vector&) const override {
    Vector g(2);
    g << 1.0, 0.0;
    return g;
  }
  Matrix hess_f(const Vector&) const override { return Matrix::Zero(2, 2); }
  Vector a(const Vector& x) const override {
    Vector v(1);
    v << 1.0 - x.squaredNorm();
    return v;
  }
  Matrix jac_a(const Vector& x) const override {
    Matrix J(1, 2);
    J.row(0) = -2.0 * x.transpose();
    return J;
  }
  Matrix hess_a(const Vector&, int) const override {
    return -2.0 * Matrix::Identity(2, 2);
  }
};

//-- infeasible_1d: x >= 1 and x <= -1 simultaneously

struct Infeasible1d final : Problem {
  explicit Infeasible1d(LipschitzConstants lip) : Problem(1, 2, lip) {}
  double f(const Vector& x) const override { return x(0); }
  Vector grad_f(const Vector&) const override { return Vector::Ones(1); }
  Matrix hess_f(const Vector&) const override { return Matrix::Zero(1, 1); }
  Vector a(const Vector& x) const override {
    Vector v(2);
    v << x(0) - 1.0, -x(0) - 1.0;
    return v;
  }
  Matrix jac_a(const Vector&) const override {
    Matrix J(2, 1);
    J << 1.0, -1.0;
    return J;
  }
  Matrix hess_a(const Vector&, int) const override { return Matrix::Zero(1, 1); }
};

}  // namespace

ProblemPtr builtin_problem(const std::string& name, const ParamMap& params) {
  if (name == "lp1d")
    return std::make_shared<Lp1d>(with_overrides(1.0, 1.0, 1.0, params));
  if (name == "box_qp_nonconvex")
    return std::make_shared<BoxQp>(with_overrides(2.0, 1.0, 1.0, params));
  if (name == "annulus")
    return std::make_shared<Annulus>(with_overrides(4.0, 2.0, 1.0, params));
  if (name == "circle_lp_convex")
    return std::make_shared<CircleLp>(with_overrides(2.0, 2.0, 1.0, params));
  if (name == "infeasible_1d")
    return std::make_shared<Infeasible1d>(with_overrides(1.0, 1.0, 1.0, params));
  throw UnknownProblem("no builtin problem named '" + name + "'");
}

std::vector<std::string> builtin_problem_names() {
  return {"lp1d", "box_qp_nonconvex", "annulus", "circle_lp_convex", "infeasible_1d"};
}

DerivativeReport check_derivatives(const Problem& p, const Vector& x, double tol) {
  if ((p.a(x).array() <= 0.0).any())
    throw BoundaryViolation("check_derivatives requires a(x) > 0");

  const int n = p.dim();
  const int m = p.num_constraints();
  const double h = std::cbrt(DBL_EPSILON) * (1.0 + x.lpNorm<Eigen::Infinity>());

  DerivativeReport rep;
  Vector fd_grad(n);
  Matrix fd_jac(m, n);
  for (int j = 0; j < n; ++j) {
    Vector xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    fd_grad(j) = (p.f(xp) - p.f(xm)) / (2.0 * h);
    fd_jac.col(j) = (p.a(xp) - p.a(xm)) / (2.0 * h);
  }
  rep.max_grad_err = (fd_grad - p.grad_f(x)).lpNorm<Eigen::Infinity>();
  rep.max_jac_err = (fd_jac - p.jac_a(x)).cwiseAbs().maxCoeff();

  // Hessians against central differences of the analytic first derivatives.
  rep.max_hess_err = 0.0;
  for (int j = 0; j < n; ++j) {
    Vector xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    Vector col = (p.grad_f(xp) - p.grad_f(xm)) / (2.0 * h);
    rep.max_hess_err = std::max(
        rep.max_hess_err, (col - p.hess_f(x).col(j)).lpNorm<Eigen::Infinity>());
    Matrix jp = p.jac_a(xp), jm = p.jac_a(xm);
    for (int i = 0; i < m; ++i) {
      Vector ci = (jp.row(i) - jm.row(i)).transpose() / (2.0 * h);
      rep.max_hess_err = std::max(
          rep.max_hess_err, (ci - p.hess_a(x, i).col(j)).lpNorm<Eigen::Infinity>());
    }
  }

  rep.pass = rep.max_grad_err <= tol && rep.max_jac_err <= tol && rep.max_hess_err <= tol;
  return rep;
}

}  // namespace tripm
