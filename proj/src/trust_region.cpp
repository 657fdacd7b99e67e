#include "tripm/trust_region.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace tripm {

namespace {

// ||u(delta)|| for u(delta) = -(H+delta I)^-1 g in the eigenbasis
double secular_norm(const Vector& lam, const Vector& gt, double delta) {
  double s = 0.0;
  for (int i = 0; i < lam.size(); ++i) {
    double d = gt(i) / (lam(i) + delta);
    s += d * d;
  }
  return std::sqrt(s);
}

Vector assemble(const Matrix& Q, const Vector& lam, const Vector& gt, double delta) {
  Vector c(lam.size());
  for (int i = 0; i < lam.size(); ++i) c(i) = -gt(i) / (lam(i) + delta);
  return Q * c;
}

}  // namespace

TrustRegionSolution solve_trust_region(const Matrix& H, const Vector& g, double r,
                                       double tol) {
  if (!H.allFinite() || !g.allFinite() || !std::isfinite(r))
    throw NonFiniteInput("solve_trust_region: non-finite input");
  if (!(r > 0.0)) throw BadParams("solve_trust_region: radius must be positive");

  const int n = static_cast<int>(g.size());
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.transpose()));
  const Vector lam = es.eigenvalues();
  const Matrix Q = es.eigenvectors();
  const Vector gt = Q.transpose() * g;
  const double lam_min = lam(0);

  TrustRegionSolution sol;

  auto finish = [&](const Vector& u, double delta, bool on_boundary, bool hard) {
    sol.u = u;
    sol.delta = delta;
    sol.model_value = 0.5 * u.dot(H * u) + g.dot(u);
    sol.on_boundary = on_boundary;
    sol.hard_case = hard;
    return sol;
  };

  // interior solution
  if (lam_min > 0.0 && secular_norm(lam, gt, 0.0) <= r)
    return finish(assemble(Q, lam, gt, 0.0), 0.0, false, false);

  const double eig_gap_tol = 1e-10 * std::max(1.0, std::abs(lam_min));
  const double g_scale = std::max(1.0, g.norm());

  // hard case: g orthogonal (to 1e-12 relative) to every minimal eigenvector
  // and the pseudo-inverse solution at delta = -lam_min fits inside the ball
  bool g_orth_min = true;
  for (int i = 0; i < n; ++i)
    if (lam(i) <= lam_min + eig_gap_tol && std::abs(gt(i)) >= 1e-12 * g_scale)
      g_orth_min = false;
  if (g_orth_min) {
    double n0_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      if (lam(i) <= lam_min + eig_gap_tol) continue;
      double d = gt(i) / (lam(i) - lam_min);
      n0_sq += d * d;
    }
    if (n0_sq <= r * r) {
      Vector u = Vector::Zero(n);
      for (int i = 0; i < n; ++i) {
        if (lam(i) <= lam_min + eig_gap_tol) continue;
        u += (-gt(i) / (lam(i) - lam_min)) * Q.col(i);
      }
      // deterministic tie-break: minimal eigenvector with positive leading entry
      Vector v = Q.col(0);
      for (int i = 0; i < n; ++i) {
        if (v(i) != 0.0) {
          if (v(i) < 0.0) v = -v;
          break;
        }
      }
      u += std::sqrt(std::max(0.0, r * r - n0_sq)) * v;
      return finish(u, -lam_min, true, true);
    }
  }

  // easy boundary case: root of phi(delta) = 1/||u(delta)|| - 1/r on
  // (max(0,-lam_min), inf); phi is monotone increasing there
  double lo = std::max(0.0, -lam_min);
  double hi = std::max(1.0, lo) + g.norm() / r;  // ||u(hi)|| >= r may still hold
  while (secular_norm(lam, gt, hi) > r) hi = 2.0 * hi + 1.0;

  double delta = 0.5 * (lo + hi);
  double nrm = 0.0;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    if (!(delta > lo) || delta > hi) delta = 0.5 * (lo + hi);
    nrm = secular_norm(lam, gt, delta);
    if (std::abs(nrm - r) <= tol * std::max(1.0, r)) {
      converged = true;
      break;
    }
    if (nrm > r)
      lo = delta;
    else
      hi = delta;
    // Newton step on 1/||u|| - 1/r (convex in delta)
    double d3 = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = lam(i) + delta;
      d3 += gt(i) * gt(i) / (t * t * t);
    }
    double phi = 1.0 / nrm - 1.0 / r;
    double dphi = d3 / (nrm * nrm * nrm);
    if (dphi > 0.0) {
      double cand = delta - phi / dphi;
      delta = (cand > lo && cand < hi) ? cand : 0.5 * (lo + hi);
    } else {
      delta = 0.5 * (lo + hi);
    }
    if (hi - lo <= 1e-16 * std::max(1.0, hi)) {
      converged = true;
      delta = 0.5 * (lo + hi);
      nrm = secular_norm(lam, gt, delta);
      break;
    }
  }
  if (!converged)
    throw NoConvergence("solve_trust_region: secular root-find exceeded its cap");

  Vector u = assemble(Q, lam, gt, delta);
  if (u.norm() > 0.0) u *= r / u.norm();  // place exactly on the boundary
  return finish(u, delta, true, false);
}

std::map<std::string, double> verify_tr(const Matrix& H, const Vector& g, double r,
                                        const TrustRegionSolution& sol,
                                        const Matrix* H0, const Matrix* A) {
  std::map<std::string, double> res;
  const Vector& u = sol.u;
  double un = u.norm();
  res["norm_excess"] = std::max(0.0, un - r);
  res["complementarity"] =
      std::abs(sol.delta * (un - r)) / std::max({1.0, r, sol.delta});
  res["stationarity"] =
      ((H + sol.delta * Matrix::Identity(H.rows(), H.cols())) * u + g).norm() /
      std::max(1.0, g.norm());
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      0.5 * (H + H.transpose()) + sol.delta * Matrix::Identity(H.rows(), H.cols()),
      Eigen::EigenvaluesOnly);
  res["psd_violation"] = std::max(0.0, -es.eigenvalues().minCoeff()) /
                         std::max(1.0, H.cwiseAbs().maxCoeff());
  res["model_consistency"] =
      std::abs(0.5 * u.dot(H * u) + g.dot(u) - sol.model_value);
  if (H0 && A) {
    double lhs = (*A * u).squaredNorm();
    double rhs = -u.dot(*H0 * u) - 2.0 * sol.model_value;
    res["split_bound_slack"] = std::max(0.0, lhs - rhs);
  }
  return res;
}

}  // namespace tripm
