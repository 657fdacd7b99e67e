#include <doctest.h>

#include <cmath>
#include <random>

#include "tripm/annealing.hpp"
#include "tripm/barrier.hpp"
#include "test_util.hpp"

using namespace tripm;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

}  // namespace

TEST_CASE("annealed_ipm outer schedule on lp1d") {
  auto lp = builtin_problem("lp1d");
  AnnealConfig cfg;
  cfg.mu0 = 1.0;
  cfg.eps = 0.01;
  cfg.R = 2.0;
  cfg.tau_l = 1.0;
  AnnealResult res = annealed_ipm(*lp, cfg, vec1(1.0));
  REQUIRE(res.converged);

  // smallest j with 2 * 2^-j * m <= eps for m = 2 is j = 9
  CHECK(res.terminating_j == 9);
  CHECK(res.terminating_j ==
        static_cast<int>(std::ceil(std::log2(2.0 * cfg.mu0 * 2 / cfg.eps))));
  REQUIRE(res.outer.size() == 10);
  for (const auto& o : res.outer) {
    // bit-exact halving
    CHECK(o.mu == cfg.mu0 * std::pow(2.0, -o.j));
  }
  // final point is near the true optimum x* = 0 of min x on [0,2]
  CHECK(lp->f(res.x) <= cfg.eps);
  CHECK(res.x(0) > 0.0);
}

TEST_CASE("annealed_ipm returns after one inner solve when eps is loose") {
  auto lp = builtin_problem("lp1d");
  AnnealConfig cfg;
  cfg.mu0 = 1.0;
  cfg.eps = 5.0;  // >= 2 mu0 m
  cfg.R = 2.0;
  cfg.tau_l = 1.0;
  AnnealResult res = annealed_ipm(*lp, cfg, vec1(1.0));
  REQUIRE(res.converged);
  CHECK(res.terminating_j == 0);
  CHECK(res.outer.size() == 1);
}

TEST_CASE("outer-loop gap chain on lp1d (warm-start handoffs)") {
  auto lp = builtin_problem("lp1d");
  const int m = 2;
  AnnealConfig cfg;
  cfg.mu0 = 0.5;
  cfg.eps = 0.05;
  cfg.R = 2.0;
  cfg.tau_l = 0.5;
  AnnealResult res = annealed_ipm(*lp, cfg, vec1(1.0));
  REQUIRE(res.converged);
  std::mt19937 rng(12);
  for (size_t idx = 1; idx < res.outer.size(); ++idx) {
    const auto& prev = res.outer[idx - 1];
    // handoff premises from the previous certificate
    bool premise = prev.lag_norm <= m * prev.mu / cfg.R && prev.comp_max <= prev.mu / 2.0;
    if (!premise) continue;
    double mu_next = res.outer[idx].mu;
    // gap at the new mu, measured at the handoff point of the previous round;
    // we only have the final x, so check the terminal handoff (idx == last)
    if (idx + 1 != res.outer.size()) continue;
    double psi = barrier_eval(*lp, mu_next, res.x).value;
    double psi_star = tt::brute_force_psi_star(*lp, mu_next, vec1(1e-5),
                                               vec1(2.0 - 1e-5), 400000, rng);
    CHECK(psi - psi_star <= 3.0 * prev.mu * m + 1e-9);
  }
}

TEST_CASE("suboptimality_bound") {
  auto lp = builtin_problem("lp1d");
  const double mu = 0.25;
  // analytic stationary point of psi_mu on lp1d: 1 - mu/x + mu/(2-x) = 0
  auto g = [&](double x) { return 1.0 - mu / x + mu / (2.0 - x); };
  double lo = 1e-8, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  Vector xs = vec1(0.5 * (lo + hi));
  Vector ys = barrier_eval(*lp, mu, xs).dual;
  CHECK(suboptimality_bound(*lp, 2.0, mu, xs, ys) <= 1e-8);

  // mu = 0 serves plain suboptimality: f(x) - f* <= bound with f* = 0
  CHECK(lp->f(xs) - 0.0 <= suboptimality_bound(*lp, 2.0, 0.0, xs, ys));

  // premise violation: scale one dual below the complementarity floor
  Vector y_bad = ys;
  y_bad(0) *= 0.5;
  CHECK_THROWS_AS(suboptimality_bound(*lp, 2.0, mu, xs, y_bad), PremiseViolated);
}

TEST_CASE("slater_dual_bound and its premise helper") {
  CHECK(slater_dual_bound(2, 0.1, 1.0, 1.0, 0.5) == doctest::Approx(6.2).epsilon(1e-14));
  CHECK(slater_dual_bound(2, 0.1, 1.0, 1.0, 1e6) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(slater_mu_ok(0.1, 0.5, 1.0, 1.0));
  CHECK_FALSE(slater_mu_ok(0.3, 0.5, 1.0, 1.0));

  // measured duals on circle_lp_convex stay under the bound
  auto circ = builtin_problem("circle_lp_convex");
  const double mu = 0.01, tau_l = 0.5, gamma = 1.0;  // slater point x = 0
  Vector x0 = Vector::Zero(2);
  IPMParams params;
  SmallMuCheck smc = validate_small_mu(mu, tau_l, circ->lip().L1, circ->lip().L2,
                                       CurvatureMode::Convex);
  EtaPair eta = eta_params(mu, tau_l, circ->lip().L1, CurvatureMode::Convex);
  params.mu = mu;
  params.tau_l = tau_l;
  params.tau_c = smc.tau_c;
  params.eta_s = eta.eta_s;
  params.eta_x = eta.eta_x;
  params.mode = CurvatureMode::Convex;
  IPMResult res = trust_ipm(*circ, params, x0);
  REQUIRE(res.status == IPMStatus::Converged);
  REQUIRE(slater_mu_ok(mu, gamma, tau_l, 2.0));
  CHECK(res.y.lpNorm<1>() <=
        slater_dual_bound(circ->num_constraints(), mu, circ->lip().L0, 2.0, gamma));

  // f - f* <= suboptimality bound with the analytic optimum f* = -1
  double fstar = -1.0;
  double bound = suboptimality_bound(*circ, 2.0, 0.0, res.x, res.y);
  CHECK(circ->f(res.x) - fstar <= bound + 1e-12);
}

TEST_CASE("convex_defaults") {
  ConvexDefaults d = convex_defaults(2, 1.0, 4.0, 1.0, 1.0);
  CHECK(d.tau_l == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.mu0 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(convex_defaults(1, 1.0, 1.0, 1.0, 1.0), BadParams);
  // cubic L2 scaling on the second mu0 candidate
  ConvexDefaults big = convex_defaults(2, 1.0, 4.0, 1.0, 10.0);
  CHECK(big.mu0 == doctest::Approx(1.0 / 1000.0).epsilon(1e-12));
}

TEST_CASE("anneal config validation") {
  auto lp = builtin_problem("lp1d");
  AnnealConfig cfg;
  cfg.mu0 = 0.0;
  cfg.eps = 0.1;
  cfg.R = 2.0;
  cfg.tau_l = 1.0;
  CHECK_THROWS_AS(annealed_ipm(*lp, cfg, vec1(1.0)), BadParams);
}
