#include <doctest.h>

#include <cmath>

#include "tripm/two_phase.hpp"
#include "test_util.hpp"

using namespace tripm;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("build_phase_one") {
  auto inf = builtin_problem("infeasible_1d");
  auto [p1, start] = build_phase_one(inf, Vector::Zero(1), 0.1);
  CHECK(p1->t0() == doctest::Approx(1.05).epsilon(1e-14));
  REQUIRE(start.size() == 2);
  CHECK(start(1) == p1->t0());
  Vector a1 = p1->a(start);
  REQUIRE(a1.size() == 4);
  CHECK(a1(0) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(a1(1) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(a1(2) == doctest::Approx(1.05).epsilon(1e-12));
  CHECK(a1(3) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK((a1.array() > 0.0).all());
  CHECK(p1->dim() == 2);
  CHECK(p1->num_constraints() == 4);

  // wrapped oracle passes the FD check at the strictly feasible start
  CHECK(check_derivatives(*p1, start, 1e-5).pass);

  // feasible base point: t0 collapses to eps/2 and phase one can be skipped
  auto lp = builtin_problem("lp1d");
  auto [q1, qs] = build_phase_one(lp, vec1(1.0), 0.1);
  CHECK(q1->t0() == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("build_phase_two") {
  auto lp = builtin_problem("lp1d");
  auto p2 = build_phase_two(lp, 0.1);
  Vector a0 = p2->a(Vector::Zero(1));
  CHECK(a0(0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(a0(1) == doctest::Approx(2.1).epsilon(1e-14));
  CHECK(p2->jac_a(vec1(0.7)) == lp->jac_a(vec1(0.7)));
  CHECK(p2->f(vec1(0.7)) == lp->f(vec1(0.7)));

  auto inf = builtin_problem("infeasible_1d");
  Vector ai = build_phase_two(inf, 0.1)->a(Vector::Zero(1));
  CHECK(ai(0) == doctest::Approx(-0.9).epsilon(1e-14));
  CHECK(ai(1) == doctest::Approx(-0.9).epsilon(1e-14));
}

TEST_CASE("two_phase_ipm: infeasible instance yields a verified INF certificate") {
  auto inf = builtin_problem("infeasible_1d");
  TwoPhaseConfig cfg;
  cfg.eps_opt = 0.05;
  cfg.eps_inf = 0.1;
  TwoPhaseResult res = two_phase_ipm(inf, cfg, Vector::Zero(1));
  REQUIRE(res.status == TwoPhaseStatus::Certified);
  CHECK(res.phase_one_ran);
  REQUIRE(res.certificate.kind == CertKind::Infeasible);
  CHECK(res.certificate.y.lpNorm<1>() == doctest::Approx(1.0).epsilon(1e-13));
  // independent re-verification
  auto check = inf_residuals(*inf, cfg.eps_opt, cfg.eps_inf, res.certificate.x,
                             res.certificate.t.value(), res.certificate.y);
  CHECK(std::holds_alternative<Certificate>(check));
}

TEST_CASE("two_phase_ipm: lp1d skips phase one and returns a KKT point near 0") {
  auto lp = builtin_problem("lp1d");
  TwoPhaseConfig cfg;
  cfg.eps_opt = 0.01;
  cfg.eps_inf = 0.1;
  TwoPhaseResult res = two_phase_ipm(lp, cfg, vec1(1.0));
  REQUIRE(res.status == TwoPhaseStatus::Certified);
  CHECK_FALSE(res.phase_one_ran);
  CHECK(res.phase1_trace.empty());
  REQUIRE(res.certificate.kind == CertKind::KKT);
  CHECK(std::abs(res.certificate.x(0)) <= 0.05);
  auto check = kkt_residuals(*lp, cfg.eps_opt, res.certificate.x, res.certificate.y);
  CHECK(std::holds_alternative<Certificate>(check));
}

TEST_CASE("two_phase_ipm: annulus from a feasible start certifies KKT") {
  auto ann = builtin_problem("annulus");
  TwoPhaseConfig cfg;
  cfg.eps_opt = 0.05;
  cfg.eps_inf = 0.2;
  cfg.max_iters = 2000000;
  TwoPhaseResult res = two_phase_ipm(ann, cfg, vec2(1.5, 0.0));
  REQUIRE(res.status == TwoPhaseStatus::Certified);
  CHECK_FALSE(res.phase_one_ran);
  REQUIRE(res.certificate.kind == CertKind::KKT);
  auto check = kkt_residuals(*ann, cfg.eps_opt, res.certificate.x, res.certificate.y);
  CHECK(std::holds_alternative<Certificate>(check));
  // stationary points of min x1 on the annulus sit on the x1 axis
  CHECK(std::abs(res.certificate.x(1)) <= 0.1);
}

TEST_CASE("two_phase config validation and advisory warnings") {
  auto lp = builtin_problem("lp1d");
  TwoPhaseConfig bad;
  bad.eps_opt = 0.0;
  bad.eps_inf = 0.1;
  CHECK_THROWS_AS(bad.validate(*lp), BadParams);

  TwoPhaseConfig loose;
  loose.eps_opt = 0.9;  // above sqrt(eps_inf)
  loose.eps_inf = 0.6;  // above L0/m = 0.5
  CHECK(loose.validate(*lp).size() == 2);

  TwoPhaseConfig fine;
  fine.eps_opt = 0.01;
  fine.eps_inf = 0.1;
  CHECK(fine.validate(*lp).empty());
}

TEST_CASE("two_phase_ipm iteration limit is reported, not thrown") {
  auto lp = builtin_problem("lp1d");
  TwoPhaseConfig cfg;
  cfg.eps_opt = 0.01;
  cfg.eps_inf = 0.1;
  cfg.max_iters = 2;
  TwoPhaseResult res = two_phase_ipm(lp, cfg, vec1(1.0));
  CHECK(res.status == TwoPhaseStatus::IterationLimit);
}
