#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hcert/eigencriteria.hpp"
#include "hcert/errors.hpp"
#include "oracles.hpp"

using namespace hcert;

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
}

TEST_CASE("full-interval dirichlet operator has radius 1/pi^2") {
  BuiltinProblem d = make_preset(PresetId::DirichletMax, {0.0, 1.0});
  NystromOperator op = discretize(d.kernel, OperatorRole::L1, 129);
  SpectralEstimate est = spectral_radius_op(op);
  CHECK(est.converged);
  CHECK(std::abs(est.radius - 1.0 / kPi2) < 1e-10);
  CHECK(std::abs(est.radius_fine - est.radius) < 1e-10);
  CHECK(est.radius == doctest::Approx(oracle::dense_spectral_radius(op.matrix)).epsilon(1e-10));
  // eigenfunction is sin(pi t) normalized to sup 1
  for (double t : {0.1, 0.5, 0.8})
    CHECK(est.eigenfunction(t) == doctest::Approx(std::sin(std::numbers::pi * t)).epsilon(1e-6));
  ComparisonResult cmp = comparison_upper_bound(op, [](double t) { return std::sin(std::numbers::pi * t); }, 1.0 / kPi2);
  CHECK(cmp.bound_certified);
  ComparisonResult too_small =
      comparison_upper_bound(op, [](double t) { return std::sin(std::numbers::pi * t); }, 0.9 / kPi2);
  CHECK_FALSE(too_small.bound_certified);
}

TEST_CASE("higher dirichlet eigenvalues via the dense oracle") {
  BuiltinProblem d = make_preset(PresetId::DirichletMax, {0.0, 1.0});
  NystromOperator op = discretize(d.kernel, OperatorRole::L2, 129);
  Eigen::EigenSolver<Eigen::MatrixXd> es(op.matrix, false);
  std::vector<double> ev;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.rbegin(), ev.rend());
  for (int n = 1; n <= 3; ++n) CHECK(ev[n - 1] == doctest::Approx(1.0 / (n * n * kPi2)).epsilon(1e-8));
}

TEST_CASE("power iteration on a small matrix") {
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  PowerResult r = power_iteration(m);
  CHECK(r.radius == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.vector.maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("ratio extrapolation") {
  CHECK(std::isinf(extrapolate_ratios(1e3, 1e4, 1e5)));
  CHECK(extrapolate_ratios(1.1, 1.01, 1.001) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(extrapolate_ratios(1e-3, 1e-4, 1e-5)) < 1e-6);
}

TEST_CASE("limits") {
  ProblemSpec p = oracle::example2_problem();
  AsymptoticLimits a = estimate_limits(p, LimitMode::Analytic);
  CHECK(a.f2_at_0.value == 0.0);
  CHECK(std::isinf(a.f1_at_inf.value));
  CHECK_FALSE(a.sampled());
  AsymptoticLimits s = estimate_limits(p, LimitMode::Sampled);
  CHECK(s.sampled());
  CHECK(std::abs(s.f2_at_0.value) < 1e-6);
  CHECK(std::isinf(s.f2_at_inf.value));
  ProblemSpec none = p;
  none.nonlinearity.limits = {};
  try {
    estimate_limits(none, LimitMode::Analytic);
    FAIL("expected MissingLimits");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingLimits);
  }
}

TEST_CASE("example 2 criteria") {
  EigCriteria e = check_eig_criteria(oracle::example2_problem());
  CHECK(e.L2_bound == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(e.H2_bound == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(e.criterion1.holds);
  CHECK_FALSE(e.criterion1.advisory);
  CHECK(e.criterion3.holds);
  CHECK_FALSE(e.criterion2.holds);
  CHECK_FALSE(e.exact_criterion1_implemented);
  // principal eigenfunction of L1 lies in the cone
  CHECK(e.L1.eigenfunction.min_on({0.25, 0.75}).value >= oracle::example2_problem().c() * e.L1.eigenfunction.sup_norm());
}

TEST_CASE("criterion 1 is advisory without declarations") {
  ProblemSpec p = oracle::example2_problem();
  p.nonlinearity.limits = {};
  p.attest.order_preserving = false;
  EigCriteria e = check_eig_criteria(p);
  CHECK(e.criterion1.holds);
  CHECK(e.criterion1.advisory);
}
