#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hcert/errors.hpp"
#include "hcert/index_conditions.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace hcert;

TEST_CASE("example 1 brackets match the closed forms") {
  ProblemSpec p = oracle::example1_problem();
  ConstantsTable t = compute_constants(p);
  CHECK(t.i1_bracket.value == doctest::Approx(oracle::ex1_i1_bracket(0.5)).epsilon(1e-10));
  CHECK(t.i1_bracket.value == doctest::Approx(5357.0 / 16320.0).epsilon(1e-10));
  CHECK(t.i0_bracket.value == doctest::Approx(oracle::ex1_i0_bracket_min()).epsilon(1e-9));
  CHECK(t.i0_bracket.value == doctest::Approx(2603.0 / 28328.0).epsilon(1e-9));
  CHECK(t.m == doctest::Approx(8.0).epsilon(1e-10));
  CHECK(t.inv_M == doctest::Approx(1.0 / 16.0).epsilon(1e-10));
}

TEST_CASE("example 1 conditions") {
  IndexConditions ic(oracle::example1_problem());
  ConditionResult i1 = ic.check_I1(1.0);
  CHECK(i1.holds);
  CHECK(i1.lhs == doctest::Approx(5357.0 / 16320.0).epsilon(1e-10));
  CHECK_FALSE(i1.advisory);
  // f_{1,rho,rho/c} = rho/4, so the I0 lhs is (rho/4) times the bracket
  ConditionResult i0 = ic.check_I0(28.0);
  CHECK(i0.lhs == doctest::Approx(7.0 * 2603.0 / 28328.0).epsilon(1e-9));
  CHECK_FALSE(i0.holds);
  ConditionResult i0b = ic.check_I0(50.0);
  CHECK(i0b.holds);
  CHECK(i0b.lhs == doctest::Approx(12.5 * 2603.0 / 28328.0).epsilon(1e-9));
}

TEST_CASE("sampled bounds agree with closed forms") {
  ProblemSpec p = oracle::example1_problem();
  ProblemSpec q = p;
  q.nonlinearity.f2_upper = nullptr;
  q.nonlinearity.f1_lower = nullptr;
  for (double rho : {0.5, 1.0, 28.0}) {
    BoundValue a = f2_upper(p, rho), s = f2_upper(q, rho);
    CHECK(a.source == BoundSource::Analytic);
    CHECK(s.source == BoundSource::Sampled);
    CHECK(s.value == doctest::Approx(a.value).epsilon(1e-9));
    CHECK(f1_lower(q, rho).value == doctest::Approx(f1_lower(p, rho).value).epsilon(1e-9));
  }
  ConditionResult r = check_I1(q, 1.0);
  CHECK(r.advisory);
}

TEST_CASE("non-existence clauses and the consistency check") {
  ProblemSpec p = oracle::example1_problem();
  auto [n1, n2] = check_nonexistence(p);
  CHECK_FALSE(n1.holds);
  CHECK_FALSE(n2.holds);
  // a small linear nonlinearity satisfies clause 1
  ProblemSpec small = p;
  small.nonlinearity.f1 = [](double, double u) { return 0.01 * u; };
  small.nonlinearity.f2 = small.nonlinearity.f1;
  small.nonlinearity.f2_upper = nullptr;
  small.nonlinearity.f1_lower = nullptr;
  auto [s1, s2] = check_nonexistence(small);
  CHECK(s1.holds);
  CHECK(s1.advisory);
  ConditionResult fake_i0;
  fake_i0.kind = ConditionKind::I0;
  fake_i0.holds = true;
  CHECK_THROWS_AS(consistency_check(s1, {fake_i0}), Error);
  CHECK_NOTHROW(consistency_check(n1, {fake_i0}));
}

TEST_CASE("strong conditions imply the exact ones on 100 random problems") {
  property::Outcome o = property::strong_dominance(100, 0xd0);
  INFO(o.detail);
  CHECK(o.ok);
}
