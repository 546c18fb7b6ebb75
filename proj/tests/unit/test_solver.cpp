#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hcert/eigencriteria.hpp"
#include "hcert/errors.hpp"
#include "hcert/solver.hpp"
#include "oracles.hpp"

using namespace hcert;

namespace {

ProblemSpec dirichlet_with(std::function<double(double, double, double)> f, DeviationKind dev = DeviationKind::None) {
  ProblemSpec p;
  p.kernel = make_preset(PresetId::DirichletMax, {0.25, 0.75}).kernel;
  p.nonlinearity.f = std::move(f);
  p.deviation.kind = dev;
  return p;
}

double max_gap(const GridFunction& u, const std::vector<double>& nodes, const std::vector<double>& values) {
  double gap = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) gap = std::max(gap, std::abs(u(nodes[i]) - values[i]));
  return gap;
}

SolverOptions newton(int nodes) {
  SolverOptions o;
  o.nodes = nodes;
  o.acceleration = Acceleration::Newton;
  o.tol = 1e-11;
  return o;
}

}  // namespace

TEST_CASE("zero operator") {
  ProblemSpec p = dirichlet_with([](double, double, double) { return 0.0; });
  GridFunction u = GridFunction::sample(GridFunction::uniform_nodes(65), [](double t) { return 1.0 + t; });
  GridFunction tu = apply_T(p, u);
  for (double v : tu.values()) CHECK(v == 0.0);
  SolverOptions o;
  o.nodes = 65;
  o.damping = 1.0;
  SolveReport r = picard_solve(p, u, o);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.trivial);
}

TEST_CASE("constant forcing reproduces t(1-t)/2") {
  ProblemSpec p = dirichlet_with([](double, double, double) { return 1.0; });
  GridFunction tu = apply_T(p, GridFunction::constant(129, 3.0));
  for (std::size_t i = 0; i < tu.size(); ++i) {
    double t = tu.nodes()[i];
    CHECK(std::abs(tu.values()[i] - t * (1 - t) / 2) < 1e-13);
  }
}

TEST_CASE("zero is a fixed point of the example 1 operator") {
  GridFunction tu = apply_T(oracle::example1_problem(), GridFunction::constant(65, 0.0));
  for (double v : tu.values()) CHECK(v == 0.0);
}

TEST_CASE("linear sanity against the Nystrom operator") {
  ProblemSpec p = dirichlet_with([](double, double u, double) { return u; }, DeviationKind::Identity);
  auto cubic = [](double t) { return 1.0 + t * t - 0.7 * t * t * t; };
  GridFunction u = GridFunction::sample(GridFunction::uniform_nodes(129), cubic);
  GridFunction tu = apply_T(p, u);
  NystromOperator op = discretize(p.kernel, OperatorRole::L2, 129);
  Eigen::VectorXd un(op.size());
  for (int j = 0; j < op.size(); ++j) un(j) = cubic(op.nodes[j]);
  for (std::size_t i = 0; i < tu.size(); ++i) {
    double ref = op.row(tu.nodes()[i]).dot(un);
    CHECK(std::abs(tu.values()[i] - ref) < 1e-9);
  }
}

TEST_CASE("deviation leaving [0,1] is rejected") {
  ProblemSpec p = dirichlet_with([](double, double, double v) { return v; }, DeviationKind::Composition);
  p.deviation.eta = [](double t) { return 2.0 * t; };
  try {
    apply_T(p, GridFunction::constant(33, 1.0));
    FAIL("expected DomainViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainViolation);
  }
}

TEST_CASE("example 1 solution against the finite-difference oracle") {
  ProblemSpec p = oracle::example1_problem();
  SolveReport r257 = picard_solve(p, GridFunction::constant(257, 5.0), newton(257));
  SolveReport r129 = picard_solve(p, GridFunction::constant(129, 5.0), newton(129));
  REQUIRE(r257.converged);
  REQUIRE(r129.converged);
  CHECK(r257.residual < 1e-8);
  CHECK(r257.cone_ok);
  CHECK(r257.window_min > 0.0);
  double gap = 0.0;
  for (double t : r129.solution.nodes()) gap = std::max(gap, std::abs(r129.solution(t) - r257.solution(t)));
  CHECK(gap < 1e-6);
  auto [nodes, values] = oracle::fd_example1(1024);
  CHECK(max_gap(r257.solution, nodes, values) < 1e-6);
  // fixed-point consistency
  GridFunction tu = apply_T(p, r257.solution);
  double res = 0.0;
  for (std::size_t i = 0; i < tu.size(); ++i) res = std::max(res, std::abs(tu.values()[i] - r257.solution.values()[i]));
  CHECK(res < 1e-8);
}

TEST_CASE("example 2 solution against the finite-difference oracle") {
  ProblemSpec p = oracle::example2_problem();
  SolveReport r = picard_solve(p, GridFunction::constant(257, 1.0), newton(257));
  REQUIRE(r.converged);
  CHECK(r.residual < 1e-8);
  CHECK(r.cone_ok);
  CHECK_FALSE(r.trivial);
  auto [nodes, values] = oracle::fd_example2(1024);
  CHECK(max_gap(r.solution, nodes, values) < 1e-6);
}

TEST_CASE("anderson reaches the same example 2 solution") {
  ProblemSpec p = oracle::example2_problem();
  SolverOptions o = newton(129);
  o.acceleration = Acceleration::Anderson;
  SolveReport a = picard_solve(p, GridFunction::constant(129, 1.0), o);
  SolveReport n = picard_solve(p, GridFunction::constant(129, 1.0), newton(129));
  REQUIRE(a.converged);
  CHECK(std::abs(a.sup_norm - n.sup_norm) < 1e-9);
}

TEST_CASE("plain picard failure is reported, not thrown") {
  ProblemSpec p = oracle::example1_problem();
  SolverOptions o;
  o.nodes = 65;
  SolveReport r = picard_solve(p, GridFunction::constant(65, 20.0), o);
  CHECK_FALSE(r.converged);
  CHECK(r.status == SolveStatus::Diverged);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("shell annotation") {
  ConditionLedger l;
  l.c = 0.25;
  ConditionResult ok;
  ok.holds = true;
  l.add(1.0, IndexKind::I1, ok);
  l.add(28.0, IndexKind::I0, ok);
  SolveReport r = picard_solve(oracle::example1_problem(), GridFunction::constant(129, 5.0), newton(129));
  SolveReport s = shell_check(r, l);
  REQUIRE(s.shell);
  CHECK(s.shell->first == 1.0);
  CHECK(s.shell->second == 112.0);
  CHECK(s.sup_norm > 1.0);
  CHECK(s.window_min < 28.0);

  SolveReport zero;
  zero.converged = true;
  zero.trivial = true;
  CHECK_FALSE(shell_check(zero, l).shell);

  SolveReport small;
  small.converged = true;
  small.sup_norm = 0.5;
  small.window_min = 0.3;
  ConditionLedger single;
  single.c = 0.25;
  single.add(1.0, IndexKind::I1, ok);
  CHECK_FALSE(shell_check(small, single).shell);
  CHECK_FALSE(shell_check(small, l).shell);
}

TEST_CASE("default initial level") {
  Shell s;
  s.inner = ShellBound{IndexKind::I1, 1.0};
  s.outer = ShellBound{IndexKind::I0, 28.0};
  CHECK(default_initial_level(s, 0.25) == doctest::Approx(std::sqrt(112.0)));
  CHECK(default_initial_level(Shell{}, 0.25) == 1.0);
}
