#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hcert/errors.hpp"
#include "hcert/grid_function.hpp"
#include "hcert/quadrature.hpp"

using namespace hcert;

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {1, 2, 4, 7, 15, 32}) {
    const GaussRule& r = gauss_legendre(n);
    double w = 0.0;
    for (double x : r.weights) w += x;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    // int_{-1}^{1} x^(2n-2) dx = 2/(2n-1)
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
    CHECK(acc == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
}

TEST_CASE("adaptive integration") {
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {0.3}) ==
        doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  // periodic integrand over a full period
  CHECK(std::abs(integrate([](double x) { return std::sin(2 * M_PI * x); }, 0.0, 1.0)) < 1e-12);
}

TEST_CASE("integration reports budget exhaustion and non-finite values") {
  IntegrationRequest req;
  req.integrand = [](double x) { return std::sin(1.0 / (x + 1e-4)); };
  req.interval = {0.0, 1.0};
  req.rel_tol = 1e-14;
  req.abs_tol = 1e-16;
  req.max_subdivisions = 4;
  CHECK_THROWS_AS(integrate(req), Error);
  try {
    integrate(req);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureFailure);
  }
  CHECK_THROWS_AS(integrate([](double) { return NAN; }, 0.0, 1.0), Error);
}

TEST_CASE("extremize finds interior and kink extrema") {
  auto sup = sup_of([](double t) { return std::sin(M_PI * t); }, {0.0, 1.0});
  CHECK(sup.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sup.arg == doctest::Approx(0.5).epsilon(1e-6));
  auto inf = inf_of([](double t) { return std::abs(t - 0.3123) + 1.0; }, {0.0, 1.0}, {0.3123});
  CHECK(inf.value == doctest::Approx(1.0).epsilon(1e-15));
  // narrow spike between seeds is located through the kink list
  auto spike = sup_of([](double t) { return std::max(0.0, 1.0 - 1e4 * std::abs(t - 0.123456)); }, {0.0, 1.0},
                      {0.123456});
  CHECK(spike.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid function interpolation and extrema") {
  auto nodes = GridFunction::uniform_nodes(65);
  GridFunction cubic = GridFunction::sample(nodes, [](double t) { return 1.0 + t - 2.0 * t * t * t; });
  for (double t : {0.0, 0.013, 0.5, 0.777, 1.0})
    CHECK(cubic(t) == doctest::Approx(1.0 + t - 2.0 * t * t * t).epsilon(1e-13));
  GridFunction s = GridFunction::sample(nodes, [](double t) { return std::sin(M_PI * t); });
  CHECK(s.sup_norm() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(s.min_on({0.25, 0.75}).value == doctest::Approx(std::sin(M_PI / 4)).epsilon(1e-9));
  CHECK_THROWS_AS(s.stencil(1.5), Error);
  CHECK_THROWS_AS(GridFunction({0.0, 0.5, 0.4, 1.0}, {0, 0, 0, 0}), Error);
}
