#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hcert/cone_algebra.hpp"
#include "hcert/errors.hpp"
#include "hcert/index_conditions.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace hcert;

TEST_CASE("spectral radius against a dense eigensolve") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    int n = 1 + k % 7;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = unit(rng) < 0.3 ? 0.0 : unit(rng);
    CHECK(spectral_radius(m) == doctest::Approx(oracle::dense_spectral_radius(m)).epsilon(1e-10));
  }
}

TEST_CASE("companion matrix with known roots") {
  // x^3 - 7x - 6 = (x - 3)(x + 1)(x + 2)
  Eigen::MatrixXd m(3, 3);
  m << 0, 0, 6, 1, 0, 7, 0, 1, 0;
  CHECK(spectral_radius(m) == doctest::Approx(3.0).epsilon(1e-12));
  // reducible and nilpotent cases
  Eigen::MatrixXd nil(3, 3);
  nil << 0, 1, 0, 0, 0, 1, 0, 0, 0;
  CHECK(spectral_radius(nil) == doctest::Approx(0.0));
  Eigen::MatrixXd perm(3, 3);
  perm << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  CHECK(spectral_radius(perm) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("example 1 cross matrices") {
  ProblemSpec p = oracle::example1_problem();
  CrossMatrix m1 = build_cross_matrix(Family::Lower, p);
  CrossMatrix m2 = build_cross_matrix(Family::Upper, p);
  CHECK(m1.entries(0, 0) == doctest::Approx(43.0 / 1024.0).epsilon(1e-12));
  CHECK(m2.entries(0, 0) == doctest::Approx(11.0 / 192.0).epsilon(1e-12));
  CHECK(m2.entries(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  C8Result c8 = check_C8(m1, m2, p.c1());
  CHECK(c8.holds);
  CHECK(c8.r2 == doctest::Approx(107.0 / 192.0).epsilon(1e-12));
  ConstantsTable t = compute_constants(p);
  REQUIRE(t.x_upper);
  for (Eigen::Index i = 0; i < t.x_upper->values.size(); ++i)
    CHECK(std::abs(t.x_upper->values(i) - 31.0 / 85.0) < 1e-10);
  REQUIRE(t.x_lower);
  CHECK(t.x_lower->values(0) == doctest::Approx(192.0 / 3541.0).epsilon(1e-10));
}

TEST_CASE("resolvent errors") {
  Eigen::MatrixXd m(1, 1);
  m << 1.2;
  try {
    resolve_positive(CrossMatrix{m, Family::Upper}, 1.0, Eigen::VectorXd::Ones(1));
    FAIL("expected SpectralRadiusTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpectralRadiusTooLarge);
  }
  CHECK(resolvent_lip_bound(0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(resolvent_lip_bound(1.0), Error);
}

TEST_CASE("resolvent positivity on 1e3 random systems") {
  property::Outcome o = property::resolvent_positivity(1000, 0x1e3);
  INFO(o.detail);
  CHECK(o.ok);
}

TEST_CASE("neumann series agrees with the direct solve") {
  property::Outcome o = property::neumann_agreement(1000, 0x2e3);
  INFO(o.detail);
  CHECK(o.ok);
  CHECK(o.worst <= 1e-8);
}
