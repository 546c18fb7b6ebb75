#pragma once

#include <functional>
#include <vector>

namespace hcert {

using ScalarFn = std::function<double(double)>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached rules for 1 <= n <= 64.
const GaussRule& gauss_legendre(int n);

struct IntegrationRequest {
  ScalarFn integrand;
  Interval interval{0.0, 1.0};
  std::vector<double> breakpoints;  // interior points; sorted and filtered internally
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2048;
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

// Adaptive 15-point Gauss-Legendre. Each panel is compared against the sum over
// its two halves; the panel with the largest difference is bisected first.
IntegrationResult integrate(const IntegrationRequest& req);

double integrate(const ScalarFn& f, double lo, double hi, std::vector<double> breakpoints = {},
                 double rel_tol = 1e-10, double abs_tol = 1e-12);

enum class ExtremumMode { Sup, Inf };

struct ExtremumRequest {
  ScalarFn objective;
  Interval interval{0.0, 1.0};
  ExtremumMode mode = ExtremumMode::Sup;
  double tol = 1e-9;
  std::vector<double> kinks;  // extra seed points
  int seeds = 257;
};

struct ExtremumResult {
  double arg = 0.0;
  double value = 0.0;
};

// Chebyshev-Lobatto seeding plus golden-section polish around the best three seeds.
ExtremumResult extremize(const ExtremumRequest& req);

ExtremumResult sup_of(const ScalarFn& f, Interval iv, std::vector<double> kinks = {});
ExtremumResult inf_of(const ScalarFn& f, Interval iv, std::vector<double> kinks = {});

// Sorted unique points of `pts` lying strictly inside (lo, hi).
std::vector<double> interior_points(std::vector<double> pts, double lo, double hi);

}  // namespace hcert
