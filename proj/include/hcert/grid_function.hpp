#pragma once

#include <array>
#include <span>
#include <vector>

#include "hcert/quadrature.hpp"

namespace hcert {

// Weights of the local cubic Lagrange interpolant at one evaluation point.
struct Stencil {
  int first = 0;
  int count = 0;
  std::array<double, 4> weights{};
};

// Element of C[0,1] stored by nodal values with piecewise-cubic interpolation.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::vector<double> nodes, std::vector<double> values);

  static std::vector<double> uniform_nodes(int n);
  static GridFunction sample(const std::vector<double>& nodes, const ScalarFn& f);
  static GridFunction constant(int n, double value);

  double operator()(double t) const;
  Stencil stencil(double t) const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return nodes_.size(); }

  double sup_norm() const;
  ExtremumResult max_on(Interval iv) const;
  ExtremumResult min_on(Interval iv) const;

 private:
  int locate(double t) const;
  ExtremumResult refine(Interval iv, ExtremumMode mode, bool absolute) const;

  std::vector<double> nodes_;
  std::vector<double> values_;
  bool uniform_ = false;
};

}  // namespace hcert
