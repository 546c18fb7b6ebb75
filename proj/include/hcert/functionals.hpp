#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hcert/grid_function.hpp"
#include "hcert/kernel.hpp"

namespace hcert {

enum class FunctionalKind { MinWindow, MaxWindow, PointEval, Stieltjes, Custom };
enum class Family { Lower, Upper };

const char* family_name(Family f);

struct Atom {
  double tau = 0.0;
  double mass = 0.0;
};

// Measure w(s) ds + sum of point masses.
struct StieltjesMeasure {
  std::string density_id;
  ScalarFn density;                // empty means no absolutely continuous part
  std::vector<double> breakpoints;  // kinks of the density
  std::vector<Atom> atoms;
};

// u, together with the points where u may fail to be smooth.
using CustomFunctional = std::function<double(const ScalarFn& u, const std::vector<double>& kinks)>;

struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::MaxWindow;
  Family family = Family::Upper;
  Window window;
  double tau = 0.0;
  StieltjesMeasure measure;
  CustomFunctional custom;
  std::optional<double> norm_bound;
  std::string label;

  static FunctionalSpec min_window(Window w, Family fam);
  static FunctionalSpec max_window(Window w, Family fam);
  static FunctionalSpec point(double tau, Family fam);
  static FunctionalSpec stieltjes(StieltjesMeasure m, Family fam);

  // Declared bound, or the built-in value (1 for min/max/point, total variation
  // for Stieltjes). Throws MissingNormBound for custom functionals without one.
  double norm() const;
  bool has_norm() const;
  std::string describe() const;
};

double apply_functional(const FunctionalSpec& phi, const ScalarFn& u, const std::vector<double>& kinks = {});
double apply_functional(const FunctionalSpec& phi, const GridFunction& u);

}  // namespace hcert
