#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hcert/functionals.hpp"
#include "hcert/kernel.hpp"

namespace hcert {

enum class TermKind { Gamma, Delta };

// One summand gamma(s) phi[u] (inside the integral) or delta(t) phi[u] (outside).
struct FamilyTerm {
  TermKind kind = TermKind::Gamma;
  ScalarFn function;
  std::vector<double> kinks;
  FunctionalSpec functional;
  std::string label;
};

struct DeclaredLimits {
  std::optional<double> f2_at_0;
  std::optional<double> f1_at_0;
  std::optional<double> f2_at_inf;
  std::optional<double> f1_at_inf;
  bool any() const { return f2_at_0 || f1_at_0 || f2_at_inf || f1_at_inf; }
};

struct NonlinearitySpec {
  std::function<double(double, double, double)> f;  // f(t, u, v), v = (Du)(t)
  std::function<double(double, double)> f1;          // lower comparison f1(t, u)
  std::function<double(double, double)> f2;          // upper comparison f2(t, u)
  std::function<double(double)> f2_upper;            // rho -> f2^{-rho,rho}; empty: sample
  std::function<double(double, double)> f1_lower;    // (rho, c) -> f_{1,rho,rho/c}; empty: sample
  DeclaredLimits limits;
  std::vector<double> t_kinks;
};

// Bu(t) = map(t, phi[u]).
struct BoundaryOperator {
  std::optional<FunctionalSpec> functional;
  std::function<double(double, double)> map;
  bool present() const { return functional.has_value() && static_cast<bool>(map); }
};

enum class DeviationKind { None, Identity, Composition };

// (Du)(t) = u(eta(t)) for Composition, u(t) for Identity, 0 for None.
struct DeviationOperator {
  DeviationKind kind = DeviationKind::None;
  ScalarFn eta;
};

struct Attestations {
  bool order_preserving = false;  // hypotheses of eigen criterion (1)
  bool nonexistence_1 = false;
  bool nonexistence_2 = false;
};

struct ProblemSpec {
  KernelSpec kernel;
  std::vector<FamilyTerm> lower;
  std::vector<FamilyTerm> upper;
  NonlinearitySpec nonlinearity;
  BoundaryOperator boundary;
  DeviationOperator deviation;
  Attestations attest;
  std::optional<PresetId> preset;

  double c() const { return kernel.c; }
  double c1() const { return kernel.c1; }
};

// Samples eta on a grid and rejects values outside the window.
void check_deviation(const ProblemSpec& problem);

}  // namespace hcert
