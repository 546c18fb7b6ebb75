#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcert/quadrature.hpp"

namespace hcert {

using KernelFn = std::function<double(double, double)>;

struct Window {
  double a = 0.0;
  double b = 1.0;
  Interval interval() const { return {a, b}; }
};

enum class SignClass { Nonnegative, Signed };

// Kernel k(t,s) with envelope Phi, window [a,b], weight g and cone constants.
// c1 == 0 means "not yet computed"; c == 0 means "use c1".
struct KernelSpec {
  KernelFn evaluate;
  ScalarFn envelope;
  ScalarFn weight;  // empty means g == 1
  Window window;
  double c1 = 0.0;
  double c = 0.0;
  SignClass sign_class = SignClass::Nonnegative;
  bool diagonal_kink = false;
  std::vector<double> s_kinks;               // kinks of k(t, .) independent of t
  std::vector<double> t_kinks;               // kinks of k(., s) independent of s
  std::vector<double> weight_singularities;  // integrable singular points of g
  std::string id = "custom";

  double operator()(double t, double s) const { return evaluate(t, s); }
  double g(double s) const { return weight ? weight(s) : 1.0; }
  double k_plus(double t, double s) const;

  // Quadrature breakpoints for s -> k(t,s) g(s).
  std::vector<double> row_breakpoints(double t) const;
  // Seed points for t -> k(t,s).
  std::vector<double> column_kinks(double s) const;
};

double compute_c1(const KernelSpec& kernel, int grid_density = 257, double tol = 1e-9);

// sigma(t) = int_0^1 |k(t,s)| g(s) ds
double sigma(const KernelSpec& kernel, double t);
// 1/m = sup_t sigma(t)
double m_constant(const KernelSpec& kernel);
// int_a^b k(t,s) g(s) ds
double window_integral(const KernelSpec& kernel, double t);
// 1/M(a,b) = inf_{t in [a,b]} window_integral(t)
double M_constant(const KernelSpec& kernel);

// Validates the window, fills c1 and c if unset and checks 0 < c <= c1 <= 1 and
// int_a^b Phi g > 0.
KernelSpec finalize_kernel(KernelSpec kernel);

struct KernelValidation {
  bool ok = true;
  double worst_envelope_excess = 0.0;  // max of |k| - Phi
  double worst_window_deficit = 0.0;   // max of c1 Phi - k on the window
  int samples = 0;
};

// Random-sample check of the envelope and window lower-bound inequalities.
KernelValidation validate_kernel(const KernelSpec& kernel, int samples, std::uint64_t seed);

enum class PresetId { DirichletMax, PeriodicDeviation };

std::optional<PresetId> parse_preset(std::string_view name);
const char* preset_name(PresetId id);

// Preset kernels with closed-form reference formulas. The closed forms assume g == 1.
struct BuiltinProblem {
  PresetId id;
  KernelSpec kernel;
  ScalarFn tilde_phi;        // inf_{t in [a,b]} k(t,s)
  ScalarFn k_phi_min;        // min over the window of k(., s)
  ScalarFn k_phi_max;        // max over the window of |k(., s)|
  ScalarFn sigma;            // int_0^1 |k(t,s)| ds
  ScalarFn window_integral;  // int_a^b k(t,s) ds
  double c1 = 0.0;
  double inv_m = 0.0;           // sup_t sigma
  double inv_M = 0.0;           // inf over the window of window_integral
  double int_k_phi_max = 0.0;   // int_0^1 k_phi_max(s) ds
};

BuiltinProblem make_preset(PresetId id, Window window, ScalarFn weight = {});

}  // namespace hcert
