#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcert/problem.hpp"
#include "hcert/solver.hpp"

namespace hcert {

struct KernelConfig {
  std::string preset;    // dirichlet_max | periodic_deviation; empty for a custom kernel
  std::string expr;      // k(t, s)
  std::string envelope;  // Phi(s); empty: numeric envelope
  std::string weight;    // g(s); empty: g == 1
  double a = 0.0;
  double b = 1.0;
  bool diagonal_kink = false;
  bool is_signed = false;
  std::vector<double> s_kinks;
  std::vector<double> t_kinks;
  std::vector<double> weight_singularities;
  std::optional<double> c;
  std::optional<double> c1;
  bool operator==(const KernelConfig&) const = default;
};

struct TermConfig {
  Family family = Family::Lower;
  TermKind kind = TermKind::Gamma;
  std::string label;
  std::string function;    // expression in t
  std::vector<double> kinks;
  std::string functional;  // min_window | max_window | point:<tau> | stieltjes:<density id>
  std::optional<double> norm_bound;
  bool operator==(const TermConfig&) const = default;
};

struct DensityConfig {
  std::string id;
  std::string density;  // expression in s; empty: atoms only
  std::vector<double> breakpoints;
  std::vector<std::pair<double, double>> atoms;  // (tau, mass)
  bool operator==(const DensityConfig&) const = default;
};

struct NonlinearityConfig {
  std::string f;         // f(t, u, v)
  std::string f1;        // f1(t, u)
  std::string f2;        // f2(t, u)
  std::string f2_upper;  // closed form in rho; empty: sampled
  std::string f1_lower;  // closed form in rho, c; empty: sampled
  std::vector<double> t_kinks;
  bool operator==(const NonlinearityConfig&) const = default;
};

struct LimitsConfig {
  std::optional<double> f2_at_0;
  std::optional<double> f1_at_0;
  std::optional<double> f2_at_inf;
  std::optional<double> f1_at_inf;
  bool operator==(const LimitsConfig&) const = default;
};

struct AttestConfig {
  bool order_preserving = false;
  bool nonexistence_1 = false;
  bool nonexistence_2 = false;
  bool operator==(const AttestConfig&) const = default;
};

struct BoundaryConfig {
  std::string functional;  // empty: B == 0
  std::string map;         // expression in t, x
  bool operator==(const BoundaryConfig&) const = default;
};

struct DeviationConfig {
  DeviationKind kind = DeviationKind::None;
  std::string eta;  // expression in t
  bool operator==(const DeviationConfig&) const = default;
};

struct CertifyConfig {
  std::vector<double> rho;
  bool eig = true;
  int eig_nodes = 129;
  bool operator==(const CertifyConfig&) const = default;
};

struct SolverConfig {
  int nodes = 257;
  double damping = 0.5;
  double tol = 1e-10;
  int max_iter = 5000;
  Acceleration acceleration = Acceleration::None;
  int anderson_depth = 3;
  std::string u0;  // expression in t; empty: shell-based default
  bool operator==(const SolverConfig&) const = default;
  SolverOptions options() const;
};

// Plain-data image of a config file.
struct ProblemConfig {
  KernelConfig kernel;
  NonlinearityConfig nonlinearity;
  LimitsConfig limits;
  AttestConfig attest;
  BoundaryConfig boundary;
  DeviationConfig deviation;
  std::vector<TermConfig> terms;
  std::vector<DensityConfig> densities;
  CertifyConfig certify;
  SolverConfig solver;
  bool operator==(const ProblemConfig&) const = default;
};

// Errors carry ErrorCode::ConfigError with the line and field in the message.
ProblemConfig parse_config(std::string_view text, std::string_view origin = "<string>");
ProblemConfig load_config(const std::string& path);
std::string serialize_config(const ProblemConfig& config);

ProblemSpec build_problem(const ProblemConfig& config);

// FNV-1a 64-bit hash as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace hcert
