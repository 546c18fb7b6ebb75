#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hcert/grid_function.hpp"
#include "hcert/index_conditions.hpp"
#include "hcert/kernel.hpp"
#include "hcert/problem.hpp"

namespace hcert {

// L1: k+ on [a,b] x [a,b] (extended to t in [0,1]); L2: |k| on [0,1]^2;
// Lbar: k+ on C[a,b].
enum class OperatorRole { L1, L2, Lbar };
const char* role_name(OperatorRole r);

struct NystromOperator {
  std::vector<double> nodes;
  std::vector<double> weights;
  Eigen::MatrixXd matrix;
  OperatorRole role = OperatorRole::L2;
  Interval domain;
  std::shared_ptr<const KernelSpec> kernel;
  std::vector<double> panels;       // panel boundaries
  std::vector<int> panel_order;     // Gauss order per panel

  double kappa(double t, double s) const;
  // Discrete row of the integral operator at an arbitrary t in [0,1].
  Eigen::RowVectorXd row(double t) const;
  int size() const { return static_cast<int>(nodes.size()); }
};

NystromOperator discretize(const KernelSpec& kernel, OperatorRole role, int n);

struct SpectralEstimate {
  double radius = 0.0;       // at n nodes
  double radius_fine = 0.0;  // at 2n+1 nodes
  double mu = 0.0;           // 1/radius (infinite when radius == 0)
  GridFunction eigenfunction;           // sup-norm 1 on [0,1]
  Eigen::VectorXd nodal;                // eigenvector on the operator nodes, max 1
  bool converged = false;
  double richardson_error = 0.0;
  int iterations = 0;
};

// Power iteration on a nonnegative matrix; returns (radius, vector with max 1, iterations).
struct PowerResult {
  double radius = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;
};
PowerResult power_iteration(const Eigen::MatrixXd& a, double tol = 1e-12, int max_iter = 100000);

SpectralEstimate spectral_radius_op(const NystromOperator& op);

struct ComparisonResult {
  bool bound_certified = false;
  double worst_gap = 0.0;  // max over nodes of (L u)(t_i) - lambda u(t_i)
};
ComparisonResult comparison_upper_bound(const NystromOperator& op_bar, const ScalarFn& u, double lambda);
ComparisonResult comparison_upper_bound(const NystromOperator& op_bar, const GridFunction& u, double lambda);

enum class LimitMode { Analytic, Sampled, Auto };

struct LimitValue {
  double value = 0.0;
  BoundSource source = BoundSource::Analytic;
  std::vector<double> samples;  // ratios at the three sample magnitudes
};

struct AsymptoticLimits {
  LimitValue f2_at_0;
  LimitValue f1_at_0;
  LimitValue f2_at_inf;
  LimitValue f1_at_inf;
  bool sampled() const;
};

// Analytic: every limit must be declared. Sampled: ratios at |u| = 1e-3..1e-5 and
// 1e3..1e5. Auto: declared where available, sampled otherwise.
AsymptoticLimits estimate_limits(const ProblemSpec& problem, LimitMode mode);

// Extrapolates three ratios approaching a limit; +inf on geometric growth.
double extrapolate_ratios(double r1, double r2, double r3);

struct EigCriteria {
  AsymptoticLimits limits;
  SpectralEstimate L1;
  double L2_bound = 0.0;           // sup_t int_0^1 |k| g
  double H2_bound = 0.0;           // sum ||psi_2j|| ||phi_2j||
  double M = 0.0;                  // M(a,b), threshold of the strengthened forms
  ConditionResult criterion1;
  ConditionResult criterion2;
  ConditionResult criterion3;
  ConditionResult criterion2_strong;
  ConditionResult criterion3_strong;
  bool exact_criterion1_implemented = false;
};

EigCriteria check_eig_criteria(const ProblemSpec& problem, const ConstantsTable& constants, int nodes = 129);
EigCriteria check_eig_criteria(const ProblemSpec& problem, int nodes = 129);

}  // namespace hcert
