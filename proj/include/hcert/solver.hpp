#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hcert/grid_function.hpp"
#include "hcert/multiplicity.hpp"
#include "hcert/problem.hpp"

namespace hcert {

// Collocation of Tu(t) = Bu(t) + int k(t,s) g(s) f(s, u(s), Du(s)) ds at fixed
// nodes: composite 4-point Gauss between consecutive breakpoints, with u read
// through its piecewise-cubic interpolant.
class DiscreteOperator {
 public:
  DiscreteOperator(const ProblemSpec& problem, std::vector<double> nodes);

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  GridFunction apply(const GridFunction& u) const;
  // Forward-difference Jacobian of u -> Tu.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const;

  const std::vector<double>& nodes() const { return nodes_; }
  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  const ProblemSpec* problem_;
  std::vector<double> nodes_;
  std::vector<double> points_;      // quadrature points s_q
  Eigen::MatrixXd weights_;         // k(t_i, s_q) g(s_q) w_q
  std::vector<Stencil> at_point_;   // interpolation of u(s_q)
  std::vector<Stencil> at_eta_;     // interpolation of u(eta(s_q))
};

GridFunction apply_T(const ProblemSpec& problem, const GridFunction& u);

enum class Acceleration { None, Anderson, Newton };
const char* acceleration_name(Acceleration a);
std::optional<Acceleration> parse_acceleration(std::string_view name);

struct SolverOptions {
  int nodes = 257;
  double damping = 0.5;
  double tol = 1e-10;
  int max_iter = 5000;
  Acceleration acceleration = Acceleration::None;
  int anderson_depth = 3;
};

enum class SolveStatus { Converged, NoConvergence, Diverged, NonFinite };
const char* solve_status_name(SolveStatus s);

struct SolveReport {
  GridFunction solution;
  double residual = 0.0;
  int iterations = 0;
  bool cone_ok = false;
  std::optional<std::pair<double, double>> shell;  // sup-norm range of the containing shell
  std::optional<int> shell_index;
  bool converged = false;
  bool trivial = false;
  SolveStatus status = SolveStatus::NoConvergence;
  Acceleration method = Acceleration::None;
  double sup_norm = 0.0;
  double window_min = 0.0;
  std::vector<std::string> notes;
};

// Iterates from u0 (resampled onto options.nodes uniform nodes). Failures are
// reported through status; they never contradict a certificate.
SolveReport picard_solve(const ProblemSpec& problem, const GridFunction& u0, const SolverOptions& options);

// Constant initial guess at the geometric mean of the shell's sup-norm range.
double default_initial_level(const Shell& shell, double c);

SolveReport shell_check(SolveReport report, const Certificate& certificate, double c);
SolveReport shell_check(SolveReport report, const ConditionLedger& ledger);

}  // namespace hcert
