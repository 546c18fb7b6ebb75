#include "hcert/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hcert/errors.hpp"
#include "hcert/functionals.hpp"

namespace hcert {

namespace {

constexpr int kGaussOrder = 4;
constexpr double kDivergence = 1e6;
constexpr double kConeSlack = 1e-8;
constexpr double kTrivial = 1e-8;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double interp(const Stencil& st, const Eigen::VectorXd& u) {
  double v = 0.0;
  for (int k = 0; k < st.count; ++k) v += st.weights[k] * u(st.first + k);
  return v;
}

double sup_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

DiscreteOperator::DiscreteOperator(const ProblemSpec& problem, std::vector<double> nodes)
    : problem_(&problem), nodes_(std::move(nodes)) {
  if (nodes_.size() < 4) throw Error(ErrorCode::InvalidArgument, "DiscreteOperator", "need at least 4 nodes");
  const GridFunction layout(nodes_, std::vector<double>(nodes_.size(), 0.0));
  std::vector<double> cuts = nodes_;
  for (double x : problem.kernel.s_kinks) cuts.push_back(x);
  for (double x : problem.kernel.weight_singularities) cuts.push_back(x);
  for (double x : problem.nonlinearity.t_kinks) cuts.push_back(x);
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [](double x) { return x < 0.0 || x > 1.0; }), cuts.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return y - x < 1e-14; }), cuts.end());

  const GaussRule& rule = gauss_legendre(kGaussOrder);
  std::vector<double> w;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double h = 0.5 * (cuts[p + 1] - cuts[p]), m = 0.5 * (cuts[p + 1] + cuts[p]);
    for (int k = 0; k < kGaussOrder; ++k) {
      points_.push_back(m + h * rule.nodes[k]);
      w.push_back(h * rule.weights[k]);
    }
  }
  const int n = size(), q = static_cast<int>(points_.size());
  weights_.resize(n, q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < q; ++j)
      weights_(i, j) = problem.kernel(nodes_[i], points_[j]) * problem.kernel.g(points_[j]) * w[j];
  if (!weights_.allFinite())
    throw Error(ErrorCode::NonFinite, "DiscreteOperator", "kernel or weight not finite at a quadrature point");

  at_point_.reserve(q);
  for (double s : points_) at_point_.push_back(layout.stencil(s));
  if (problem.deviation.kind == DeviationKind::Composition) {
    if (!problem.deviation.eta)
      throw Error(ErrorCode::InvalidArgument, "DiscreteOperator", "composition deviation without eta");
    at_eta_.reserve(q);
    for (double s : points_) {
      double e = problem.deviation.eta(s);
      if (!(e >= -1e-12 && e <= 1.0 + 1e-12))
        throw Error(ErrorCode::DomainViolation, "DiscreteOperator", "eta(" + fmt(s) + ") = " + fmt(e) + " leaves [0,1]");
      at_eta_.push_back(layout.stencil(std::clamp(e, 0.0, 1.0)));
    }
  }
}

Eigen::VectorXd DiscreteOperator::apply(const Eigen::VectorXd& u) const {
  const ProblemSpec& pb = *problem_;
  const int q = static_cast<int>(points_.size());
  Eigen::VectorXd fv(q);
  for (int j = 0; j < q; ++j) {
    double us = interp(at_point_[j], u);
    double vs = 0.0;
    switch (pb.deviation.kind) {
      case DeviationKind::None: break;
      case DeviationKind::Identity: vs = us; break;
      case DeviationKind::Composition: vs = interp(at_eta_[j], u); break;
    }
    fv(j) = pb.nonlinearity.f(points_[j], us, vs);
  }
  Eigen::VectorXd out = weights_ * fv;
  if (pb.boundary.present()) {
    std::vector<double> vals(u.data(), u.data() + u.size());
    double x = apply_functional(*pb.boundary.functional, GridFunction(nodes_, std::move(vals)));
    for (int i = 0; i < size(); ++i) out(i) += pb.boundary.map(nodes_[i], x);
  }
  return out;
}

GridFunction DiscreteOperator::apply(const GridFunction& u) const {
  if (u.nodes() != nodes_) throw Error(ErrorCode::InvalidArgument, "DiscreteOperator::apply", "node mismatch");
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(u.values().data(), u.size());
  Eigen::VectorXd tv = apply(v);
  return GridFunction(nodes_, std::vector<double>(tv.data(), tv.data() + tv.size()));
}

Eigen::MatrixXd DiscreteOperator::jacobian(const Eigen::VectorXd& u) const {
  const int n = size();
  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd base = apply(u);
  Eigen::VectorXd probe = u;
  for (int j = 0; j < n; ++j) {
    double h = 1e-7 * std::max(1.0, std::abs(u(j)));
    probe(j) = u(j) + h;
    jac.col(j) = (apply(probe) - base) / h;
    probe(j) = u(j);
  }
  return jac;
}

GridFunction apply_T(const ProblemSpec& problem, const GridFunction& u) {
  return DiscreteOperator(problem, u.nodes()).apply(u);
}

const char* acceleration_name(Acceleration a) {
  switch (a) {
    case Acceleration::None: return "none";
    case Acceleration::Anderson: return "anderson";
    case Acceleration::Newton: return "newton";
  }
  return "none";
}

std::optional<Acceleration> parse_acceleration(std::string_view name) {
  if (name == "none" || name == "picard") return Acceleration::None;
  if (name == "anderson") return Acceleration::Anderson;
  if (name == "newton") return Acceleration::Newton;
  return std::nullopt;
}

const char* solve_status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::NoConvergence: return "no_convergence";
    case SolveStatus::Diverged: return "diverged";
    case SolveStatus::NonFinite: return "non_finite";
  }
  return "no_convergence";
}

namespace {

struct IterState {
  Eigen::VectorXd u;
  Eigen::VectorXd tu;
  double residual = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::NoConvergence;
};

bool guard(IterState& st) {
  if (!st.u.allFinite() || !st.tu.allFinite()) {
    st.status = SolveStatus::NonFinite;
    return false;
  }
  if (sup_abs(st.u) > kDivergence) {
    st.status = SolveStatus::Diverged;
    return false;
  }
  return true;
}

void run_picard(const DiscreteOperator& op, IterState& st, const SolverOptions& o) {
  for (;;) {
    st.tu = op.apply(st.u);
    if (!guard(st)) return;
    st.residual = sup_abs(st.u - st.tu);
    if (st.residual < o.tol) {
      st.status = SolveStatus::Converged;
      return;
    }
    if (st.iterations >= o.max_iter) return;
    st.u = (1.0 - o.damping) * st.u + o.damping * st.tu;
    ++st.iterations;
  }
}

// Anderson mixing on the damped map G(u) = (1-d)u + d Tu.
void run_anderson(const DiscreteOperator& op, IterState& st, const SolverOptions& o) {
  const int m = std::max(1, o.anderson_depth);
  std::vector<Eigen::VectorXd> dG, dF;
  Eigen::VectorXd g_prev, f_prev;
  for (;;) {
    st.tu = op.apply(st.u);
    if (!guard(st)) return;
    Eigen::VectorXd f = st.tu - st.u;
    st.residual = sup_abs(f);
    if (st.residual < o.tol) {
      st.status = SolveStatus::Converged;
      return;
    }
    if (st.iterations >= o.max_iter) return;
    Eigen::VectorXd g = st.u + o.damping * f;
    if (g_prev.size()) {
      dG.push_back(g - g_prev);
      dF.push_back(f - f_prev);
      if (static_cast<int>(dF.size()) > m) {
        dG.erase(dG.begin());
        dF.erase(dF.begin());
      }
    }
    g_prev = g;
    f_prev = f;
    Eigen::VectorXd next = g;
    if (!dF.empty()) {
      Eigen::MatrixXd Fm(f.size(), dF.size()), Gm(f.size(), dG.size());
      for (std::size_t k = 0; k < dF.size(); ++k) {
        Fm.col(k) = dF[k];
        Gm.col(k) = dG[k];
      }
      Eigen::VectorXd gamma = Fm.colPivHouseholderQr().solve(f);
      if (gamma.allFinite()) next = g - Gm * gamma;
    }
    st.u = next;
    ++st.iterations;
  }
}

// Newton on u - Tu with backtracking on the sup-norm residual.
void run_newton(const DiscreteOperator& op, IterState& st, const SolverOptions& o) {
  const int n = op.size();
  const int budget = std::min(o.max_iter, 200);
  for (;;) {
    st.tu = op.apply(st.u);
    if (!guard(st)) return;
    Eigen::VectorXd r = st.u - st.tu;
    st.residual = sup_abs(r);
    if (st.residual < o.tol) {
      st.status = SolveStatus::Converged;
      return;
    }
    if (st.iterations >= budget) return;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n) - op.jacobian(st.u);
    Eigen::VectorXd step = jac.partialPivLu().solve(-r);
    if (!step.allFinite()) {
      st.status = SolveStatus::NonFinite;
      return;
    }
    double lambda = 1.0;
    Eigen::VectorXd trial;
    for (int k = 0; k < 30; ++k, lambda *= 0.5) {
      trial = st.u + lambda * step;
      Eigen::VectorXd tt = op.apply(trial);
      if (tt.allFinite() && sup_abs(trial - tt) < st.residual) break;
    }
    st.u = trial;
    ++st.iterations;
  }
}

}  // namespace

SolveReport picard_solve(const ProblemSpec& problem, const GridFunction& u0, const SolverOptions& o) {
  if (o.nodes < 4) throw Error(ErrorCode::InvalidArgument, "picard_solve", "need at least 4 nodes");
  if (!(o.damping > 0.0 && o.damping <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "picard_solve", "damping must lie in (0,1]");
  if (!(o.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "picard_solve", "tolerance must be positive");
  std::vector<double> nodes = GridFunction::uniform_nodes(o.nodes);
  DiscreteOperator op(problem, nodes);

  IterState st;
  st.u.resize(o.nodes);
  for (int i = 0; i < o.nodes; ++i) st.u(i) = u0(nodes[i]);
  switch (o.acceleration) {
    case Acceleration::None: run_picard(op, st, o); break;
    case Acceleration::Anderson: run_anderson(op, st, o); break;
    case Acceleration::Newton: run_newton(op, st, o); break;
  }

  SolveReport rep;
  rep.method = o.acceleration;
  rep.iterations = st.iterations;
  rep.residual = st.residual;
  rep.status = st.status;
  rep.converged = st.status == SolveStatus::Converged;
  rep.solution = GridFunction(nodes, std::vector<double>(st.u.data(), st.u.data() + st.u.size()));
  if (!st.u.allFinite()) {
    rep.notes.push_back("iteration produced non-finite values");
    return rep;
  }
  rep.sup_norm = rep.solution.sup_norm();
  rep.window_min = rep.solution.min_on(problem.kernel.window.interval()).value;
  rep.trivial = rep.sup_norm < kTrivial;
  bool cone = rep.window_min >= problem.c() * rep.sup_norm - kConeSlack;
  for (const auto* fam : {&problem.lower, &problem.upper})
    for (const FamilyTerm& term : *fam)
      if (apply_functional(term.functional, rep.solution) < -kConeSlack) cone = false;
  rep.cone_ok = cone;
  if (!rep.converged)
    rep.notes.push_back(std::string("solver stopped with status ") + solve_status_name(rep.status) +
                        "; this does not contradict any existence certificate");
  return rep;
}

double default_initial_level(const Shell& shell, double c) {
  auto [lo, hi] = shell.sup_norm_range(c);
  if (lo > 0.0 && std::isfinite(hi)) return std::sqrt(lo * hi);
  if (lo > 0.0) return 2.0 * lo;
  if (std::isfinite(hi)) return 0.5 * hi;
  return 1.0;
}

SolveReport shell_check(SolveReport report, const Certificate& certificate, double c) {
  report.shell.reset();
  report.shell_index.reset();
  if (report.trivial) {
    report.notes.push_back("trivial solution lies outside every certified shell");
    return report;
  }
  for (std::size_t k = 0; k < certificate.shells.size(); ++k) {
    const Shell& s = certificate.shells[k];
    if (s.contains(report.sup_norm, report.window_min)) {
      if (!s.inner && !s.outer) report.notes.push_back("certified shell has no quantified radii");
      report.shell = s.sup_norm_range(c);
      report.shell_index = static_cast<int>(k);
      return report;
    }
  }
  report.notes.push_back("solution outside every certified shell");
  return report;
}

SolveReport shell_check(SolveReport report, const ConditionLedger& ledger) {
  return shell_check(std::move(report), match_patterns(ledger), ledger.c);
}

}  // namespace hcert
