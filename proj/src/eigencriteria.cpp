#include "hcert/eigencriteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hcert/errors.hpp"

namespace hcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kProductOrder = 12;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

const char* role_name(OperatorRole r) {
  switch (r) {
    case OperatorRole::L1: return "L1";
    case OperatorRole::L2: return "L2";
    case OperatorRole::Lbar: return "Lbar";
  }
  return "unknown";
}

double NystromOperator::kappa(double t, double s) const {
  double k = (*kernel)(t, s);
  return role == OperatorRole::L2 ? std::abs(k) : std::max(k, 0.0);
}

Eigen::RowVectorXd NystromOperator::row(double t) const {
  const int n = size();
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(n);
  const GaussRule& fine = gauss_legendre(kProductOrder);
  int off = 0;
  for (std::size_t p = 0; p + 1 < panels.size(); ++p) {
    const double p0 = panels[p], p1 = panels[p + 1];
    const int q = panel_order[p];
    const double eps = 1e-14 * (p1 - p0);
    const bool split = kernel->diagonal_kink && t > p0 + eps && t < p1 - eps;
    bool plain = !split;
    if (split) {
      // Product integration: int kappa(t,s) g(s) l_j(s) ds with the panel cut at the kink.
      std::vector<double> acc(q, 0.0);
      for (auto [lo, hi] : {std::pair{p0, t}, std::pair{t, p1}}) {
        double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo);
        for (int k = 0; k < kProductOrder; ++k) {
          double s = m + h * fine.nodes[k];
          double base = h * fine.weights[k] * kappa(t, s) * kernel->g(s);
          for (int j = 0; j < q; ++j) {
            double l = 1.0;
            for (int i = 0; i < q; ++i)
              if (i != j) l *= (s - nodes[off + i]) / (nodes[off + j] - nodes[off + i]);
            acc[j] += base * l;
          }
        }
      }
      double scale = 0.0;
      for (double v : acc) scale += std::abs(v);
      for (double v : acc)
        if (v < -1e-13 * scale) plain = true;
      if (!plain)
        for (int j = 0; j < q; ++j) out(off + j) = std::max(acc[j], 0.0);
    }
    if (plain)
      for (int j = 0; j < q; ++j) {
        double s = nodes[off + j];
        out(off + j) = weights[off + j] * kappa(t, s) * kernel->g(s);
      }
    off += q;
  }
  return out;
}

NystromOperator discretize(const KernelSpec& kernel, OperatorRole role, int n) {
  if (n < 33) throw Error(ErrorCode::InvalidArgument, "discretize", "need at least 33 nodes");
  NystromOperator op;
  op.role = role;
  op.kernel = std::make_shared<const KernelSpec>(kernel);
  op.domain = role == OperatorRole::L2 ? Interval{0.0, 1.0} : kernel.window.interval();
  const double lo = op.domain.lo, hi = op.domain.hi;

  std::vector<double> fixed = kernel.s_kinks;
  fixed.insert(fixed.end(), kernel.weight_singularities.begin(), kernel.weight_singularities.end());
  fixed = interior_points(std::move(fixed), lo, hi);
  std::vector<double> seg{lo};
  seg.insert(seg.end(), fixed.begin(), fixed.end());
  seg.push_back(hi);
  const int nseg = static_cast<int>(seg.size()) - 1;
  const int total = n / 4, extra = n % 4;
  if (total < nseg) throw Error(ErrorCode::InvalidArgument, "discretize", "too few nodes for the declared kinks");

  std::vector<int> count(nseg, 1);
  int assigned = nseg;
  while (assigned < total) {
    // give the next panel to the segment with the widest panels
    int best = 0;
    for (int i = 1; i < nseg; ++i)
      if ((seg[i + 1] - seg[i]) / count[i] > (seg[best + 1] - seg[best]) / count[best]) best = i;
    ++count[best];
    ++assigned;
  }
  op.panels.push_back(lo);
  for (int i = 0; i < nseg; ++i)
    for (int k = 1; k <= count[i]; ++k)
      op.panels.push_back(k == count[i] ? seg[i + 1] : seg[i] + (seg[i + 1] - seg[i]) * k / count[i]);
  for (int p = 0; p < total; ++p) op.panel_order.push_back(p < extra ? 5 : 4);

  for (int p = 0; p < total; ++p) {
    const GaussRule& r = gauss_legendre(op.panel_order[p]);
    double h = 0.5 * (op.panels[p + 1] - op.panels[p]), m = 0.5 * (op.panels[p + 1] + op.panels[p]);
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
      op.nodes.push_back(m + h * r.nodes[j]);
      op.weights.push_back(h * r.weights[j]);
    }
  }
  op.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) op.matrix.row(i) = op.row(op.nodes[i]);
  return op;
}

PowerResult power_iteration(const Eigen::MatrixXd& a, double tol, int max_iter) {
  PowerResult res;
  const Eigen::Index n = a.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  double prev = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd y = a * x;
    double r = y.maxCoeff();
    res.iterations = it;
    if (!(r > 0.0)) {
      res.radius = 0.0;
      res.vector = Eigen::VectorXd::Ones(n);
      return res;
    }
    x = y / r;
    if (it >= 3 && std::abs(r - prev) <= tol * r) {
      res.radius = r;
      res.vector = x;
      return res;
    }
    prev = r;
  }
  throw Error(ErrorCode::NoConvergence, "power_iteration", "last estimate " + fmt(prev));
}

SpectralEstimate spectral_radius_op(const NystromOperator& op) {
  SpectralEstimate est;
  PowerResult coarse, fine;
  NystromOperator refined = discretize(*op.kernel, op.role, 2 * op.size() + 1);
  try {
    coarse = power_iteration(op.matrix);
    fine = power_iteration(refined.matrix);
  } catch (const Error& e) {
    throw Error(ErrorCode::NoConvergence, "spectral_radius_op",
                std::string(e.what()) + " (n = " + std::to_string(op.size()) + ", estimates " + fmt(coarse.radius) +
                    ", " + fmt(fine.radius) + ")");
  }
  est.radius = coarse.radius;
  est.radius_fine = fine.radius;
  est.mu = coarse.radius > 0.0 ? 1.0 / coarse.radius : kInf;
  est.iterations = coarse.iterations;
  est.richardson_error = std::abs(fine.radius - coarse.radius);
  est.converged = est.richardson_error < 1e-6;
  est.nodal = coarse.vector;

  std::vector<double> grid = GridFunction::uniform_nodes(257), vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    vals[i] = coarse.radius > 0.0 ? op.row(grid[i]).dot(coarse.vector) / coarse.radius : 1.0;
  double top = 0.0;
  for (double v : vals) {
    if (v < -1e-10)
      throw Error(ErrorCode::InternalInconsistency, "spectral_radius_op", "eigenfunction is not nonnegative");
    top = std::max(top, v);
  }
  for (double& v : vals) v = std::max(v, 0.0) / top;
  est.eigenfunction = GridFunction(std::move(grid), std::move(vals));
  return est;
}

ComparisonResult comparison_upper_bound(const NystromOperator& op_bar, const ScalarFn& u, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "comparison_upper_bound", "lambda must be > 0");
  Eigen::VectorXd uv(op_bar.size());
  for (int i = 0; i < op_bar.size(); ++i) uv(i) = u(op_bar.nodes[i]);
  if ((uv.array() < -1e-14).any() || !(uv.maxCoeff() > 0.0))
    throw Error(ErrorCode::InvalidArgument, "comparison_upper_bound", "u must be nonnegative and nonzero");
  Eigen::VectorXd gap = op_bar.matrix * uv - lambda * uv;
  ComparisonResult r;
  r.worst_gap = gap.maxCoeff();
  r.bound_certified = r.worst_gap <= 1e-10;
  return r;
}

ComparisonResult comparison_upper_bound(const NystromOperator& op_bar, const GridFunction& u, double lambda) {
  return comparison_upper_bound(op_bar, [&u](double t) { return u(t); }, lambda);
}

bool AsymptoticLimits::sampled() const {
  for (const LimitValue* v : {&f2_at_0, &f1_at_0, &f2_at_inf, &f1_at_inf})
    if (v->source == BoundSource::Sampled) return true;
  return false;
}

double extrapolate_ratios(double r1, double r2, double r3) {
  for (double r : {r1, r2, r3})
    if (std::isnan(r)) throw Error(ErrorCode::NonFinite, "estimate_limits", "ratio is NaN");
  if (std::isinf(r3)) return r3 > 0 ? kInf : 0.0;
  if (r1 > 0.0 && r2 >= 2.0 * r1 && r3 >= 2.0 * r2) return kInf;
  if (r1 < 0.0 && r2 <= 2.0 * r1 && r3 <= 2.0 * r2) return 0.0;
  const double d1 = r2 - r1, d2 = r3 - r2;
  const double scale = std::max({std::abs(r1), std::abs(r2), std::abs(r3), 1e-300});
  if (std::abs(d2) <= 1e-14 * scale) return std::max(r3, 0.0);
  if (d1 * d2 < 0.0) {
    if (std::abs(d2) > 1e-9 * scale)
      throw Error(ErrorCode::NonFinite, "estimate_limits",
                  "erratic ratios " + fmt(r1) + ", " + fmt(r2) + ", " + fmt(r3));
    return std::max(r3, 0.0);
  }
  double denom = d2 - d1;
  double v = denom != 0.0 ? r3 - d2 * d2 / denom : r3;
  if (!std::isfinite(v)) v = r3;
  return std::max(v, 0.0);
}

namespace {

using Fn2 = std::function<double(double, double)>;

LimitValue sampled_limit(const Fn2& f, Interval ts, bool at_zero, bool sup, bool both_signs) {
  LimitValue lv;
  lv.source = BoundSource::Sampled;
  const double mags0[] = {1e-3, 1e-4, 1e-5}, magsInf[] = {1e3, 1e4, 1e5};
  const double* mags = at_zero ? mags0 : magsInf;
  for (int k = 0; k < 3; ++k) {
    double best = sup ? -kInf : kInf;
    for (int i = 0; i <= 128; ++i) {
      double t = ts.lo + ts.length() * i / 128.0;
      for (double sgn : {1.0, -1.0}) {
        if (sgn < 0 && !both_signs) continue;
        double r = f(t, sgn * mags[k]) / mags[k];
        best = sup ? std::max(best, r) : std::min(best, r);
      }
    }
    lv.samples.push_back(best);
  }
  lv.value = extrapolate_ratios(lv.samples[0], lv.samples[1], lv.samples[2]);
  return lv;
}

LimitValue resolve_limit(const std::optional<double>& declared, LimitMode mode, const Fn2& f, Interval ts,
                         bool at_zero, bool sup, bool both_signs, const char* name) {
  if (declared && mode != LimitMode::Sampled) {
    if (!(*declared >= 0.0)) throw Error(ErrorCode::InvalidArgument, "estimate_limits", std::string(name) + " < 0");
    return {*declared, BoundSource::Analytic, {}};
  }
  if (mode == LimitMode::Analytic)
    throw Error(ErrorCode::MissingLimits, "estimate_limits", std::string(name) + " is not declared");
  if (!f) throw Error(ErrorCode::MissingLimits, "estimate_limits", std::string("no function to sample ") + name);
  return sampled_limit(f, ts, at_zero, sup, both_signs);
}

}  // namespace

AsymptoticLimits estimate_limits(const ProblemSpec& problem, LimitMode mode) {
  const NonlinearitySpec& nl = problem.nonlinearity;
  const DeclaredLimits& d = nl.limits;
  const Interval all{0.0, 1.0}, win = problem.kernel.window.interval();
  AsymptoticLimits l;
  l.f2_at_0 = resolve_limit(d.f2_at_0, mode, nl.f2, all, true, true, true, "f2_at_0");
  l.f1_at_0 = resolve_limit(d.f1_at_0, mode, nl.f1, win, true, false, false, "f1_at_0");
  l.f2_at_inf = resolve_limit(d.f2_at_inf, mode, nl.f2, all, false, true, true, "f2_at_inf");
  l.f1_at_inf = resolve_limit(d.f1_at_inf, mode, nl.f1, win, false, false, false, "f1_at_inf");
  return l;
}

namespace {

ProvenancedValue limit_prov(const LimitValue& v, const char* name) {
  return {v.value, std::string("eigencriteria.estimate_limits:") + bound_source_name(v.source) + ":" + name,
          v.source == BoundSource::Sampled ? 1e-6 : 0.0};
}

}  // namespace

EigCriteria check_eig_criteria(const ProblemSpec& problem, const ConstantsTable& constants, int nodes) {
  EigCriteria e;
  e.limits = estimate_limits(problem, LimitMode::Auto);
  e.L1 = spectral_radius_op(discretize(problem.kernel, OperatorRole::L1, nodes));
  e.L2_bound = constants.sigma_sup;
  e.M = constants.M;
  if (!constants.h2_bound)
    throw Error(ErrorCode::MissingNormBound, "check_eig_criteria", "an upper functional has no norm bound");
  e.H2_bound = *constants.h2_bound;
  resolvent_lip_bound(e.H2_bound);

  const ProvenancedValue mu_prov{e.L1.mu, "eigencriteria.spectral_radius_op", std::max(e.L1.richardson_error, 1e-12)};

  ConditionResult& c1 = e.criterion1;
  c1.kind = ConditionKind::Eig1;
  double thr1 = e.L2_bound > 0.0 ? (1.0 - e.H2_bound) / e.L2_bound : kInf;
  decide(c1, e.limits.f2_at_0.value, thr1, Comparison::Less);
  c1.constants_used["f2_at_0"] = limit_prov(e.limits.f2_at_0, "f2_at_0");
  c1.constants_used["H2_bound"] = {e.H2_bound, "functionals.H2_lip_bound", 1e-9};
  c1.constants_used["L2_bound"] = {e.L2_bound, "kernel_toolkit.sigma(sup)", 1e-10};
  c1.notes.push_back("exact criterion f2_0 < mu((Id-H2)^-1 L2) not implemented; strengthened bound (1-||H2||*)/||L2|| used");
  c1.advisory = e.limits.f2_at_0.source == BoundSource::Sampled || !problem.attest.order_preserving;
  if (!problem.attest.order_preserving)
    c1.notes.push_back("order-preservation hypotheses not attested; result is advisory");

  auto mu_check = [&](ConditionResult& r, ConditionKind kind, const LimitValue& lim, const char* name, bool strong) {
    r.kind = kind;
    double lhs = strong ? e.M : e.L1.mu;
    decide(r, lhs, lim.value, Comparison::Less);
    r.constants_used[name] = limit_prov(lim, name);
    if (strong)
      r.constants_used["M(a,b)"] = {e.M, "kernel_toolkit.M_constant", 1e-10};
    else
      r.constants_used["mu(L1)"] = mu_prov;
    r.advisory = lim.source == BoundSource::Sampled || (!strong && !e.L1.converged);
    if (lim.source == BoundSource::Sampled) r.notes.push_back("limit obtained by sampling; advisory");
  };
  mu_check(e.criterion2, ConditionKind::Eig2, e.limits.f1_at_0, "f1_at_0", false);
  mu_check(e.criterion3, ConditionKind::Eig3, e.limits.f1_at_inf, "f1_at_inf", false);
  mu_check(e.criterion2_strong, ConditionKind::Eig2Strong, e.limits.f1_at_0, "f1_at_0", true);
  mu_check(e.criterion3_strong, ConditionKind::Eig3Strong, e.limits.f1_at_inf, "f1_at_inf", true);
  return e;
}

EigCriteria check_eig_criteria(const ProblemSpec& problem, int nodes) {
  return check_eig_criteria(problem, compute_constants(problem), nodes);
}

}  // namespace hcert
