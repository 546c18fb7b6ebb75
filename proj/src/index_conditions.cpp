#include "hcert/index_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hcert/errors.hpp"

namespace hcert {

const char* condition_name(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::I1: return "I1";
    case ConditionKind::I0: return "I0";
    case ConditionKind::I1Strong: return "I1_strong";
    case ConditionKind::I0Strong: return "I0_strong";
    case ConditionKind::Nonexist1: return "nonexist_1";
    case ConditionKind::Nonexist2: return "nonexist_2";
    case ConditionKind::Eig1: return "eig_1";
    case ConditionKind::Eig2: return "eig_2";
    case ConditionKind::Eig3: return "eig_3";
    case ConditionKind::Eig2Strong: return "eig_2_strong";
    case ConditionKind::Eig3Strong: return "eig_3_strong";
  }
  return "unknown";
}

const char* bound_source_name(BoundSource s) { return s == BoundSource::Analytic ? "analytic" : "sampled"; }

void decide(ConditionResult& r, double lhs, double threshold, Comparison cmp) {
  r.lhs = lhs;
  r.threshold = threshold;
  r.comparison = cmp;
  if (std::isinf(lhs) && std::isinf(threshold) && (lhs > 0) == (threshold > 0))
    r.margin = 0.0;
  else
    r.margin = cmp == Comparison::Less ? threshold - lhs : lhs - threshold;
  r.holds = r.margin > kCertMargin;
}

namespace {

using Fn2 = std::function<double(double, double)>;

// Grid optimisation of f(t,u)/rho followed by alternating golden-section polish.
double sample_ratio(const Fn2& f, Interval ts, Interval us, double rho, ExtremumMode mode) {
  const int n = 256;
  const bool sup = mode == ExtremumMode::Sup;
  auto val = [&](double t, double u) { return f(t, u) / rho; };
  double best = sup ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  double bt = ts.lo, bu = us.lo;
  for (int i = 0; i <= n; ++i) {
    double t = ts.lo + ts.length() * i / n;
    for (int j = 0; j <= n; ++j) {
      double u = us.lo + us.length() * j / n;
      double v = val(t, u);
      if (std::isnan(v)) throw Error(ErrorCode::NonFinite, "sample_ratio", "nonlinearity is NaN");
      if (sup ? v > best : v < best) best = v, bt = t, bu = u;
    }
  }
  if (std::isinf(best)) return best;
  const double ht = ts.length() / n, hu = us.length() / n;
  for (int round = 0; round < 3; ++round) {
    ExtremumRequest rt;
    rt.objective = [&](double t) { return val(t, bu); };
    rt.interval = {std::max(ts.lo, bt - ht), std::min(ts.hi, bt + ht)};
    rt.mode = mode;
    rt.seeds = 5;
    rt.tol = 1e-12;
    if (rt.interval.hi > rt.interval.lo) {
      ExtremumResult r = extremize(rt);
      if (sup ? r.value > best : r.value < best) best = r.value, bt = r.arg;
    }
    ExtremumRequest ru;
    ru.objective = [&](double u) { return val(bt, u); };
    ru.interval = {std::max(us.lo, bu - hu), std::min(us.hi, bu + hu)};
    ru.mode = mode;
    ru.seeds = 5;
    ru.tol = 1e-12 * std::max(1.0, rho);
    if (ru.interval.hi > ru.interval.lo) {
      ExtremumResult r = extremize(ru);
      if (sup ? r.value > best : r.value < best) best = r.value, bu = r.arg;
    }
  }
  return best;
}

}  // namespace

double sample_f2_upper(const Fn2& f2, double rho) {
  return sample_ratio(f2, {0.0, 1.0}, {-rho, rho}, rho, ExtremumMode::Sup);
}

double sample_f1_lower(const Fn2& f1, Window w, double rho, double c) {
  return sample_ratio(f1, w.interval(), {rho, rho / c}, rho, ExtremumMode::Inf);
}

BoundValue f2_upper(const ProblemSpec& problem, double rho) {
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "f2_upper", "rho must be positive");
  const NonlinearitySpec& nl = problem.nonlinearity;
  if (nl.f2_upper) return {nl.f2_upper(rho), BoundSource::Analytic};
  if (!nl.f2) throw Error(ErrorCode::InvalidArgument, "f2_upper", "no f2 supplied");
  return {std::max(sample_f2_upper(nl.f2, rho), 0.0), BoundSource::Sampled};
}

BoundValue f1_lower(const ProblemSpec& problem, double rho) {
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "f1_lower", "rho must be positive");
  const NonlinearitySpec& nl = problem.nonlinearity;
  if (nl.f1_lower) return {nl.f1_lower(rho, problem.c()), BoundSource::Analytic};
  if (!nl.f1) throw Error(ErrorCode::InvalidArgument, "f1_lower", "no f1 supplied");
  return {std::max(sample_f1_lower(nl.f1, problem.kernel.window, rho, problem.c()), 0.0), BoundSource::Sampled};
}

void validate_problem_functionals(const ProblemSpec& problem) {
  for (const auto* terms : {&problem.lower, &problem.upper})
    for (const FamilyTerm& t : *terms) {
      const FunctionalSpec& phi = t.functional;
      if (phi.kind == FunctionalKind::Stieltjes && phi.family == Family::Upper) {
        bool negative = false;
        for (const Atom& a : phi.measure.atoms) negative |= a.mass < 0.0;
        if (phi.measure.density)
          for (int i = 0; i <= 1024 && !negative; ++i) negative |= phi.measure.density(i / 1024.0) < 0.0;
        if (negative)
          throw Error(ErrorCode::FunctionalValidationFailed, "validate_problem_functionals",
                      "signed Stieltjes measures are only accepted in the lower family");
      }
      if (phi.kind == FunctionalKind::Custom) {
        FunctionalValidation v = validate_functional(phi, problem.kernel);
        if (!v.ok)
          throw Error(ErrorCode::FunctionalValidationFailed, "validate_problem_functionals",
                      phi.describe() + ": " + v.failure + " after " + std::to_string(v.samples) + " samples");
      }
    }
}

ConstantsTable compute_constants(const ProblemSpec& problem) {
  validate_problem_functionals(problem);
  const KernelSpec& kernel = problem.kernel;
  ConstantsTable ct;
  ct.c1 = kernel.c1;
  ct.c = kernel.c;
  ct.psi = build_psi(problem);
  ct.M1 = build_cross_matrix(Family::Lower, problem, ct.psi);
  ct.M2 = build_cross_matrix(Family::Upper, problem, ct.psi);
  ct.c8 = check_C8(ct.M1, ct.M2, ct.c1);

  auto upper = ordered_terms(problem, Family::Upper);
  auto lower = ordered_terms(problem, Family::Lower);
  ct.kphi_upper.resize(static_cast<Eigen::Index>(upper.size()));
  for (std::size_t j = 0; j < upper.size(); ++j) ct.kphi_upper(j) = K_phi_integral(upper[j]->functional, kernel);
  ct.kphi_lower.resize(static_cast<Eigen::Index>(lower.size()));
  for (std::size_t j = 0; j < lower.size(); ++j) ct.kphi_lower(j) = K_phi_integral(lower[j]->functional, kernel);
  if (ct.c8.r2 < 1.0) ct.x_upper = resolve_positive(ct.M2, 1.0, ct.kphi_upper, "int_0^1 K_phi2 g");
  if (ct.c1 * ct.c8.r1 < 1.0) ct.x_lower = resolve_positive(ct.M1, ct.c1, ct.kphi_lower, "int_a^b K_phi1 g");

  ct.sigma_sup = sup_of([&](double t) { return sigma(kernel, t); }, {0.0, 1.0}, kernel.t_kinks).value;
  ct.m = ct.sigma_sup > 0.0 ? 1.0 / ct.sigma_sup : std::numeric_limits<double>::infinity();
  ct.M = M_constant(kernel);
  ct.inv_M = 1.0 / ct.M;

  std::vector<double> kinks = kernel.t_kinks;
  for (const auto* fam : {&ct.psi.lower, &ct.psi.upper})
    for (const PsiFunction& p : *fam) kinks.insert(kinks.end(), p.kinks.begin(), p.kinks.end());

  if (ct.x_upper) {
    const Eigen::VectorXd x = ct.x_upper->values;
    auto bracket = [&](double t) {
      double v = sigma(kernel, t);
      for (std::size_t j = 0; j < ct.psi.upper.size(); ++j) v += std::abs(ct.psi.upper[j].eval(t)) * x(j);
      return v;
    };
    ct.i1_bracket = sup_of(bracket, {0.0, 1.0}, kinks);
    double strong = ct.sigma_sup;
    for (std::size_t j = 0; j < ct.psi.upper.size(); ++j) strong += ct.psi.upper[j].sup_norm * x(j);
    ct.i1_strong_bracket = strong;
  }
  if (ct.x_lower) {
    const Eigen::VectorXd x = ct.x_lower->values;
    auto psi_sum = [&](double t) {
      double v = 0.0;
      for (std::size_t j = 0; j < ct.psi.lower.size(); ++j) v += ct.psi.lower[j].eval(t) * x(j);
      return v;
    };
    ct.i0_bracket = inf_of([&](double t) { return psi_sum(t) + window_integral(kernel, t); },
                           kernel.window.interval(), kinks);
    double low = ct.psi.lower.empty() ? 0.0 : inf_of(psi_sum, kernel.window.interval(), kinks).value;
    ct.i0_strong_bracket = low + ct.inv_M;
  }
  bool norms = true;
  for (const FamilyTerm* t : upper) norms &= t->functional.has_norm();
  if (norms) ct.h2_bound = H2_lip_bound(problem, ct.psi);
  return ct;
}

IndexConditions::IndexConditions(ProblemSpec problem)
    : problem_(std::move(problem)), constants_(compute_constants(problem_)) {}

IndexConditions::IndexConditions(ProblemSpec problem, ConstantsTable constants)
    : problem_(std::move(problem)), constants_(std::move(constants)) {}

namespace {

void add_vector(Provenance& p, const std::string& name, const Eigen::VectorXd& v, const std::string& src,
                double tol) {
  for (Eigen::Index j = 0; j < v.size(); ++j) p[name + "[" + std::to_string(j) + "]"] = {v(j), src, tol};
}

}  // namespace

ConditionResult IndexConditions::i1_common(double rho, ConditionKind kind, double bracket) const {
  if (!constants_.x_upper)
    throw Error(ErrorCode::SpectralRadiusTooLarge, "check_I1",
                "r(M2) = " + std::to_string(constants_.c8.r2) + " >= 1; resolvent does not exist");
  ConditionResult r;
  r.kind = kind;
  r.rho = rho;
  BoundValue f2 = f2_upper(problem_, rho);
  decide(r, f2.value * bracket, 1.0, Comparison::Less);
  r.advisory = f2.source == BoundSource::Sampled;
  auto& p = r.constants_used;
  p["f2_upper"] = {f2.value, std::string("index_conditions.f2_upper:") + bound_source_name(f2.source),
                   f2.source == BoundSource::Sampled ? 1e-9 : 0.0};
  p["bracket"] = {bracket, kind == ConditionKind::I1 ? "index_conditions.i1_bracket(extremize sup)"
                                                      : "index_conditions.i1_strong_bracket",
                  1e-9};
  if (kind == ConditionKind::I1) p["bracket_argmax_t"] = {constants_.i1_bracket.arg, "quadrature.extremize", 1e-9};
  p["r(M2)"] = {constants_.c8.r2, "cone_algebra.spectral_radius", 1e-12};
  p["sigma_sup"] = {constants_.sigma_sup, "kernel_toolkit.sigma", 1e-10};
  add_vector(p, "resolvent_upper", constants_.x_upper->values, "cone_algebra.resolve_positive", 1e-10);
  if (r.advisory) r.notes.push_back("f2 bound obtained by grid sampling; not rigorous");
  return r;
}

ConditionResult IndexConditions::check_I1(double rho) const {
  return i1_common(rho, ConditionKind::I1, constants_.i1_bracket.value);
}

ConditionResult IndexConditions::check_I1_strong(double rho) const {
  return i1_common(rho, ConditionKind::I1Strong, constants_.i1_strong_bracket);
}

ConditionResult IndexConditions::i0_common(double rho, ConditionKind kind, double bracket) const {
  if (!constants_.x_lower)
    throw Error(ErrorCode::SpectralRadiusTooLarge, "check_I0",
                "c1 r(M1) = " + std::to_string(constants_.c1 * constants_.c8.r1) + " >= 1; resolvent does not exist");
  ConditionResult r;
  r.kind = kind;
  r.rho = rho;
  BoundValue f1 = f1_lower(problem_, rho);
  decide(r, f1.value * bracket, 1.0, Comparison::Greater);
  r.advisory = f1.source == BoundSource::Sampled;
  auto& p = r.constants_used;
  p["f1_lower"] = {f1.value, std::string("index_conditions.f1_lower:") + bound_source_name(f1.source),
                   f1.source == BoundSource::Sampled ? 1e-9 : 0.0};
  p["bracket"] = {bracket, kind == ConditionKind::I0 ? "index_conditions.i0_bracket(extremize inf)"
                                                      : "index_conditions.i0_strong_bracket",
                  1e-9};
  if (kind == ConditionKind::I0) p["bracket_argmin_t"] = {constants_.i0_bracket.arg, "quadrature.extremize", 1e-9};
  p["r(M1)"] = {constants_.c8.r1, "cone_algebra.spectral_radius", 1e-12};
  p["c1"] = {constants_.c1, "kernel_toolkit.compute_c1", 1e-9};
  p["c"] = {constants_.c, "kernel_toolkit", 0.0};
  p["inv_M"] = {constants_.inv_M, "kernel_toolkit.M_constant", 1e-10};
  add_vector(p, "resolvent_lower", constants_.x_lower->values, "cone_algebra.resolve_positive", 1e-10);
  if (r.advisory) r.notes.push_back("f1 bound obtained by grid sampling; not rigorous");
  return r;
}

ConditionResult IndexConditions::check_I0(double rho) const {
  return i0_common(rho, ConditionKind::I0, constants_.i0_bracket.value);
}

ConditionResult IndexConditions::check_I0_strong(double rho) const {
  return i0_common(rho, ConditionKind::I0Strong, constants_.i0_strong_bracket);
}

std::pair<ConditionResult, ConditionResult> IndexConditions::check_nonexistence() const {
  const NonlinearitySpec& nl = problem_.nonlinearity;
  const Window& w = problem_.kernel.window;
  std::vector<double> mags;
  for (int k = -60; k <= 60; ++k) mags.push_back(std::pow(10.0, k / 10.0));

  ConditionResult one;
  one.kind = ConditionKind::Nonexist1;
  if (!constants_.h2_bound)
    throw Error(ErrorCode::MissingNormBound, "check_nonexistence", "an upper functional has no norm bound");
  const double h2 = *constants_.h2_bound;
  one.constants_used["H2_bound"] = {h2, "functionals.H2_lip_bound", 1e-9};
  one.constants_used["m"] = {constants_.m, "kernel_toolkit.m_constant", 1e-10};
  if (h2 >= 1.0 || !nl.f2) {
    decide(one, std::numeric_limits<double>::infinity(), constants_.m * (1.0 - h2), Comparison::Less);
    one.holds = false;
    one.notes.push_back(h2 >= 1.0 ? "sum of ||psi_2j|| ||phi_2j|| is not below 1" : "no f2 supplied");
  } else {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 128; ++i) {
      double t = i / 128.0;
      for (double u : mags)
        for (double sgn : {-1.0, 1.0}) worst = std::max(worst, nl.f2(t, sgn * u) / u);
    }
    decide(one, worst, constants_.m * (1.0 - h2), Comparison::Less);
    one.advisory = !problem_.attest.nonexistence_1;
    one.notes.push_back("lhs = max of f2(t,u)/|u| over t-grid x |u| in [1e-6, 1e6]");
    if (one.advisory) one.notes.push_back("SampledOnly: no analytic attestation supplied");
  }

  ConditionResult two;
  two.kind = ConditionKind::Nonexist2;
  two.constants_used["M"] = {constants_.M, "kernel_toolkit.M_constant", 1e-10};
  if (!nl.f1) {
    decide(two, -std::numeric_limits<double>::infinity(), constants_.M, Comparison::Greater);
    two.holds = false;
    two.notes.push_back("no f1 supplied");
  } else {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 128; ++i) {
      double t = w.a + (w.b - w.a) * i / 128.0;
      for (double u : mags) worst = std::min(worst, nl.f1(t, u) / u);
    }
    decide(two, worst, constants_.M, Comparison::Greater);
    two.advisory = !problem_.attest.nonexistence_2;
    two.notes.push_back("lhs = min of f1(t,u)/u over [a,b]-grid x u in [1e-6, 1e6]");
    if (two.advisory) two.notes.push_back("SampledOnly: no analytic attestation supplied");
  }
  return {one, two};
}

ConditionResult check_I1(const ProblemSpec& p, double rho) { return IndexConditions(p).check_I1(rho); }
ConditionResult check_I1_strong(const ProblemSpec& p, double rho) { return IndexConditions(p).check_I1_strong(rho); }
ConditionResult check_I0(const ProblemSpec& p, double rho) { return IndexConditions(p).check_I0(rho); }
ConditionResult check_I0_strong(const ProblemSpec& p, double rho) { return IndexConditions(p).check_I0_strong(rho); }
std::pair<ConditionResult, ConditionResult> check_nonexistence(const ProblemSpec& p) {
  return IndexConditions(p).check_nonexistence();
}

void consistency_check(const ConditionResult& nonexist_1, const std::vector<ConditionResult>& results) {
  if (!nonexist_1.holds) return;
  for (const ConditionResult& r : results)
    if ((r.kind == ConditionKind::I0 || r.kind == ConditionKind::I0Strong) && r.holds)
      throw Error(ErrorCode::InternalInconsistency, "consistency_check",
                  "non-existence clause 1 holds together with I0 at rho = " + std::to_string(r.rho.value_or(0.0)));
}

}  // namespace hcert
