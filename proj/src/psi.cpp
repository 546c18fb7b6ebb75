#include "hcert/psi.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>

#include "hcert/errors.hpp"

namespace hcert {

namespace {

constexpr double kConeTol = 1e-9;
constexpr double kZeroTol = 1e-12;
constexpr double kKphiTol = 1e-10;

}  // namespace

void check_deviation(const ProblemSpec& problem) {
  if (problem.deviation.kind != DeviationKind::Composition) return;
  if (!problem.deviation.eta)
    throw Error(ErrorCode::InvalidArgument, "check_deviation", "composition deviation without eta");
  const Window& w = problem.kernel.window;
  for (int i = 0; i <= 1024; ++i) {
    double t = i / 1024.0;
    double e = problem.deviation.eta(t);
    if (!(e >= w.a - 1e-12 && e <= w.b + 1e-12))
      throw Error(ErrorCode::DomainViolation, "check_deviation",
                  "eta(" + std::to_string(t) + ") = " + std::to_string(e) + " leaves the window");
  }
}

std::vector<const FamilyTerm*> ordered_terms(const ProblemSpec& problem, Family family) {
  const auto& terms = family == Family::Lower ? problem.lower : problem.upper;
  std::vector<const FamilyTerm*> out;
  for (const FamilyTerm& t : terms)
    if (t.kind == TermKind::Gamma) out.push_back(&t);
  for (const FamilyTerm& t : terms)
    if (t.kind == TermKind::Delta) out.push_back(&t);
  return out;
}

double tilde_gamma(const KernelSpec& kernel, const FamilyTerm& term, double t) {
  std::vector<double> bps = kernel.row_breakpoints(t);
  bps.insert(bps.end(), term.kinks.begin(), term.kinks.end());
  return integrate([&](double s) { return std::abs(kernel(t, s)) * kernel.g(s) * term.function(s); }, 0.0, 1.0,
                   std::move(bps), 1e-12, 1e-14);
}

namespace {

PsiFunction make_psi(const ProblemSpec& problem, const FamilyTerm& term) {
  const KernelSpec& kernel = problem.kernel;
  PsiFunction p;
  if (!term.function) throw Error(ErrorCode::InvalidArgument, "build_psi", "family term without a function");
  if (term.kind == TermKind::Gamma) {
    KernelSpec k = kernel;
    FamilyTerm copy = term;
    p.eval = [k, copy](double t) { return tilde_gamma(k, copy, t); };
    p.kinks = kernel.t_kinks;
    p.label = term.label.empty() ? "tilde_gamma" : "tilde_" + term.label;
  } else {
    p.eval = term.function;
    p.kinks = term.kinks;
    p.label = term.label.empty() ? "delta" : term.label;
  }
  p.sup_norm = sup_of([&](double t) { return std::abs(p.eval(t)); }, {0.0, 1.0}, p.kinks).value;
  if (p.sup_norm < kZeroTol)
    throw Error(ErrorCode::PsiZero, "build_psi", "psi function '" + p.label + "' vanishes");
  const Interval win = kernel.window.interval();
  p.window_min = inf_of(p.eval, win, p.kinks).value;
  p.window_max = sup_of(p.eval, win, p.kinks).value;
  if (p.window_min < kernel.c * p.sup_norm - kConeTol)
    throw Error(ErrorCode::PsiNotInCone, "build_psi",
                "psi function '" + p.label + "' has window minimum " + std::to_string(p.window_min) +
                    " below c*||psi|| = " + std::to_string(kernel.c * p.sup_norm));
  return p;
}

void check_functionals_nonnegative(const ProblemSpec& problem, const PsiFunction& p) {
  for (const auto* terms : {&problem.lower, &problem.upper})
    for (const FamilyTerm& t : *terms) {
      double v = apply_functional(t.functional, p.eval, p.kinks);
      if (v < -kConeTol)
        throw Error(ErrorCode::PsiNotInCone, "build_psi",
                    "functional " + t.functional.describe() + " is negative on '" + p.label + "'");
    }
}

}  // namespace

PsiFamily build_psi(const ProblemSpec& problem) {
  PsiFamily fam;
  for (Family f : {Family::Lower, Family::Upper}) {
    auto& out = f == Family::Lower ? fam.lower : fam.upper;
    for (const FamilyTerm* t : ordered_terms(problem, f)) {
      out.push_back(make_psi(problem, *t));
      check_functionals_nonnegative(problem, out.back());
    }
  }
  return fam;
}

double K_phi(const FunctionalSpec& phi, const KernelSpec& kernel, double s) {
  ScalarFn section;
  if (phi.family == Family::Lower)
    section = [&](double t) { return kernel(t, s); };
  else
    section = [&](double t) { return std::abs(kernel(t, s)); };
  double v = apply_functional(phi, section, kernel.column_kinks(s));
  if (v < -kKphiTol)
    throw Error(ErrorCode::NegativeKphi, "K_phi",
                phi.describe() + " gives K_phi(" + std::to_string(s) + ") = " + std::to_string(v));
  return std::max(v, 0.0);
}

double K_phi_integral(const FunctionalSpec& phi, const KernelSpec& kernel) {
  const bool lower = phi.family == Family::Lower;
  const double lo = lower ? kernel.window.a : 0.0;
  const double hi = lower ? kernel.window.b : 1.0;
  std::vector<double> bps = kernel.s_kinks;
  bps.insert(bps.end(), kernel.weight_singularities.begin(), kernel.weight_singularities.end());
  bps.insert(bps.end(), kernel.t_kinks.begin(), kernel.t_kinks.end());
  if (phi.kind == FunctionalKind::MinWindow || phi.kind == FunctionalKind::MaxWindow) {
    bps.push_back(phi.window.a);
    bps.push_back(phi.window.b);
  }
  if (phi.kind == FunctionalKind::PointEval) bps.push_back(phi.tau);
  if (phi.kind == FunctionalKind::Stieltjes) {
    for (const Atom& a : phi.measure.atoms) bps.push_back(a.tau);
    bps.insert(bps.end(), phi.measure.breakpoints.begin(), phi.measure.breakpoints.end());
  }
  return integrate([&](double s) { return K_phi(phi, kernel, s) * kernel.g(s); }, lo, hi, std::move(bps), 1e-12,
                   1e-14);
}

double H2_lip_bound(const ProblemSpec& problem, const PsiFamily& psi) {
  auto terms = ordered_terms(problem, Family::Upper);
  double sum = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (!terms[j]->functional.has_norm())
      throw Error(ErrorCode::MissingNormBound, "H2_lip_bound",
                  "upper functional " + terms[j]->functional.describe() + " has no norm bound");
    sum += psi.upper[j].sup_norm * terms[j]->functional.norm();
  }
  return sum;
}

double H2_lip_bound(const ProblemSpec& problem) { return H2_lip_bound(problem, build_psi(problem)); }

ConeSampler::ConeSampler(Window window, double c, std::uint64_t seed) : window_(window), c_(c), rng_(seed) {}

ScalarFn ConeSampler::next() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = window_.a, b = window_.b;
  for (;;) {
    double level = 0.5 + 1.5 * unit(rng_);
    double budget = level * (1.0 - c_) / (1.0 + c_);
    std::array<double, 3> amp{}, phase{};
    double share = 0.0;
    for (int k = 0; k < 3; ++k) {
      amp[k] = unit(rng_);
      share += amp[k];
      phase[k] = 2.0 * std::numbers::pi * unit(rng_);
    }
    double scale = budget * unit(rng_) / share;
    for (double& x : amp) x *= scale;
    double dip_left = a > 0.0 ? level * unit(rng_) : 0.0;
    double dip_right = b < 1.0 ? level * unit(rng_) : 0.0;
    ScalarFn u = [=](double t) {
      double v = level;
      for (int k = 0; k < 3; ++k) v += amp[k] * std::sin((k + 1) * std::numbers::pi * t + phase[k]);
      if (t < a) v -= dip_left * ((a - t) / a) * ((a - t) / a);
      if (t > b) v -= dip_right * ((t - b) / (1.0 - b)) * ((t - b) / (1.0 - b));
      return v;
    };
    double top = 0.0, low = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 128; ++i) {
      double t = i / 128.0;
      top = std::max(top, std::abs(u(t)));
      if (t >= a && t <= b) low = std::min(low, u(t));
    }
    if (low >= c_ * top * (1.0 + 1e-3)) return u;
  }
}

namespace {

bool fail(FunctionalValidation& v, const std::string& what) {
  v.ok = false;
  v.failure = what;
  return false;
}

}  // namespace

FunctionalValidation validate_functional(const FunctionalSpec& phi, const KernelSpec& kernel, int samples,
                                         std::uint64_t seed) {
  FunctionalValidation v;
  ConeSampler sampler(kernel.window, kernel.c > 0 ? kernel.c : kernel.c1, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tol = 1e-9;
  auto eval = [&](const ScalarFn& u) { return apply_functional(phi, u); };
  for (int i = 0; i < samples; ++i) {
    ScalarFn u = sampler.next(), w = sampler.next();
    double t1 = 2.0 * unit(rng), t2 = 2.0 * unit(rng);
    ScalarFn comb = [&](double t) { return t1 * u(t) + t2 * w(t); };
    double pu = eval(u), pw = eval(w), pc = eval(comb);
    double scale = 1.0 + std::abs(pu) + std::abs(pw);
    if (phi.family == Family::Lower) {
      if (pc < t1 * pu + t2 * pw - tol * scale) {
        fail(v, "superadditivity violated");
        break;
      }
    } else {
      if (pc > t1 * pu + t2 * pw + tol * scale) {
        fail(v, "subadditivity violated");
        break;
      }
      ScalarFn diff = [&](double t) { return std::abs(u(t) - w(t)); };
      if (std::abs(pu - pw) > eval(diff) + tol * scale) {
        fail(v, "|phi[u]-phi[v]| <= phi[|u-v|] violated");
        break;
      }
      ScalarFn absu = [&](double t) { return std::abs(u(t)); };
      if (eval(absu) < -tol) {
        fail(v, "negative on a nonnegative input");
        break;
      }
    }
    double bump = unit(rng);
    ScalarFn bigger = [&](double t) { return u(t) + bump * (1.0 + std::sin(3.0 * t) * 0.5); };
    if (eval(bigger) < pu - 1e-10 * scale) {
      fail(v, "monotonicity violated");
      break;
    }
    v.samples = i + 1;
  }
  return v;
}

}  // namespace hcert
