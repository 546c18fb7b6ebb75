#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "hcert/cone_algebra.hpp"
#include "hcert/errors.hpp"
#include "hcert/index_conditions.hpp"
#include "hcert/kernel.hpp"
#include "hcert/multiplicity.hpp"
#include "hcert/psi.hpp"
#include "oracles.hpp"

namespace property {

using namespace hcert;

namespace {

void fail(Outcome& o, const char* fmt, double a, double b = 0.0) {
  if (!o.ok) return;
  o.ok = false;
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  o.detail = buf;
}

}  // namespace

Outcome envelope_inequalities(long samples, std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<KernelSpec> kernels;
  kernels.push_back(make_preset(PresetId::DirichletMax, {0.25, 0.75}).kernel);
  kernels.push_back(make_preset(PresetId::PeriodicDeviation, {0.25, 0.75}).kernel);
  kernels.push_back(make_preset(PresetId::DirichletMax, {0.1, 0.6}).kernel);
  KernelSpec custom;
  custom.evaluate = [](double t, double s) { return std::exp(-(t - s) * (t - s)); };
  custom.envelope = [](double) { return 1.0; };
  custom.window = {0.3, 0.7};
  kernels.push_back(finalize_kernel(custom));
  const long per = samples / static_cast<long>(kernels.size());
  for (const KernelSpec& k : kernels) {
    std::uniform_real_distribution<double> win(k.window.a, k.window.b);
    for (long i = 0; i < per; ++i) {
      double t = unit(rng), s = unit(rng), tw = win(rng);
      double phi = k.envelope(s);
      double excess = std::abs(k(t, s)) - phi;
      double deficit = k.c1 * phi - k(tw, s);
      o.worst = std::max({o.worst, excess, deficit});
      if (excess > 1e-12) fail(o, "envelope exceeded by %.3g at s=%.6g", excess, s);
      if (deficit > 1e-10) fail(o, "window lower bound missed by %.3g at s=%.6g", deficit, s);
      o.checks += 2;
    }
  }
  if (o.ok) o.detail = "kernels: dirichlet x2, periodic, gaussian";
  return o;
}

Outcome strong_dominance(int problems, std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int strong_held = 0, skipped = 0;
  for (int n = 0; n < problems; ++n) {
    double a = 0.1 + 0.2 * unit(rng), b = 0.6 + 0.3 * unit(rng);
    double p0 = 0.05 + 0.25 * unit(rng), p1 = unit(rng), theta = 0.05 + 0.35 * unit(rng);
    double alpha = 0.2 + 2.0 * unit(rng), beta = 0.5 * unit(rng);
    Window w{a, b};
    ProblemSpec p;
    p.kernel = make_preset(PresetId::DirichletMax, w).kernel;
    ScalarFn gam = [p0, p1](double t) { return p0 + p1 * t * (1.0 - t); };
    ScalarFn th = [theta](double) { return theta; };
    p.lower.push_back({TermKind::Gamma, gam, {}, FunctionalSpec::min_window(w, Family::Lower), "gamma"});
    p.lower.push_back({TermKind::Delta, th, {}, FunctionalSpec::min_window(w, Family::Lower), "theta"});
    p.upper.push_back({TermKind::Gamma, gam, {}, FunctionalSpec::max_window(w, Family::Upper), "gamma"});
    p.upper.push_back({TermKind::Delta, th, {}, FunctionalSpec::max_window(w, Family::Upper), "theta"});
    p.nonlinearity.f = [alpha, beta](double t, double u, double) { return alpha * t * u * u + beta; };
    p.nonlinearity.f1 = [alpha, beta](double t, double u) { return alpha * t * u * u + beta; };
    p.nonlinearity.f2 = p.nonlinearity.f1;
    p.nonlinearity.f2_upper = [alpha, beta](double rho) { return (alpha * rho * rho + beta) / rho; };
    p.nonlinearity.f1_lower = [alpha, beta, a](double rho, double) { return (alpha * a * rho * rho + beta) / rho; };
    try {
      IndexConditions ic(p);
      const ConstantsTable& ct = ic.constants();
      if (ct.i1_strong_bracket < ct.i1_bracket.value - 1e-12)
        fail(o, "strong I1 bracket %.15g below exact %.15g", ct.i1_strong_bracket, ct.i1_bracket.value);
      if (ct.i0_strong_bracket > ct.i0_bracket.value + 1e-12)
        fail(o, "strong I0 bracket %.15g above exact %.15g", ct.i0_strong_bracket, ct.i0_bracket.value);
      for (int k = 0; k < 4; ++k) {
        double rho = std::pow(10.0, -2.0 + 4.0 * unit(rng));
        ConditionResult i1 = ic.check_I1(rho), i1s = ic.check_I1_strong(rho);
        ConditionResult i0 = ic.check_I0(rho), i0s = ic.check_I0_strong(rho);
        if (i1s.holds && !i1.holds) fail(o, "I1 strong holds but exact fails at rho=%.6g", rho);
        if (i0s.holds && !i0.holds) fail(o, "I0 strong holds but exact fails at rho=%.6g", rho);
        strong_held += i1s.holds + i0s.holds;
        o.checks += 2;
      }
    } catch (const Error&) {
      ++skipped;
    }
  }
  if (o.ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d strong conditions held, %d problems rejected by hypotheses", strong_held,
                  skipped);
    o.detail = buf;
    if (strong_held == 0) {
      o.ok = false;
      o.detail = "vacuous: no strong condition held";
    }
  }
  return o;
}

namespace {

struct System {
  Eigen::MatrixXd m;
  Eigen::VectorXd rhs;
};

System random_system(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int n = 1 + static_cast<int>(unit(rng) * 6.0);
  System s;
  s.m.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.m(i, j) = unit(rng) < 0.25 ? 0.0 : unit(rng);
  double r = oracle::dense_spectral_radius(s.m);
  double target = 0.95 * unit(rng);
  if (r > 0.0) s.m *= target / r;
  s.rhs.resize(n);
  for (int i = 0; i < n; ++i) s.rhs(i) = unit(rng) < 0.2 ? 0.0 : unit(rng);
  return s;
}

}  // namespace

Outcome resolvent_positivity(int systems, std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < systems; ++k) {
    System s = random_system(rng);
    ResolventVector x = resolve_positive(CrossMatrix{s.m, Family::Upper}, 1.0, s.rhs);
    double neg = -x.values.minCoeff();
    double res = ((Eigen::MatrixXd::Identity(s.m.rows(), s.m.cols()) - s.m) * x.values - s.rhs).cwiseAbs().maxCoeff();
    o.worst = std::max({o.worst, neg, res});
    if (neg > 1e-14) fail(o, "negative resolvent entry %.3g", -neg);
    if (res > 1e-10) fail(o, "residual %.3g", res);
    ++o.checks;
  }
  return o;
}

Outcome neumann_agreement(int systems, std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < systems; ++k) {
    System s = random_system(rng);
    ResolventVector x = resolve_positive(CrossMatrix{s.m, Family::Upper}, 1.0, s.rhs);
    Eigen::VectorXd term = s.rhs, sum = s.rhs;
    for (int it = 0; it < 100000 && term.cwiseAbs().maxCoeff() > 1e-17; ++it) {
      term = s.m * term;
      sum += term;
    }
    double gap = (sum - x.values).cwiseAbs().maxCoeff();
    o.worst = std::max(o.worst, gap);
    if (gap > 1e-8) fail(o, "direct and Neumann differ by %.3g", gap);
    ++o.checks;
  }
  return o;
}

Outcome triangle_property(int pairs, std::uint64_t seed) {
  Outcome o;
  Window w{0.25, 0.75};
  ConeSampler sampler(w, 0.25, seed);
  StieltjesMeasure mu;
  mu.density_id = "unit";
  mu.density = [](double s) { return 1.0 + s; };
  mu.atoms.push_back({0.4, 0.5});
  std::vector<FunctionalSpec> upper = {FunctionalSpec::max_window(w, Family::Upper),
                                       FunctionalSpec::point(0.5, Family::Upper),
                                       FunctionalSpec::stieltjes(mu, Family::Upper)};
  FunctionalSpec lower = FunctionalSpec::min_window(w, Family::Lower);
  for (int k = 0; k < pairs; ++k) {
    ScalarFn u = sampler.next(), v = sampler.next();
    ScalarFn sum = [&](double t) { return u(t) + v(t); };
    ScalarFn diff = [&](double t) { return std::abs(u(t) - v(t)); };
    for (const FunctionalSpec& phi : upper) {
      double pu = apply_functional(phi, u), pv = apply_functional(phi, v);
      double sub = apply_functional(phi, sum) - pu - pv;
      double tri = std::abs(pu - pv) - apply_functional(phi, diff);
      double tol = 1e-9 * (1.0 + std::abs(pu) + std::abs(pv));
      o.worst = std::max({o.worst, sub, tri});
      if (sub > tol) fail(o, "subadditivity violated by %.3g", sub);
      if (tri > tol) fail(o, "triangle property violated by %.3g", tri);
      o.checks += 2;
    }
    double sup = apply_functional(lower, u) + apply_functional(lower, v) - apply_functional(lower, sum);
    o.worst = std::max(o.worst, sup);
    if (sup > 1e-9) fail(o, "superadditivity of the lower functional violated by %.3g", sup);
    ++o.checks;
  }
  return o;
}

Outcome ledger_soundness(int ledgers, std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ConditionResult holds;
  holds.holds = true;
  auto random_entry = [&]() {
    double rho = std::pow(10.0, -1.0 + 3.0 * unit(rng));
    if (unit(rng) < 0.1) rho = std::round(rho);
    return std::pair{std::max(rho, 0.1), unit(rng) < 0.5 ? IndexKind::I0 : IndexKind::I1};
  };
  for (int k = 0; k < ledgers; ++k) {
    ConditionLedger ledger;
    ledger.c = 0.1 + 0.9 * unit(rng);
    std::vector<std::pair<double, IndexKind>> raw;
    int n = 1 + static_cast<int>(unit(rng) * 7.0);
    for (int i = 0; i < n; ++i) {
      raw.push_back(random_entry());
      ledger.add(raw.back().first, raw.back().second, holds);
    }
    Certificate cert = match_patterns(ledger);
    if (cert.pattern != Pattern::NONE && !validate_pattern(cert.pattern, cert.rhos, ledger.c))
      fail(o, "emitted pattern fails validation (ledger %g)", k);
    int best = oracle::brute_force_best(raw, ledger.c);
    if (cert.solution_count != best) fail(o, "count %g differs from brute force %g", cert.solution_count, best);
    if (static_cast<int>(cert.shells.size()) != cert.solution_count) fail(o, "shell count mismatch (ledger %g)", k);
    for (int s = 0; s < 200; ++s) {
      double sup = std::pow(10.0, -1.5 + 4.0 * unit(rng));
      double mn = sup * (ledger.c + (1.0 - ledger.c) * unit(rng));
      int inside = 0;
      for (const Shell& sh : cert.shells) inside += sh.contains(sup, mn);
      if (inside > 1) fail(o, "point (%.6g, ...) lies in two shells", sup);
    }
    auto extra = random_entry();
    ledger.add(extra.first, extra.second, holds);
    if (match_patterns(ledger).solution_count < cert.solution_count)
      fail(o, "adding an entry decreased the count (ledger %g)", k);
    o.checks += 4;
  }
  return o;
}

}  // namespace property
