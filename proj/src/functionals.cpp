#include "hcert/functionals.hpp"

#include <cmath>
#include <cstdio>

#include "hcert/errors.hpp"

namespace hcert {

const char* family_name(Family f) { return f == Family::Lower ? "lower" : "upper"; }

FunctionalSpec FunctionalSpec::min_window(Window w, Family fam) {
  FunctionalSpec s;
  s.kind = FunctionalKind::MinWindow;
  s.family = fam;
  s.window = w;
  return s;
}

FunctionalSpec FunctionalSpec::max_window(Window w, Family fam) {
  FunctionalSpec s = min_window(w, fam);
  s.kind = FunctionalKind::MaxWindow;
  return s;
}

FunctionalSpec FunctionalSpec::point(double tau, Family fam) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "FunctionalSpec", "point evaluation outside [0,1]");
  FunctionalSpec s;
  s.kind = FunctionalKind::PointEval;
  s.family = fam;
  s.tau = tau;
  return s;
}

FunctionalSpec FunctionalSpec::stieltjes(StieltjesMeasure m, Family fam) {
  for (const Atom& a : m.atoms)
    if (!(a.tau >= 0.0 && a.tau <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "FunctionalSpec", "atom outside [0,1]");
  FunctionalSpec s;
  s.kind = FunctionalKind::Stieltjes;
  s.family = fam;
  s.measure = std::move(m);
  return s;
}

bool FunctionalSpec::has_norm() const { return norm_bound.has_value() || kind != FunctionalKind::Custom; }

double FunctionalSpec::norm() const {
  if (norm_bound) return *norm_bound;
  switch (kind) {
    case FunctionalKind::MinWindow:
    case FunctionalKind::MaxWindow:
    case FunctionalKind::PointEval:
      return 1.0;
    case FunctionalKind::Stieltjes: {
      double tv = 0.0;
      if (measure.density) {
        const ScalarFn& w = measure.density;
        tv = integrate([&](double s) { return std::abs(w(s)); }, 0.0, 1.0, measure.breakpoints, 1e-12, 1e-14);
      }
      for (const Atom& a : measure.atoms) tv += std::abs(a.mass);
      return tv;
    }
    case FunctionalKind::Custom:
      break;
  }
  throw Error(ErrorCode::MissingNormBound, "FunctionalSpec::norm",
              "functional '" + describe() + "' has no norm bound");
}

std::string FunctionalSpec::describe() const {
  if (!label.empty()) return label;
  char buf[64];
  switch (kind) {
    case FunctionalKind::MinWindow: return "min_window";
    case FunctionalKind::MaxWindow: return "max_window";
    case FunctionalKind::PointEval:
      std::snprintf(buf, sizeof buf, "point:%.15g", tau);
      return buf;
    case FunctionalKind::Stieltjes: return "stieltjes:" + measure.density_id;
    case FunctionalKind::Custom: return "custom";
  }
  return "unknown";
}

namespace {

double stieltjes_value(const StieltjesMeasure& m, const ScalarFn& u, const std::vector<double>& kinks) {
  double v = 0.0;
  if (m.density) {
    std::vector<double> bps = m.breakpoints;
    bps.insert(bps.end(), kinks.begin(), kinks.end());
    v = integrate([&](double s) { return u(s) * m.density(s); }, 0.0, 1.0, std::move(bps), 1e-12, 1e-14);
  }
  for (const Atom& a : m.atoms) v += a.mass * u(a.tau);
  return v;
}

}  // namespace

double apply_functional(const FunctionalSpec& phi, const ScalarFn& u, const std::vector<double>& kinks) {
  switch (phi.kind) {
    case FunctionalKind::MinWindow:
      return inf_of(u, phi.window.interval(), kinks).value;
    case FunctionalKind::MaxWindow:
      return sup_of(u, phi.window.interval(), kinks).value;
    case FunctionalKind::PointEval:
      return u(phi.tau);
    case FunctionalKind::Stieltjes:
      return stieltjes_value(phi.measure, u, kinks);
    case FunctionalKind::Custom:
      if (!phi.custom) throw Error(ErrorCode::InvalidArgument, "apply_functional", "custom functional missing");
      return phi.custom(u, kinks);
  }
  return 0.0;
}

double apply_functional(const FunctionalSpec& phi, const GridFunction& u) {
  switch (phi.kind) {
    case FunctionalKind::MinWindow:
      return u.min_on(phi.window.interval()).value;
    case FunctionalKind::MaxWindow:
      return u.max_on(phi.window.interval()).value;
    case FunctionalKind::PointEval:
      return u(phi.tau);
    case FunctionalKind::Stieltjes: {
      const StieltjesMeasure& m = phi.measure;
      double v = 0.0;
      if (m.density) {
        // The interpolant is a cubic on each node interval; an 8-point rule per
        // piece (split at density kinks) is accurate for smooth densities.
        const GaussRule& r = gauss_legendre(8);
        std::vector<double> cuts = m.breakpoints;
        cuts.insert(cuts.end(), u.nodes().begin(), u.nodes().end());
        cuts = interior_points(std::move(cuts), 0.0, 1.0);
        cuts.insert(cuts.begin(), 0.0);
        cuts.push_back(1.0);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
          double h = 0.5 * (cuts[i + 1] - cuts[i]), mid = 0.5 * (cuts[i + 1] + cuts[i]);
          for (int q = 0; q < 8; ++q) {
            double s = mid + h * r.nodes[q];
            v += h * r.weights[q] * u(s) * m.density(s);
          }
        }
      }
      for (const Atom& a : m.atoms) v += a.mass * u(a.tau);
      return v;
    }
    case FunctionalKind::Custom: {
      ScalarFn f = [&u](double t) { return u(t); };
      return apply_functional(phi, f, u.nodes());
    }
  }
  return 0.0;
}

}  // namespace hcert
