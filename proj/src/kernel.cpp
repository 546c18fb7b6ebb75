#include "hcert/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hcert/errors.hpp"

namespace hcert {

namespace {

constexpr double kConstRel = 1e-12;
constexpr double kConstAbs = 1e-14;
constexpr double kMinWindow = 1e-6;

void check_window(const Window& w, const char* where) {
  if (!(w.a >= 0.0 && w.b <= 1.0 && w.a < w.b))
    throw Error(ErrorCode::InvalidArgument, where, "window must satisfy 0 <= a < b <= 1");
  if (w.b - w.a < kMinWindow) throw Error(ErrorCode::DegenerateWindow, where, "window shorter than 1e-6");
}

}  // namespace

double KernelSpec::k_plus(double t, double s) const { return std::max(evaluate(t, s), 0.0); }

std::vector<double> KernelSpec::row_breakpoints(double t) const {
  std::vector<double> pts = s_kinks;
  pts.insert(pts.end(), weight_singularities.begin(), weight_singularities.end());
  if (diagonal_kink) pts.push_back(t);
  return interior_points(std::move(pts), 0.0, 1.0);
}

std::vector<double> KernelSpec::column_kinks(double s) const {
  std::vector<double> pts = t_kinks;
  if (diagonal_kink) pts.push_back(s);
  return interior_points(std::move(pts), 0.0, 1.0);
}

double compute_c1(const KernelSpec& kernel, int grid_density, double tol) {
  check_window(kernel.window, "compute_c1");
  if (!kernel.envelope) throw Error(ErrorCode::InvalidArgument, "compute_c1", "kernel has no envelope");
  const Interval win = kernel.window.interval();

  auto ratio = [&](double s) {
    double phi = kernel.envelope(s);
    if (!(phi > 0.0)) return std::numeric_limits<double>::infinity();
    ExtremumRequest env;
    env.objective = [&](double t) { return std::abs(kernel(t, s)); };
    env.interval = {0.0, 1.0};
    env.mode = ExtremumMode::Sup;
    env.kinks = kernel.column_kinks(s);
    env.seeds = 65;
    double top = extremize(env).value;
    if (top > phi * (1.0 + tol) + 1e-300)
      throw Error(ErrorCode::EnvelopeViolated, "compute_c1",
                  "|k(t," + std::to_string(s) + ")| = " + std::to_string(top) + " exceeds Phi = " +
                      std::to_string(phi));
    ExtremumRequest low;
    low.objective = [&](double t) { return kernel(t, s); };
    low.interval = win;
    low.mode = ExtremumMode::Inf;
    low.kinks = kernel.column_kinks(s);
    return extremize(low).value / phi;
  };

  // Phi typically vanishes at the ends of [0,1]; the infimum is taken over the interior.
  const double edge = 1e-9;
  ExtremumRequest outer;
  outer.objective = ratio;
  outer.interval = {edge, 1.0 - edge};
  outer.mode = ExtremumMode::Inf;
  outer.seeds = std::max(grid_density, 3);
  outer.tol = tol;
  std::vector<double> kinks = kernel.s_kinks;
  kinks.push_back(kernel.window.a);
  kinks.push_back(kernel.window.b);
  outer.kinks = std::move(kinks);
  double c1 = extremize(outer).value;
  if (!(c1 > tol))
    throw Error(ErrorCode::NonPositiveC1, "compute_c1",
                "inf of k/Phi over the window is " + std::to_string(c1));
  return std::min(c1, 1.0);
}

double sigma(const KernelSpec& kernel, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::DomainViolation, "sigma", "t outside [0,1]");
  return integrate([&](double s) { return std::abs(kernel(t, s)) * kernel.g(s); }, 0.0, 1.0,
                   kernel.row_breakpoints(t), kConstRel, kConstAbs);
}

double m_constant(const KernelSpec& kernel) {
  double top = sup_of([&](double t) { return sigma(kernel, t); }, {0.0, 1.0}, kernel.t_kinks).value;
  if (top <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / top;
}

double window_integral(const KernelSpec& kernel, double t) {
  const Window& w = kernel.window;
  return integrate([&](double s) { return kernel(t, s) * kernel.g(s); }, w.a, w.b, kernel.row_breakpoints(t),
                   kConstRel, kConstAbs);
}

double M_constant(const KernelSpec& kernel) {
  check_window(kernel.window, "M_constant");
  std::vector<double> kinks = kernel.t_kinks;
  double low = inf_of([&](double t) { return window_integral(kernel, t); }, kernel.window.interval(), kinks).value;
  if (!(low > 0.0))
    throw Error(ErrorCode::DegenerateWindow, "M_constant",
                "inf of the windowed integral is " + std::to_string(low));
  return 1.0 / low;
}

KernelSpec finalize_kernel(KernelSpec kernel) {
  check_window(kernel.window, "finalize_kernel");
  if (!kernel.evaluate) throw Error(ErrorCode::InvalidArgument, "finalize_kernel", "kernel callable missing");
  if (!kernel.envelope) {
    KernelSpec copy = kernel;
    kernel.envelope = [copy](double s) {
      return sup_of([&](double t) { return std::abs(copy(t, s)); }, {0.0, 1.0}, copy.column_kinks(s)).value;
    };
  }
  if (kernel.c1 <= 0.0) kernel.c1 = compute_c1(kernel);
  if (kernel.c <= 0.0) kernel.c = kernel.c1;
  if (!(kernel.c1 > 0.0 && kernel.c1 <= 1.0))
    throw Error(ErrorCode::NonPositiveC1, "finalize_kernel", "c1 must lie in (0,1]");
  if (!(kernel.c > 0.0 && kernel.c <= kernel.c1))
    throw Error(ErrorCode::InvalidArgument, "finalize_kernel", "c must lie in (0,c1]");
  std::vector<double> bps = kernel.s_kinks;
  bps.insert(bps.end(), kernel.weight_singularities.begin(), kernel.weight_singularities.end());
  double mass = integrate([&](double s) { return kernel.envelope(s) * kernel.g(s); }, kernel.window.a,
                          kernel.window.b, bps, 1e-8, 1e-14);
  if (!(mass > 0.0))
    throw Error(ErrorCode::InvalidArgument, "finalize_kernel", "int_a^b Phi g must be positive");
  return kernel;
}

KernelValidation validate_kernel(const KernelSpec& kernel, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> win(kernel.window.a, kernel.window.b);
  KernelValidation v;
  v.worst_envelope_excess = -std::numeric_limits<double>::infinity();
  v.worst_window_deficit = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    double t = unit(rng), s = unit(rng);
    double phi = kernel.envelope(s);
    v.worst_envelope_excess = std::max(v.worst_envelope_excess, std::abs(kernel(t, s)) - phi);
    double tw = win(rng);
    v.worst_window_deficit = std::max(v.worst_window_deficit, kernel.c1 * phi - kernel(tw, s));
  }
  v.samples = samples;
  v.ok = v.worst_envelope_excess <= 1e-12 && v.worst_window_deficit <= 1e-10;
  return v;
}

std::optional<PresetId> parse_preset(std::string_view name) {
  if (name == "dirichlet_max") return PresetId::DirichletMax;
  if (name == "periodic_deviation") return PresetId::PeriodicDeviation;
  return std::nullopt;
}

const char* preset_name(PresetId id) {
  return id == PresetId::DirichletMax ? "dirichlet_max" : "periodic_deviation";
}

namespace {

BuiltinProblem dirichlet(Window w) {
  const double a = w.a, b = w.b;
  BuiltinProblem p{PresetId::DirichletMax, {}, {}, {}, {}, {}, {}};
  KernelSpec& k = p.kernel;
  k.evaluate = [](double t, double s) { return s <= t ? s * (1.0 - t) : t * (1.0 - s); };
  k.envelope = [](double s) { return s * (1.0 - s); };
  k.window = w;
  k.diagonal_kink = true;
  k.id = "dirichlet_max";
  p.tilde_phi = [a, b](double s) { return s <= a / (1.0 - (b - a)) ? s * (1.0 - b) : a * (1.0 - s); };
  p.k_phi_min = [a, b](double s) { return std::min(a * (1.0 - s), s * (1.0 - b)); };
  p.k_phi_max = [a, b](double s) {
    if (s <= a) return s * (1.0 - a);
    if (s <= b) return s * (1.0 - s);
    return b * (1.0 - s);
  };
  p.sigma = [](double t) { return 0.5 * t * (1.0 - t); };
  p.window_integral = [a, b](double t) { return 0.5 * (a * a * (t - 1.0) - t * ((b - 2.0) * b + t)); };
  p.c1 = std::min(a, 1.0 - b);
  p.inv_m = 0.125;
  p.inv_M = a + b <= 1.0 ? 0.5 * a * (a - b) * (a + b - 2.0) : 0.5 * (b - 1.0) * (a - b) * (a + b);
  p.int_k_phi_max = -a * a * a / 6.0 + b * b * b / 6.0 - b * b / 2.0 + b / 2.0;
  return p;
}

// Distance from y to the nearest point of 1/2 + Z.
double dist_half(double y) {
  double r = y - std::floor(y);
  return std::abs(r - 0.5);
}

BuiltinProblem periodic(Window w) {
  const double a = w.a, b = w.b;
  const double e = std::numbers::e;
  const double scale = std::sqrt(e) / (e - 1.0);
  BuiltinProblem p{PresetId::PeriodicDeviation, {}, {}, {}, {}, {}, {}};
  KernelSpec& k = p.kernel;
  k.evaluate = [e](double t, double s) {
    return s <= t ? -(std::exp(s - t + 1.0) + std::exp(t - s)) / (2.0 - 2.0 * e)
                  : -(std::exp(s - t) + std::exp(t - s + 1.0)) / (2.0 - 2.0 * e);
  };
  const double top = (e + 1.0) / (2.0 * (e - 1.0));
  k.envelope = [top](double) { return top; };
  k.window = w;
  k.diagonal_kink = true;
  k.id = "periodic_deviation";
  // On [0,1], k(t,s) = scale*cosh(y - 1/2) with y = (t - s) mod 1; the window
  // maps to the arc y in [a - s, b - s].
  auto near = [a, b](double s) {
    double lo = a - s, hi = b - s;
    if (std::floor(hi - 0.5) >= std::ceil(lo - 0.5)) return 0.0;
    return std::min(dist_half(lo), dist_half(hi));
  };
  auto far = [a, b](double s) {
    double lo = a - s, hi = b - s;
    if (std::floor(hi) >= std::ceil(lo)) return 0.5;
    return std::max(dist_half(lo), dist_half(hi));
  };
  p.tilde_phi = [=](double s) { return scale * std::cosh(near(s)); };
  p.k_phi_min = p.tilde_phi;
  p.k_phi_max = [=](double s) { return scale * std::cosh(far(s)); };
  p.sigma = [](double) { return 1.0; };
  // Antiderivative of the periodic profile, integrating over whole periods exactly.
  auto prim = [scale](double y) {
    double fl = std::floor(y);
    return fl + scale * (std::sinh(y - fl - 0.5) - std::sinh(-0.5));
  };
  p.window_integral = [=](double t) { return prim(t - a) - prim(t - b); };
  p.c1 = 2.0 * std::sqrt(e) / (e + 1.0);
  p.inv_m = 1.0;
  p.inv_M = (std::exp(a - b + 1.0) - std::exp(b - a) + 1.0 - e) / (2.0 - 2.0 * e);
  p.int_k_phi_max = std::numeric_limits<double>::quiet_NaN();
  return p;
}

}  // namespace

BuiltinProblem make_preset(PresetId id, Window window, ScalarFn weight) {
  check_window(window, "make_preset");
  BuiltinProblem p = id == PresetId::DirichletMax ? dirichlet(window) : periodic(window);
  p.kernel.weight = std::move(weight);
  p.kernel.c1 = p.c1;
  p.kernel.c = p.c1;
  return p;
}

}  // namespace hcert
