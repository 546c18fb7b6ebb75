#include "hcert/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "hcert/errors.hpp"

namespace hcert {

namespace {

constexpr int kMaxRule = 64;

GaussRule build_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

struct Panel {
  double lo, hi;
  double value;  // two-half estimate
  double err;
};

double g15(const ScalarFn& f, double lo, double hi) {
  const GaussRule& r = gauss_legendre(15);
  double h = 0.5 * (hi - lo), m = 0.5 * (hi + lo), s = 0.0;
  for (int i = 0; i < 15; ++i) s += r.weights[i] * f(m + h * r.nodes[i]);
  return s * h;
}

Panel make_panel(const ScalarFn& f, double lo, double hi, double whole) {
  double mid = 0.5 * (lo + hi);
  double halves = g15(f, lo, mid) + g15(f, mid, hi);
  if (!std::isfinite(halves))
    throw Error(ErrorCode::QuadratureFailure, "integrate", "non-finite integrand value");
  return {lo, hi, halves, std::abs(halves - whole)};
}

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.lo > y.lo;
  }
};

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const std::array<GaussRule, kMaxRule + 1> rules = [] {
    std::array<GaussRule, kMaxRule + 1> out;
    for (int k = 1; k <= kMaxRule; ++k) out[k] = build_rule(k);
    return out;
  }();
  if (n < 1 || n > kMaxRule)
    throw Error(ErrorCode::InvalidArgument, "gauss_legendre", "order out of range: " + std::to_string(n));
  return rules[n];
}

std::vector<double> interior_points(std::vector<double> pts, double lo, double hi) {
  std::vector<double> out;
  for (double p : pts)
    if (p > lo && p < hi) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

IntegrationResult integrate(const IntegrationRequest& req) {
  const double lo = req.interval.lo, hi = req.interval.hi;
  if (!(hi > lo))
    throw Error(ErrorCode::InvalidArgument, "integrate", "empty interval");
  if (!(req.rel_tol > 0) || !(req.abs_tol > 0))
    throw Error(ErrorCode::InvalidArgument, "integrate", "tolerances must be positive");

  std::vector<double> cuts = interior_points(req.breakpoints, lo, hi);
  cuts.insert(cuts.begin(), lo);
  cuts.push_back(hi);

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> work;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    work.push(make_panel(req.integrand, cuts[i], cuts[i + 1], g15(req.integrand, cuts[i], cuts[i + 1])));

  auto totals = [&](double& value, double& err) {
    std::vector<Panel> all;
    auto copy = work;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    value = 0.0;
    err = 0.0;
    for (const Panel& p : all) {
      value += p.value;
      err += p.err;
    }
  };

  // Running sums are only used to decide when to stop; the reported value is
  // re-summed in interval order so the result does not depend on queue history.
  double err_sum = 0.0, val_sum = 0.0;
  {
    auto copy = work;
    while (!copy.empty()) {
      err_sum += copy.top().err;
      val_sum += copy.top().value;
      copy.pop();
    }
  }
  int count = static_cast<int>(work.size());
  while (err_sum > std::max(req.abs_tol, req.rel_tol * std::abs(val_sum))) {
    if (count >= req.max_subdivisions) {
      double v, e;
      totals(v, e);
      throw Error(ErrorCode::QuadratureFailure, "integrate",
                  "subdivision budget exhausted (estimate " + std::to_string(v) + ", error " +
                      std::to_string(e) + ")");
    }
    Panel p = work.top();
    work.pop();
    double mid = 0.5 * (p.lo + p.hi);
    if (!(mid > p.lo && mid < p.hi))
      throw Error(ErrorCode::QuadratureFailure, "integrate", "panel width underflow");
    double left_whole = g15(req.integrand, p.lo, mid);
    double right_whole = g15(req.integrand, mid, p.hi);
    Panel l = make_panel(req.integrand, p.lo, mid, left_whole);
    Panel r = make_panel(req.integrand, mid, p.hi, right_whole);
    err_sum += l.err + r.err - p.err;
    val_sum += l.value + r.value - p.value;
    work.push(l);
    work.push(r);
    ++count;
  }

  IntegrationResult res;
  totals(res.value, res.error_estimate);
  res.panels = count;
  return res;
}

double integrate(const ScalarFn& f, double lo, double hi, std::vector<double> breakpoints, double rel_tol,
                 double abs_tol) {
  if (hi == lo) return 0.0;
  IntegrationRequest req;
  req.integrand = f;
  req.interval = {lo, hi};
  req.breakpoints = std::move(breakpoints);
  req.rel_tol = rel_tol;
  req.abs_tol = abs_tol;
  return integrate(req).value;
}

namespace {

bool better(double a, double b, ExtremumMode mode) {
  return mode == ExtremumMode::Sup ? a > b : a < b;
}

ExtremumResult golden(const ScalarFn& f, double lo, double hi, ExtremumMode mode, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double sign = mode == ExtremumMode::Sup ? -1.0 : 1.0;  // minimize sign*f
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = sign * f(x1), f2 = sign * f(x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = sign * f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = sign * f(x2);
    }
  }
  return f1 <= f2 ? ExtremumResult{x1, sign * f1} : ExtremumResult{x2, sign * f2};
}

}  // namespace

ExtremumResult extremize(const ExtremumRequest& req) {
  const double lo = req.interval.lo, hi = req.interval.hi;
  if (!(hi >= lo))
    throw Error(ErrorCode::InvalidArgument, "extremize", "empty interval");
  if (!(req.tol > 0))
    throw Error(ErrorCode::InvalidArgument, "extremize", "tolerance must be positive");
  if (hi == lo) return {lo, req.objective(lo)};

  const int n = std::max(req.seeds, 3);
  std::vector<double> xs;
  xs.reserve(n + req.kinks.size());
  for (int k = 0; k < n; ++k)
    xs.push_back(0.5 * (lo + hi) - 0.5 * (hi - lo) * std::cos(std::numbers::pi * k / (n - 1)));
  xs.front() = lo;
  xs.back() = hi;
  for (double k : req.kinks)
    if (k > lo && k < hi) xs.push_back(k);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fs[i] = req.objective(xs[i]);
    if (std::isnan(fs[i]))
      throw Error(ErrorCode::NonFinite, "extremize", "objective is NaN at " + std::to_string(xs[i]));
  }

  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return better(fs[a], fs[b], req.mode); });

  ExtremumResult best{xs[order[0]], fs[order[0]]};
  const std::size_t polish = std::min<std::size_t>(3, order.size());
  for (std::size_t k = 0; k < polish; ++k) {
    std::size_t i = order[k];
    double a = xs[i == 0 ? 0 : i - 1];
    double b = xs[i + 1 == xs.size() ? i : i + 1];
    ExtremumResult r = golden(req.objective, a, b, req.mode, req.tol);
    if (better(r.value, best.value, req.mode)) best = r;
  }
  return best;
}

ExtremumResult sup_of(const ScalarFn& f, Interval iv, std::vector<double> kinks) {
  ExtremumRequest req;
  req.objective = f;
  req.interval = iv;
  req.mode = ExtremumMode::Sup;
  req.kinks = std::move(kinks);
  return extremize(req);
}

ExtremumResult inf_of(const ScalarFn& f, Interval iv, std::vector<double> kinks) {
  ExtremumRequest req;
  req.objective = f;
  req.interval = iv;
  req.mode = ExtremumMode::Inf;
  req.kinks = std::move(kinks);
  return extremize(req);
}

}  // namespace hcert
