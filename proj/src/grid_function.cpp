#include "hcert/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcert/errors.hpp"

namespace hcert {

GridFunction::GridFunction(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() < 2 || nodes_.size() != values_.size())
    throw Error(ErrorCode::InvalidArgument, "GridFunction", "need at least two nodes with matching values");
  if (nodes_.front() != 0.0 || nodes_.back() != 1.0)
    throw Error(ErrorCode::InvalidArgument, "GridFunction", "nodes must cover [0,1]");
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (!(nodes_[i] > nodes_[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "GridFunction", "nodes must be strictly increasing");
  const double h = 1.0 / (nodes_.size() - 1);
  uniform_ = true;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (std::abs(nodes_[i] - i * h) > 1e-14) {
      uniform_ = false;
      break;
    }
}

std::vector<double> GridFunction::uniform_nodes(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "GridFunction", "need at least two nodes");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = static_cast<double>(i) / (n - 1);
  x.back() = 1.0;
  return x;
}

GridFunction GridFunction::sample(const std::vector<double>& nodes, const ScalarFn& f) {
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = f(nodes[i]);
  return GridFunction(nodes, std::move(v));
}

GridFunction GridFunction::constant(int n, double value) {
  return GridFunction(uniform_nodes(n), std::vector<double>(n, value));
}

int GridFunction::locate(double t) const {
  const int n = static_cast<int>(nodes_.size());
  int i;
  if (uniform_) {
    i = static_cast<int>(std::floor(t * (n - 1)));
  } else {
    i = static_cast<int>(std::upper_bound(nodes_.begin(), nodes_.end(), t) - nodes_.begin()) - 1;
  }
  return std::clamp(i, 0, n - 2);
}

Stencil GridFunction::stencil(double t) const {
  if (!(t >= -1e-12 && t <= 1.0 + 1e-12))
    throw Error(ErrorCode::DomainViolation, "GridFunction", "evaluation outside [0,1]: " + std::to_string(t));
  const int n = static_cast<int>(nodes_.size());
  Stencil s;
  if (n < 4) {
    int i = locate(t);
    double w = (t - nodes_[i]) / (nodes_[i + 1] - nodes_[i]);
    s.first = i;
    s.count = 2;
    s.weights = {1.0 - w, w, 0.0, 0.0};
    return s;
  }
  int i = locate(t);
  s.first = std::clamp(i - 1, 0, n - 4);
  s.count = 4;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    double xa = nodes_[s.first + a];
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (t - nodes_[s.first + b]) / (xa - nodes_[s.first + b]);
    s.weights[a] = w;
  }
  return s;
}

double GridFunction::operator()(double t) const {
  Stencil s = stencil(t);
  double v = 0.0;
  for (int a = 0; a < s.count; ++a) v += s.weights[a] * values_[s.first + a];
  return v;
}

ExtremumResult GridFunction::refine(Interval iv, ExtremumMode mode, bool absolute) const {
  auto val = [&](double t) { return absolute ? std::abs((*this)(t)) : (*this)(t); };
  auto better = [&](double a, double b) { return mode == ExtremumMode::Sup ? a > b : a < b; };
  std::vector<double> xs{iv.lo};
  for (double x : nodes_)
    if (x > iv.lo && x < iv.hi) xs.push_back(x);
  if (iv.hi > iv.lo) xs.push_back(iv.hi);
  std::size_t best = 0;
  std::vector<double> fs(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fs[i] = val(xs[i]);
    if (better(fs[i], fs[best])) best = i;
  }
  ExtremumResult out{xs[best], fs[best]};
  // The interpolant may peak between nodes; polish on both neighbouring intervals.
  for (int side = -1; side <= 1; side += 2) {
    long j = static_cast<long>(best) + side;
    if (j < 0 || j >= static_cast<long>(xs.size())) continue;
    ExtremumRequest req;
    req.objective = val;
    req.interval = {std::min(xs[best], xs[j]), std::max(xs[best], xs[j])};
    req.mode = mode;
    req.tol = 1e-12;
    req.seeds = 5;
    ExtremumResult r = extremize(req);
    if (better(r.value, out.value)) out = r;
  }
  return out;
}

double GridFunction::sup_norm() const { return refine({0.0, 1.0}, ExtremumMode::Sup, true).value; }

ExtremumResult GridFunction::max_on(Interval iv) const { return refine(iv, ExtremumMode::Sup, false); }

ExtremumResult GridFunction::min_on(Interval iv) const { return refine(iv, ExtremumMode::Inf, false); }

}  // namespace hcert
