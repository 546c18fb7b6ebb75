#include "hcert/cone_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>

#include "hcert/errors.hpp"

namespace hcert {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

CrossMatrix build_cross_matrix(Family family, const ProblemSpec& problem, const PsiFamily& psi) {
  auto terms = ordered_terms(problem, family);
  const auto& fns = psi.of(family);
  if (fns.size() != terms.size())
    throw Error(ErrorCode::InvalidArgument, "build_cross_matrix", "psi family does not match the problem");
  const Eigen::Index n = static_cast<Eigen::Index>(terms.size());
  CrossMatrix m;
  m.family = family;
  m.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double v = apply_functional(terms[i]->functional, fns[j].eval, fns[j].kinks);
      if (v < -1e-10)
        throw Error(ErrorCode::NegativeEntry, "build_cross_matrix",
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + fmt(v));
      m.entries(i, j) = std::max(v, 0.0);
    }
  return m;
}

CrossMatrix build_cross_matrix(Family family, const ProblemSpec& problem) {
  return build_cross_matrix(family, problem, build_psi(problem));
}

double spectral_radius(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "spectral_radius", "matrix not square");
  if ((m.array() < -1e-10).any())
    throw Error(ErrorCode::NegativeEntry, "spectral_radius", "matrix has negative entries");
  const Eigen::Index n = m.rows();
  if (n == 0) return 0.0;
  if (n == 1) return std::abs(m(0, 0));
  if (n == 2) {
    double p = m(0, 0), q = m(0, 1), r = m(1, 0), s = m(1, 1);
    double half = 0.5 * (p - s);
    return 0.5 * (p + s) + std::sqrt(half * half + q * r);
  }

  // Collatz-Wielandt bounds min_i (Ax)_i/x_i <= r <= max_i (Ax)_i/x_i for x > 0. They pinch only for
  // irreducible matrices; reducible or slowly mixing ones fall back to the real Schur spectrum.
  const int max_iter = 4000;
  const double shift = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (shift == 0.0) return 0.0;
  Eigen::MatrixXd a = m;
  a.diagonal().array() += shift;
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd y = a * x;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double q = y(i) / x(i);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    if (!(lo > 0.0)) break;
    x = y / y.maxCoeff();
    if (hi - lo <= 1e-13 * hi) return std::max(0.5 * (lo + hi) - shift, 0.0);
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "spectral_radius", "eigenvalue iteration failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

C8Result check_C8(const CrossMatrix& m1, const CrossMatrix& m2, double c1) {
  C8Result r;
  r.r1 = spectral_radius(m1);
  r.r2 = spectral_radius(m2);
  r.margin1 = 1.0 / c1 - r.r1;
  r.margin2 = 1.0 - r.r2;
  r.holds = r.margin1 > kSpectralMargin && r.margin2 > kSpectralMargin;
  return r;
}

C8Result check_C8(const ProblemSpec& problem) {
  PsiFamily psi = build_psi(problem);
  return check_C8(build_cross_matrix(Family::Lower, problem, psi), build_cross_matrix(Family::Upper, problem, psi),
                  problem.c1());
}

ResolventVector resolve_positive(const CrossMatrix& m, double scale, const Eigen::VectorXd& rhs,
                                 std::string source) {
  const Eigen::Index n = m.size();
  if (rhs.size() != n) throw Error(ErrorCode::InvalidArgument, "resolve_positive", "dimension mismatch");
  if (!(scale >= 0.0)) throw Error(ErrorCode::InvalidArgument, "resolve_positive", "scale must be >= 0");
  if ((rhs.array() < -1e-10).any())
    throw Error(ErrorCode::InvalidArgument, "resolve_positive", "right-hand side must be nonnegative");
  ResolventVector out;
  out.source = std::move(source);
  if (n == 0) return out;
  Eigen::MatrixXd a = scale * m.entries;
  double r = spectral_radius(a);
  if (!(r < 1.0))
    throw Error(ErrorCode::SpectralRadiusTooLarge, "resolve_positive", "r(scale*M) = " + fmt(r) + " >= 1");
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x = (id - a).fullPivLu().solve(rhs);
  if ((x.array() < -1e-10).any())
    throw Error(ErrorCode::InternalInconsistency, "resolve_positive", "resolvent has a negative component");
  x = x.cwiseMax(0.0);

  // Neumann series: at least 64 terms, continued while terms are still significant.
  const double rhs_norm = rhs.cwiseAbs().maxCoeff();
  Eigen::VectorXd term = rhs, sum = rhs;
  int k = 0;
  while (k < 100000) {
    term = a * term;
    sum += term;
    ++k;
    double tn = term.cwiseAbs().maxCoeff();
    if (k >= 64 && tn <= 1e-15 * std::max(rhs_norm, 1e-300)) break;
    if (tn == 0.0) break;
  }
  out.neumann_terms = k;
  out.neumann_gap = (sum - x).cwiseAbs().maxCoeff();
  if (k < 100000 && out.neumann_gap > 1e-8 * std::max(rhs_norm, 1.0))
    throw Error(ErrorCode::InternalInconsistency, "resolve_positive",
                "direct solve and Neumann series disagree by " + fmt(out.neumann_gap));
  out.values = x;
  return out;
}

double resolvent_lip_bound(double q_star) {
  if (!(q_star >= 0.0)) throw Error(ErrorCode::InvalidArgument, "resolvent_lip_bound", "q must be >= 0");
  if (!(q_star < 1.0))
    throw Error(ErrorCode::NotContractive, "resolvent_lip_bound", "Lipschitz bound " + fmt(q_star) + " >= 1");
  return 1.0 / (1.0 - q_star);
}

}  // namespace hcert
