#pragma once

#include <string>

#include <Eigen/Dense>

#include "hcert/problem.hpp"
#include "hcert/psi.hpp"

namespace hcert {

inline constexpr double kSpectralMargin = 1e-9;

// M_k = (phi_ki[psi_kj]).
struct CrossMatrix {
  Eigen::MatrixXd entries;
  Family family = Family::Upper;
  Eigen::Index size() const { return entries.rows(); }
};

CrossMatrix build_cross_matrix(Family family, const ProblemSpec& problem, const PsiFamily& psi);
CrossMatrix build_cross_matrix(Family family, const ProblemSpec& problem);

// Perron root of a nonnegative square matrix.
double spectral_radius(const Eigen::MatrixXd& m);
inline double spectral_radius(const CrossMatrix& m) { return spectral_radius(m.entries); }

struct C8Result {
  bool holds = false;
  double r1 = 0.0;
  double r2 = 0.0;
  double margin1 = 0.0;  // 1/c1 - r1
  double margin2 = 0.0;  // 1 - r2
};

C8Result check_C8(const CrossMatrix& m1, const CrossMatrix& m2, double c1);
C8Result check_C8(const ProblemSpec& problem);

struct ResolventVector {
  Eigen::VectorXd values;
  std::string source;
  int neumann_terms = 0;
  double neumann_gap = 0.0;  // |direct - Neumann| in the max norm
};

// (Id - scale*M)^{-1} rhs by direct solve, checked against the Neumann series.
ResolventVector resolve_positive(const CrossMatrix& m, double scale, const Eigen::VectorXd& rhs,
                                 std::string source = {});

// 1/(1 - q) for a Lipschitz seminorm bound q < 1.
double resolvent_lip_bound(double q_star);

}  // namespace hcert
