#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hcert/cone_algebra.hpp"
#include "hcert/problem.hpp"
#include "hcert/psi.hpp"

namespace hcert {

inline constexpr double kCertMargin = 1e-9;

struct ProvenancedValue {
  double value = 0.0;
  std::string source;
  double tolerance = 0.0;
};
using Provenance = std::map<std::string, ProvenancedValue>;

enum class ConditionKind {
  I1, I0, I1Strong, I0Strong, Nonexist1, Nonexist2,
  Eig1, Eig2, Eig3, Eig2Strong, Eig3Strong
};
const char* condition_name(ConditionKind kind);

enum class Comparison { Less, Greater };

struct ConditionResult {
  ConditionKind kind = ConditionKind::I1;
  std::optional<double> rho;
  double lhs = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::Less;
  bool holds = false;
  double margin = 0.0;  // signed distance to the threshold in the favourable direction
  bool advisory = false;
  Provenance constants_used;
  std::vector<std::string> notes;
};

// Fills comparison, margin and holds (strict inequality with kCertMargin).
void decide(ConditionResult& r, double lhs, double threshold, Comparison cmp);

struct RhoWindow {
  double rho = 1.0;
  double c = 1.0;
  double lower() const { return rho; }
  double upper() const { return rho / c; }
};

enum class BoundSource { Analytic, Sampled };
const char* bound_source_name(BoundSource s);

struct BoundValue {
  double value = 0.0;
  BoundSource source = BoundSource::Analytic;
};

// f2^{-rho,rho} = sup { f2(t,u)/rho : t in [0,1], |u| <= rho }
BoundValue f2_upper(const ProblemSpec& problem, double rho);
// f_{1,rho,rho/c} = inf { f1(t,u)/rho : t in [a,b], rho <= u <= rho/c }
BoundValue f1_lower(const ProblemSpec& problem, double rho);

double sample_f2_upper(const std::function<double(double, double)>& f2, double rho);
double sample_f1_lower(const std::function<double(double, double)>& f1, Window w, double rho, double c);

// Every derived quantity the index conditions need, computed once per problem.
struct ConstantsTable {
  PsiFamily psi;
  CrossMatrix M1;
  CrossMatrix M2;
  C8Result c8;
  Eigen::VectorXd kphi_upper;  // int_0^1 K_phi2 g
  Eigen::VectorXd kphi_lower;  // int_a^b K_phi1 g
  std::optional<ResolventVector> x_upper;  // (Id - M2)^{-1} kphi_upper
  std::optional<ResolventVector> x_lower;  // (Id - c1 M1)^{-1} kphi_lower
  double c1 = 0.0;
  double c = 0.0;
  double sigma_sup = 0.0;  // 1/m
  double m = 0.0;
  double inv_M = 0.0;      // 1/M(a,b)
  double M = 0.0;
  ExtremumResult i1_bracket;   // sup_t [sum |psi_2j| x_j + sigma]
  ExtremumResult i0_bracket;   // inf_{[a,b]} [sum psi_1j x_j + int_a^b k g]
  double i1_strong_bracket = 0.0;
  double i0_strong_bracket = 0.0;
  std::optional<double> h2_bound;  // sum ||psi_2j|| ||phi_2j||
};

ConstantsTable compute_constants(const ProblemSpec& problem);

// Rejects custom functionals that fail randomized validation and signed upper measures.
void validate_problem_functionals(const ProblemSpec& problem);

class IndexConditions {
 public:
  explicit IndexConditions(ProblemSpec problem);
  IndexConditions(ProblemSpec problem, ConstantsTable constants);

  ConditionResult check_I1(double rho) const;
  ConditionResult check_I1_strong(double rho) const;
  ConditionResult check_I0(double rho) const;
  ConditionResult check_I0_strong(double rho) const;
  std::pair<ConditionResult, ConditionResult> check_nonexistence() const;

  const ConstantsTable& constants() const { return constants_; }
  const ProblemSpec& problem() const { return problem_; }

 private:
  ConditionResult i1_common(double rho, ConditionKind kind, double bracket) const;
  ConditionResult i0_common(double rho, ConditionKind kind, double bracket) const;

  ProblemSpec problem_;
  ConstantsTable constants_;
};

ConditionResult check_I1(const ProblemSpec& problem, double rho);
ConditionResult check_I1_strong(const ProblemSpec& problem, double rho);
ConditionResult check_I0(const ProblemSpec& problem, double rho);
ConditionResult check_I0_strong(const ProblemSpec& problem, double rho);
std::pair<ConditionResult, ConditionResult> check_nonexistence(const ProblemSpec& problem);

// Throws InternalInconsistency when non-existence clause 1 holds together with an I0 condition.
void consistency_check(const ConditionResult& nonexist_1, const std::vector<ConditionResult>& results);

}  // namespace hcert
