#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hcert/problem.hpp"

namespace hcert {

struct PsiFunction {
  ScalarFn eval;
  std::vector<double> kinks;
  std::string label;
  double sup_norm = 0.0;
  double window_min = 0.0;
  double window_max = 0.0;
};

// Ordered as gamma-terms (as tilde-gamma) first, then delta-terms.
struct PsiFamily {
  std::vector<PsiFunction> lower;
  std::vector<PsiFunction> upper;
  const std::vector<PsiFunction>& of(Family f) const { return f == Family::Lower ? lower : upper; }
};

// Family terms in psi order.
std::vector<const FamilyTerm*> ordered_terms(const ProblemSpec& problem, Family family);

// tilde-gamma(t) = int_0^1 |k(t,s)| g(s) gamma(s) ds
double tilde_gamma(const KernelSpec& kernel, const FamilyTerm& term, double t);

PsiFamily build_psi(const ProblemSpec& problem);

// phi[k(., s)] for the lower family, phi[|k(., s)|] for the upper family.
double K_phi(const FunctionalSpec& phi, const KernelSpec& kernel, double s);

// int K_phi(s) g(s) ds over [0,1] (upper) or [a,b] (lower).
double K_phi_integral(const FunctionalSpec& phi, const KernelSpec& kernel);

double H2_lip_bound(const ProblemSpec& problem, const PsiFamily& psi);
double H2_lip_bound(const ProblemSpec& problem);

struct FunctionalValidation {
  bool ok = true;
  int samples = 0;
  std::string failure;
};

// Randomized check of (super/sub)additivity, positive homogeneity, monotonicity
// and, for the upper family, |phi[u]-phi[v]| <= phi[|u-v|] on cone samples.
FunctionalValidation validate_functional(const FunctionalSpec& phi, const KernelSpec& kernel, int samples = 1000,
                                         std::uint64_t seed = 0x5eed);

// Random smooth element of the cone {min_[a,b] u >= c ||u||}; used for validation.
class ConeSampler {
 public:
  ConeSampler(Window window, double c, std::uint64_t seed);
  ScalarFn next();

 private:
  Window window_;
  double c_;
  std::mt19937_64 rng_;
};

}  // namespace hcert
