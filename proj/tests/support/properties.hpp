#pragma once

#include <cstdint>
#include <string>

namespace property {

struct Outcome {
  bool ok = true;
  long checks = 0;
  double worst = 0.0;
  std::string detail;
};

// |k| <= Phi on [0,1]^2 and k >= c1 Phi on [a,b] x [0,1], for the presets and a custom kernel.
Outcome envelope_inequalities(long samples, std::uint64_t seed);
// Strong index conditions imply the exact ones on random problems.
Outcome strong_dominance(int problems, std::uint64_t seed);
// (Id - M)^{-1} rhs >= 0 for random nonnegative M with r(M) < 1, rhs >= 0.
Outcome resolvent_positivity(int systems, std::uint64_t seed);
// Direct solve versus Neumann series on the same systems.
Outcome neumann_agreement(int systems, std::uint64_t seed);
// |phi[u] - phi[v]| <= phi[|u - v|] and subadditivity for upper functionals on cone pairs.
Outcome triangle_property(int pairs, std::uint64_t seed);
// Every emitted pattern re-validates and attains the brute-force best count.
Outcome ledger_soundness(int ledgers, std::uint64_t seed);

}  // namespace property
