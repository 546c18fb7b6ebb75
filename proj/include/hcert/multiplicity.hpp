#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcert/eigencriteria.hpp"
#include "hcert/index_conditions.hpp"

namespace hcert {

enum class Pattern { S1, S2, S3, S4, S5, S6, EIG_13, EIG_1_2, NONE };
const char* pattern_name(Pattern p);
int pattern_solution_count(Pattern p);

enum class IndexKind { I0, I1 };
const char* index_kind_name(IndexKind k);

struct LedgerEntry {
  double rho = 0.0;
  IndexKind kind = IndexKind::I1;
  ConditionResult result;
};

// Holding index conditions, sorted by rho.
struct ConditionLedger {
  std::vector<LedgerEntry> entries;
  double c = 1.0;

  // Inserts keeping the rho order; rejects entries whose result does not hold.
  void add(double rho, IndexKind kind, ConditionResult result);
};

// One side of a localization shell: I1 at rho bounds the sup norm, I0 at rho
// bounds the minimum over the window.
struct ShellBound {
  IndexKind kind = IndexKind::I1;
  double rho = 0.0;
};

// Fixed-point region between an inner set (whose closure is excluded) and an
// outer set. Missing bounds mean "not quantified".
struct Shell {
  std::optional<ShellBound> inner;
  std::optional<ShellBound> outer;
  std::string description;

  bool contains(double sup_norm, double window_min) const;
  // Range of sup norms compatible with the shell, given the cone constant c.
  std::pair<double, double> sup_norm_range(double c) const;
};

bool shells_disjoint(const Shell& x, const Shell& y, double c);

struct PatternMatch {
  Pattern pattern = Pattern::NONE;
  std::vector<double> rhos;
  std::vector<IndexKind> kinds;
};

struct Certificate {
  Pattern pattern = Pattern::NONE;
  int solution_count = 0;
  std::vector<Shell> shells;
  std::vector<double> rhos;
  std::vector<PatternMatch> all_matches;
  Provenance provenance;
  bool advisory = false;
  std::vector<std::string> notes;
};

// Literal re-check of the ordering constraints of a pattern.
bool validate_pattern(Pattern p, std::span<const double> rhos, double c);

Certificate match_patterns(const ConditionLedger& ledger);
Certificate certify_eig(const ProblemSpec& problem, const EigCriteria& eig);

// Of two certificates, the one with more solutions; ties keep the first.
const Certificate& best_certificate(const Certificate& a, const Certificate& b);

}  // namespace hcert
