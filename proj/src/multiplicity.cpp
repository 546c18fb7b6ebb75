#include "hcert/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hcert/errors.hpp"

namespace hcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxRecordedMatches = 256;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

const char* pattern_name(Pattern p) {
  switch (p) {
    case Pattern::S1: return "S1";
    case Pattern::S2: return "S2";
    case Pattern::S3: return "S3";
    case Pattern::S4: return "S4";
    case Pattern::S5: return "S5";
    case Pattern::S6: return "S6";
    case Pattern::EIG_13: return "EIG_13";
    case Pattern::EIG_1_2: return "EIG_1_2";
    case Pattern::NONE: return "NONE";
  }
  return "NONE";
}

int pattern_solution_count(Pattern p) {
  switch (p) {
    case Pattern::S1:
    case Pattern::S2:
    case Pattern::EIG_13:
      return 1;
    case Pattern::S3:
    case Pattern::S4:
      return 2;
    case Pattern::S5:
    case Pattern::S6:
      return 3;
    default:
      return 0;
  }
}

const char* index_kind_name(IndexKind k) { return k == IndexKind::I0 ? "I0" : "I1"; }

void ConditionLedger::add(double rho, IndexKind kind, ConditionResult result) {
  if (!result.holds) throw Error(ErrorCode::InvalidArgument, "ConditionLedger", "ledger entries must hold");
  if (!(rho > 0.0)) throw Error(ErrorCode::InvalidArgument, "ConditionLedger", "rho must be positive");
  LedgerEntry e{rho, kind, std::move(result)};
  auto pos = std::upper_bound(entries.begin(), entries.end(), rho,
                              [](double r, const LedgerEntry& x) { return r < x.rho; });
  entries.insert(pos, std::move(e));
}

bool Shell::contains(double sup_norm, double window_min) const {
  auto ok_inner = [&](const ShellBound& b) {
    return b.kind == IndexKind::I1 ? sup_norm > b.rho : window_min > b.rho;
  };
  auto ok_outer = [&](const ShellBound& b) {
    return b.kind == IndexKind::I1 ? sup_norm < b.rho : window_min < b.rho;
  };
  return (!inner || ok_inner(*inner)) && (!outer || ok_outer(*outer));
}

std::pair<double, double> Shell::sup_norm_range(double c) const {
  double lo = inner ? inner->rho : 0.0;
  double hi = kInf;
  if (outer) hi = outer->kind == IndexKind::I1 ? outer->rho : outer->rho / c;
  return {lo, hi};
}

namespace {

// Constraint "value > x" (lower) or "value < x" (upper) on the sup norm or the window minimum.
struct Constraint {
  bool on_norm;
  bool lower;
  double x;
};

std::vector<Constraint> constraints(const Shell& s) {
  std::vector<Constraint> out;
  if (s.inner) out.push_back({s.inner->kind == IndexKind::I1, true, s.inner->rho});
  if (s.outer) out.push_back({s.outer->kind == IndexKind::I1, false, s.outer->rho});
  return out;
}

// True when no u in the cone (c*||u|| <= min <= ||u||) satisfies both.
bool incompatible(const Constraint& p, const Constraint& q, double c) {
  if (p.lower == q.lower) return false;
  const Constraint& lo = p.lower ? p : q;  // value > lo.x
  const Constraint& hi = p.lower ? q : p;  // value < hi.x
  if (lo.on_norm == hi.on_norm) return lo.x >= hi.x;
  if (!lo.on_norm && hi.on_norm) return lo.x >= hi.x;   // min > x, ||u|| < y, min <= ||u||
  return lo.x >= hi.x / c;                             // ||u|| > x, min < y, ||u|| <= min/c
}

}  // namespace

bool shells_disjoint(const Shell& x, const Shell& y, double c) {
  for (const Constraint& p : constraints(x))
    for (const Constraint& q : constraints(y))
      if (incompatible(p, q, c)) return true;
  return false;
}

bool validate_pattern(Pattern p, std::span<const double> r, double c) {
  switch (p) {
    case Pattern::S1: return r.size() == 2 && r[0] / c < r[1];
    case Pattern::S2: return r.size() == 2 && r[0] < r[1];
    case Pattern::S3: return r.size() == 3 && r[0] / c < r[1] && r[1] < r[2];
    case Pattern::S4: return r.size() == 3 && r[0] < r[1] && r[1] / c < r[2];
    case Pattern::S5: return r.size() == 4 && r[0] / c < r[1] && r[1] < r[2] && r[2] / c < r[3];
    case Pattern::S6: return r.size() == 4 && r[0] < r[1] && r[1] / c < r[2] && r[2] < r[3];
    default: return false;
  }
}

namespace {

Pattern chain_pattern(const std::vector<IndexKind>& kinds) {
  bool starts0 = kinds.front() == IndexKind::I0;
  switch (kinds.size()) {
    case 2: return starts0 ? Pattern::S1 : Pattern::S2;
    case 3: return starts0 ? Pattern::S3 : Pattern::S4;
    case 4: return starts0 ? Pattern::S5 : Pattern::S6;
    default: return Pattern::NONE;
  }
}

bool step_ok(const LedgerEntry& a, const LedgerEntry& b, double c) {
  if (a.kind == b.kind) return false;
  return a.kind == IndexKind::I1 ? a.rho < b.rho : a.rho / c < b.rho;
}

struct Search {
  const ConditionLedger& ledger;
  std::vector<std::size_t> chain;
  std::vector<std::vector<std::size_t>> matches;
  std::size_t best = 0;
  bool have_best = false;

  void record() {
    std::vector<IndexKind> kinds;
    for (std::size_t i : chain) kinds.push_back(ledger.entries[i].kind);
    int count = pattern_solution_count(chain_pattern(kinds));
    matches.push_back(chain);
    if (!have_best || count > pattern_solution_count(pattern_of(matches[best]))) {
      best = matches.size() - 1;
      have_best = true;
    }
  }

  Pattern pattern_of(const std::vector<std::size_t>& ch) const {
    std::vector<IndexKind> kinds;
    for (std::size_t i : ch) kinds.push_back(ledger.entries[i].kind);
    return chain_pattern(kinds);
  }

  void extend() {
    if (chain.size() >= 2) record();
    if (chain.size() == 4) return;
    const LedgerEntry& last = ledger.entries[chain.back()];
    for (std::size_t j = chain.back() + 1; j < ledger.entries.size(); ++j) {
      if (!step_ok(last, ledger.entries[j], ledger.c)) continue;
      chain.push_back(j);
      extend();
      chain.pop_back();
    }
  }
};

Shell make_shell(const LedgerEntry& a, const LedgerEntry& b, double c) {
  Shell s;
  s.inner = ShellBound{a.kind, a.rho};
  s.outer = ShellBound{b.kind, b.rho};
  std::string in = a.kind == IndexKind::I1 ? "||u|| > " + fmt(a.rho) : "min_[a,b] u > " + fmt(a.rho);
  std::string out = b.kind == IndexKind::I1 ? "||u|| < " + fmt(b.rho) : "min_[a,b] u < " + fmt(b.rho);
  auto range = s.sup_norm_range(c);
  s.description = in + " and " + out + " (sup norm in (" + fmt(range.first) + ", " + fmt(range.second) + "))";
  return s;
}

}  // namespace

Certificate match_patterns(const ConditionLedger& ledger) {
  Certificate cert;
  cert.provenance["c"] = {ledger.c, "kernel_toolkit", 0.0};
  Search search{ledger, {}, {}, 0, false};
  for (std::size_t i = 0; i < ledger.entries.size(); ++i) {
    search.chain = {i};
    search.extend();
  }
  if (!search.have_best) {
    cert.notes.push_back("no admissible ordering of index conditions");
    return cert;
  }
  for (std::size_t k = 0; k < search.matches.size() && cert.all_matches.size() < kMaxRecordedMatches; ++k) {
    PatternMatch m;
    m.pattern = search.pattern_of(search.matches[k]);
    for (std::size_t i : search.matches[k]) {
      m.rhos.push_back(ledger.entries[i].rho);
      m.kinds.push_back(ledger.entries[i].kind);
    }
    cert.all_matches.push_back(std::move(m));
  }
  const auto& chain = search.matches[search.best];
  cert.pattern = search.pattern_of(chain);
  for (std::size_t i : chain) cert.rhos.push_back(ledger.entries[i].rho);
  if (!validate_pattern(cert.pattern, cert.rhos, ledger.c))
    throw Error(ErrorCode::InternalInconsistency, "match_patterns", "matched pattern fails re-validation");
  cert.solution_count = pattern_solution_count(cert.pattern);
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    cert.shells.push_back(make_shell(ledger.entries[chain[k]], ledger.entries[chain[k + 1]], ledger.c));
  for (std::size_t x = 0; x < cert.shells.size(); ++x)
    for (std::size_t y = x + 1; y < cert.shells.size(); ++y)
      if (!shells_disjoint(cert.shells[x], cert.shells[y], ledger.c))
        throw Error(ErrorCode::InternalInconsistency, "match_patterns", "localization shells overlap");
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const LedgerEntry& e = ledger.entries[chain[k]];
    std::string key = std::string(index_kind_name(e.kind)) + "@rho=" + fmt(e.rho);
    cert.provenance[key + ".lhs"] = {e.result.lhs, "index_conditions", 1e-9};
    cert.provenance[key + ".margin"] = {e.result.margin, "index_conditions", 1e-9};
    cert.advisory = cert.advisory || e.result.advisory;
  }
  return cert;
}

Certificate certify_eig(const ProblemSpec& problem, const EigCriteria& eig) {
  (void)problem;
  Certificate cert;
  const ConditionResult& c1 = eig.criterion1;
  const ConditionResult* c3 = eig.criterion3.holds ? &eig.criterion3
                              : eig.criterion3_strong.holds ? &eig.criterion3_strong : nullptr;
  const ConditionResult* c2 = eig.criterion2.holds ? &eig.criterion2
                              : eig.criterion2_strong.holds ? &eig.criterion2_strong : nullptr;
  cert.notes.push_back("criterion (1) evaluated through the strengthened bound; the exact form is not implemented");
  auto prov = [&](const ConditionResult& r) {
    std::string k = condition_name(r.kind);
    cert.provenance[k + ".lhs"] = {r.lhs, "eigencriteria", 1e-9};
    cert.provenance[k + ".threshold"] = {r.threshold, "eigencriteria", 1e-9};
    cert.advisory = cert.advisory || r.advisory;
  };
  if (c1.holds && c3) {
    cert.pattern = Pattern::EIG_13;
    cert.solution_count = 1;
    prov(c1);
    prov(*c3);
    Shell s;
    s.description = "nontrivial solution with index 1 on small K_rho and index 0 on large V_R; radii not quantified";
    cert.shells.push_back(s);
  } else if (c1.holds && c2) {
    cert.pattern = Pattern::EIG_1_2;
    cert.solution_count = 0;
    prov(c1);
    prov(*c2);
    cert.notes.push_back("criteria (1) and (2) both concern small radii: index clash only, no solution count claimed");
  } else {
    cert.notes.push_back("eigenvalue criteria do not combine into a certificate");
  }
  return cert;
}

const Certificate& best_certificate(const Certificate& a, const Certificate& b) {
  return b.solution_count > a.solution_count ? b : a;
}

}  // namespace hcert
