#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcert/multiplicity.hpp"
#include "properties.hpp"

using namespace hcert;

namespace {

ConditionLedger ledger(double c, std::initializer_list<std::pair<double, IndexKind>> entries) {
  ConditionLedger l;
  l.c = c;
  ConditionResult ok;
  ok.holds = true;
  for (auto [rho, kind] : entries) l.add(rho, kind, ok);
  return l;
}

}  // namespace

TEST_CASE("documented ledgers") {
  Certificate s2 = match_patterns(ledger(0.25, {{1, IndexKind::I1}, {28, IndexKind::I0}}));
  CHECK(s2.pattern == Pattern::S2);
  CHECK(s2.solution_count == 1);
  REQUIRE(s2.shells.size() == 1);
  CHECK(s2.shells[0].sup_norm_range(0.25).first == 1.0);
  CHECK(s2.shells[0].sup_norm_range(0.25).second == 112.0);

  Certificate none = match_patterns(ledger(0.25, {{1, IndexKind::I0}, {2, IndexKind::I1}}));
  CHECK(none.pattern == Pattern::NONE);
  CHECK(none.solution_count == 0);
  CHECK(none.shells.empty());

  Certificate s4 = match_patterns(ledger(0.25, {{1, IndexKind::I1}, {2, IndexKind::I0}, {9, IndexKind::I1}}));
  CHECK(s4.pattern == Pattern::S4);
  CHECK(s4.solution_count == 2);
  CHECK(shells_disjoint(s4.shells[0], s4.shells[1], 0.25));
}

TEST_CASE("three-solution patterns and the best match") {
  Certificate s5 = match_patterns(
      ledger(0.5, {{1, IndexKind::I0}, {3, IndexKind::I1}, {4, IndexKind::I0}, {9, IndexKind::I1}}));
  CHECK(s5.pattern == Pattern::S5);
  CHECK(s5.solution_count == 3);
  CHECK(s5.all_matches.size() > 1);
  Certificate s6 = match_patterns(
      ledger(0.5, {{1, IndexKind::I1}, {2, IndexKind::I0}, {5, IndexKind::I1}, {6, IndexKind::I0}}));
  CHECK(s6.pattern == Pattern::S6);
  for (std::size_t i = 0; i < s6.shells.size(); ++i)
    for (std::size_t j = i + 1; j < s6.shells.size(); ++j) CHECK(shells_disjoint(s6.shells[i], s6.shells[j], 0.5));
}

TEST_CASE("validate_pattern rules") {
  std::vector<double> r = {1, 28};
  CHECK(validate_pattern(Pattern::S2, r, 0.25));
  CHECK_FALSE(validate_pattern(Pattern::S1, r, 0.01));
  std::vector<double> r3 = {1, 2, 9};
  CHECK(validate_pattern(Pattern::S4, r3, 0.25));
  CHECK_FALSE(validate_pattern(Pattern::S4, r3, 0.2));
  CHECK_FALSE(validate_pattern(Pattern::S4, r, 0.25));
}

TEST_CASE("ledger rejects failing results") {
  ConditionLedger l;
  ConditionResult bad;
  bad.holds = false;
  CHECK_THROWS(l.add(1.0, IndexKind::I1, bad));
}

TEST_CASE("eigen certificates") {
  ProblemSpec p;
  EigCriteria e;
  e.criterion1.holds = true;
  CHECK(certify_eig(p, e).pattern == Pattern::NONE);
  e.criterion3.holds = true;
  e.criterion3.advisory = true;
  Certificate c = certify_eig(p, e);
  CHECK(c.pattern == Pattern::EIG_13);
  CHECK(c.solution_count == 1);
  CHECK(c.shells.size() == 1);
  CHECK(c.advisory);
  EigCriteria e2;
  e2.criterion1.holds = true;
  e2.criterion2.holds = true;
  Certificate clash = certify_eig(p, e2);
  CHECK(clash.pattern == Pattern::EIG_1_2);
  CHECK(clash.solution_count == 0);
  CHECK(clash.shells.empty());
}

TEST_CASE("pattern matcher soundness on randomized ledgers") {
  property::Outcome o = property::ledger_soundness(2000, 0x1ed);
  INFO(o.detail);
  CHECK(o.ok);
}
