#include <doctest.h>

#include <map>

#include "levy/conditions.hpp"
#include "levy/levy_model.hpp"

using namespace levy;

namespace {

constexpr Verdict P = Verdict::Pass;
constexpr Verdict F = Verdict::Fail;

const CheckOptions kFast{false, 40};

}  // namespace

TEST_SUITE("conditions") {

TEST_CASE("regression table for (A) and (B)") {
  const std::map<std::string, std::pair<Verdict, Verdict>> table = {
      {"stable", {P, P}},           {"stable_asym", {P, P}},         {"truncated_stable", {P, P}},
      {"tempered_stable", {P, P}},  {"integrable_drift", {P, P}},    {"spectrally_negative", {P, P}},
      {"brownian", {P, P}},         {"asymmetric_cauchy", {F, P}},   {"compound_poisson", {F, P}},
  };
  for (const auto& [name, want] : table) {
    auto m = preset(name);
    CAPTURE(name);
    CHECK(check_A(m, kFast).verdict == want.first);
    CHECK(check_B(m, kFast).verdict == want.second);
  }
}

TEST_CASE("(L3) pins") {
  CHECK(check_L3(preset("stable"), kFast).verdict == P);
  CHECK(check_L3(preset("truncated_stable"), kFast).verdict == F);
  CHECK(check_L3(preset("tempered_stable"), kFast).verdict == F);
  CHECK(check_L3(preset("brownian"), kFast).verdict == F);
}

TEST_CASE("type C") {
  CHECK(check_type_C(preset("stable"), kFast).verdict == P);
  CHECK(check_type_C(preset("brownian"), kFast).verdict == P);
  CHECK(check_type_C(preset("compound_poisson"), kFast).verdict == F);
  CHECK(check_type_C(preset("integrable_drift"), kFast).verdict == P);
}

TEST_CASE("symmetric models pass (B) with a zero integral") {
  auto r = check_B(preset("stable"));
  CHECK(r.verdict == P);
  CHECK(r.integral_estimate == 0.0);
  auto asym = check_B(LevyModel::stable_from_scale(1.5, 1.0, 0.7), kFast);
  CHECK(asym.verdict == P);
}

TEST_CASE("numeric probes agree with the analytic shortcut") {
  auto a = check_A(preset("stable_asym"));
  CHECK(a.verdict == P);
  CHECK(a.analytic_shortcut_used);
  REQUIRE(a.numeric_verdict);
  CHECK(*a.numeric_verdict == P);

  auto cp = check_A(preset("compound_poisson"));
  CHECK(cp.verdict == F);
  REQUIRE(cp.numeric_verdict);
  CHECK(*cp.numeric_verdict == F);
  CHECK_FALSE(cp.rule.empty());
}

TEST_CASE("(A) implies (A1)-(A4)") {
  for (std::string name : {"stable", "stable_asym", "brownian", "tempered_stable"}) {
    auto rep = regularity_diagnostics(preset(name), kFast);
    CAPTURE(name);
    for (const char* c : {"A1", "A2", "A3", "A4"}) CHECK(rep.at(c).verdict == P);
    CHECK_FALSE(rep.implication_chain.empty());
  }
}

TEST_CASE("compound Poisson diagnostics") {
  auto rep = regularity_diagnostics(preset("compound_poisson"), kFast);
  CHECK(rep.at("A1").verdict == F);
  CHECK(rep.at("A3").verdict == F);
  CHECK(rep.at("A4").verdict == F);
  CHECK(check_A4_direct(preset("compound_poisson")).verdict == F);
  CHECK(check_A4_direct(preset("stable")).verdict == P);
}

TEST_CASE("pure drift fails (A) but not (A1)") {
  auto drift = LevyModel::brownian(1.0, 0.0);
  CHECK(check_A(drift, kFast).verdict == F);
  CHECK(check_A1(drift, kFast).verdict == P);
}

TEST_CASE("asymmetric Cauchy") {
  auto c = preset("asymmetric_cauchy");
  CHECK(check_A1(c, kFast).verdict == P);
  CHECK(check_L1(c, kFast).verdict == F);
  auto sym = LevyModel::custom(0.0, 0.0, JumpSide::from_terms({{1.0, 1.0, 0.0, kInf}}),
                               JumpSide::from_terms({{1.0, 1.0, 0.0, kInf}}));
  CHECK(check_A1(sym, kFast).verdict == F);
}

TEST_CASE("full report serialises") {
  auto rep = full_report(preset("stable_asym"), kFast);
  auto j = rep.to_json();
  CHECK(j.at("conditions").contains("L3"));
  CHECK(rep.analytic_shortcut_used());
  for (const char* c : {"A", "B", "A1", "A2", "A3", "A4", "L1", "L2", "L3"}) {
    CHECK_NOTHROW((void)rep.at(c));
  }
  CHECK_THROWS((void)rep.at("Z"));
}

TEST_CASE("unpinned (L3) families are flagged") {
  auto r = check_L3(preset("integrable_drift"), kFast);
  CHECK(r.note.find("no regression pin") != std::string::npos);
}

TEST_CASE("require_conditions") {
  CHECK_NOTHROW(require_conditions(preset("stable"), true, false));
  try {
    require_conditions(preset("asymmetric_cauchy"), false, true);
    FAIL("expected ConditionViolation");
  } catch (const ConditionViolation& e) {
    CHECK(e.report().at("A").verdict == F);
    CHECK_FALSE(e.report().at("A").rule.empty());
  }
}

}  // TEST_SUITE
