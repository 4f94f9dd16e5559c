#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levy/levy_model.hpp"
#include "levy/quadrature.hpp"

namespace levy {

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct ConditionResult {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  bool analytic_shortcut_used = false;
  /// The bounding argument or implication that produced the verdict.
  std::string rule;
  /// Numeric probe outcome (advisory when a shortcut decided the verdict).
  std::optional<Verdict> numeric_verdict;
  double integral_estimate = 0.0;
  std::vector<TrendPoint> evidence;
  std::string note;
};

struct ConditionReport {
  std::string model;
  std::vector<ConditionResult> results;
  std::vector<std::string> implication_chain;

  const ConditionResult& at(const std::string& name) const;
  bool analytic_shortcut_used() const;
  nlohmann::json to_json() const;
};

struct CheckOptions {
  /// Run integrability probes even when an analytic rule decides.
  bool numeric_probes = true;
  int probe_budget = 40;
};

class ConditionViolation : public std::runtime_error {
 public:
  ConditionViolation(const std::string& what, ConditionReport report);
  const ConditionReport& report() const { return report_; }

 private:
  ConditionReport report_;
};

/// 1/(q - eta) in L^1, probed at q = 1 and cross-checked at q = 0.1 and 10.
ConditionResult check_A(const LevyModel& model, const CheckOptions& opts = {});
/// int_0^1 |Im(u / eta(u))| du < inf.
ConditionResult check_B(const LevyModel& model, const CheckOptions& opts = {});
/// a > 0 or int_{|y|<=1} |y| nu(dy) = inf.
ConditionResult check_type_C(const LevyModel& model, const CheckOptions& opts = {});
/// int_0^inf 1/(q - Re eta) du < inf.
ConditionResult check_L1(const LevyModel& model, const CheckOptions& opts = {});
/// int_0^inf (u^2 ^ 1)(|Re eta'| + |Im eta'|) / |eta|^2 du < inf.
ConditionResult check_L3(const LevyModel& model, const CheckOptions& opts = {});
/// (A1) int Re 1/(q - eta) du < inf.
ConditionResult check_A1(const LevyModel& model, const CheckOptions& opts = {});
/// X is not a compound Poisson process.
ConditionResult check_A4_direct(const LevyModel& model);

/// (A1) and (A3) checked, (A2) and (A4) derived from the equivalence
/// (A1)&(A3) <=> (A2)&(A4) and, under (A1), (A2) <=> (A3).
ConditionReport regularity_diagnostics(const LevyModel& model, const CheckOptions& opts = {});

/// A, B, A1-A4, L1, L2 (= type C) and L3.
ConditionReport full_report(const LevyModel& model, const CheckOptions& opts = {});

/// Cheap verdicts from the family bounds alone; nullopt when no rule applies.
std::optional<Verdict> analytic_A(const LevyModel& model);
std::optional<Verdict> analytic_B(const LevyModel& model);

/// Throws ConditionViolation unless (A) (and (B) when `need_B`) pass. With
/// `force`, Inconclusive verdicts are accepted; analytic Fail never is.
void require_conditions(const LevyModel& model, bool need_B, bool force);

}  // namespace levy
