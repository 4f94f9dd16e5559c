#include "levy/conditions.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <unordered_map>

#include "levy/symbol.hpp"

namespace levy {
namespace {

using cd = std::complex<double>;

class CachedSymbol {
 public:
  explicit CachedSymbol(const LevyModel& m) : model_(m) {}
  cd operator()(double u) {
    auto it = cache_.find(u);
    if (it != cache_.end()) return it->second;
    const cd v = symbol(model_, u);
    cache_.emplace(u, v);
    return v;
  }

 private:
  const LevyModel& model_;
  std::unordered_map<double, cd> cache_;
};

Verdict from_probe(Integrability i) {
  switch (i) {
    case Integrability::Finite: return Verdict::Pass;
    case Integrability::Diverging: return Verdict::Fail;
    case Integrability::Inconclusive: return Verdict::Inconclusive;
  }
  return Verdict::Inconclusive;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Verdict + rule from the analytic bounds; rule empty when none applies.
struct Shortcut {
  std::optional<Verdict> verdict;
  std::string rule;
};

bool has_coefficient(const LevyModel& m) {
  for (const JumpSide* s : {&m.plus, &m.minus}) {
    if (!s->empty() && s->handle && s->near_zero_coefficient <= 0.0) return false;
  }
  return true;
}

bool finite_activity(const LevyModel& m) {
  if (!m.has_jumps()) return true;
  if (has_coefficient(m)) return m.activity_index() < 0.0;
  return std::isfinite(m.plus.moment(0.0, 0.0, 1.0)) && std::isfinite(m.minus.moment(0.0, 0.0, 1.0));
}

// b - int_{|y|<=1} y nu(dy), the drift of a finite-variation process.
double effective_drift(const LevyModel& m) {
  return m.b - m.plus.moment(1.0, 0.0, 1.0) + m.minus.moment(1.0, 0.0, 1.0);
}

bool zero_mean(const LevyModel& m) {
  const double md = m.mean_drift();
  if (!std::isfinite(md)) return false;
  const double scale = 1.0 + std::abs(m.truncation_drift()) + m.plus.moment(1.0, 1.0, kInf) +
                       m.minus.moment(1.0, 1.0, kInf);
  return std::abs(md) <= 1e-10 * scale;
}

Shortcut shortcut_A(const LevyModel& m) {
  switch (m.family) {
    case Family::Stable:
      return {Verdict::Pass, "|1/(q-eta)| <= 1/(q + d|u|^alpha) with alpha = " +
                                 fmt(m.stable->alpha) + " > 1"};
    case Family::TruncatedStable:
      return {Verdict::Pass,
              "-Re eta(u) >= (c+ + c-) u^alpha / (4(2-alpha)) for u >= 1, alpha > 1"};
    case Family::TemperedStable:
      return {Verdict::Pass,
              "-Re eta(u) >= sum c e^{-lambda} u^alpha / (4(2-alpha)) for u >= 1, alpha > 1"};
    case Family::BrownianWithDrift:
      if (m.a > 0.0) return {Verdict::Pass, "|1/(q-eta)| <= 1/(q + a u^2/2)"};
      return {Verdict::Fail, "a = 0 and no jumps: |q - eta(u)| <= q + |b||u|, not integrable"};
    case Family::CustomTriplet:
      if (m.a > 0.0) return {Verdict::Pass, "|1/(q-eta)| <= 1/(q + a u^2/2)"};
      if (!has_coefficient(m)) return {};
      if (m.activity_index() > 1.0) {
        return {Verdict::Pass, "-Re eta(u) >= c u^s / (4(2-s)) for u >= 1 with activity index s = " +
                                   fmt(m.activity_index()) + " > 1"};
      }
      return {Verdict::Fail, "a = 0 and activity index s = " + fmt(m.activity_index()) +
                                 " <= 1: |eta(u)| = O(u log u), 1/|q-eta| not integrable"};
  }
  return {};
}

Shortcut shortcut_B(const LevyModel& m) {
  if (m.is_symmetric()) return {Verdict::Pass, "symmetric model: Im eta = 0, integral 0"};
  switch (m.family) {
    case Family::Stable:
      return {Verdict::Pass, "|Im(u/eta)| <= u^{1-alpha}/d on (0,1], alpha < 2"};
    case Family::TruncatedStable:
      if (m.b == 0.0) {
        return {Verdict::Pass, "bounded support: |Im eta(u)/u^3| <= int_{|y|<=1} |y|^3 nu(dy)"};
      }
      return {Verdict::Pass, "Im eta(u)/u -> b != 0 so |Im(u/eta)| <= u/|Im eta| is bounded"};
    case Family::TemperedStable:
      return {Verdict::Pass,
              "tempered case analysis: |Im(u/eta)| <= u/(2|Re eta|) when a side is untempered, "
              "otherwise Im eta/u -> m and Im eta - m u = O(u^3)"};
    case Family::BrownianWithDrift:
      if (m.b == 0.0 && m.a == 0.0) return {Verdict::Fail, "eta = 0 identically"};
      return {Verdict::Pass, "|Im(u/eta)| = |b|/(b^2 + a^2 u^2/4) is bounded"};
    case Family::CustomTriplet: {
      if (!m.finite_first_moment_at_infinity()) return {};
      const auto a = shortcut_A(m).verdict;
      if (a != Verdict::Pass) return {};
      if (!zero_mean(m)) {
        return {Verdict::Pass, "integrable jumps with b != -int_{|y|>1} y nu(dy): Im eta(u)/u -> " +
                                   fmt(m.mean_drift()) + " != 0"};
      }
      if (m.plus.empty() || m.minus.empty()) {
        return {Verdict::Pass,
                "integrable one-sided jumps with compensating drift: monotone convergence of "
                "Im(sin u/(q-eta)) as q -> 0"};
      }
      return {};
    }
  }
  return {};
}

Shortcut shortcut_type_C(const LevyModel& m) {
  if (m.a > 0.0) return {Verdict::Pass, "a > 0"};
  if (m.family == Family::Stable) {
    return {Verdict::Pass, "int_{|y|<=1} |y| y^{-alpha-1} dy = inf for alpha >= 1"};
  }
  if (!m.has_jumps()) return {Verdict::Fail, "a = 0 and nu = 0"};
  if (!has_coefficient(m)) return {};
  const double s = m.activity_index();
  if (s >= 1.0) return {Verdict::Pass, "activity index " + fmt(s) + " >= 1: int_{|y|<=1}|y| nu = inf"};
  return {Verdict::Fail, "a = 0 and activity index " + fmt(s) + " < 1: int_{|y|<=1}|y| nu < inf"};
}

Shortcut shortcut_L3(const LevyModel& m) {
  if (m.family == Family::Stable) {
    return {Verdict::Pass,
            "|eta'| ~ u^{alpha-1}, |eta|^2 ~ u^{2 alpha}: integrand ~ u^{1-alpha} at 0 and "
            "u^{-1-alpha} at infinity"};
  }
  const bool variance = m.finite_second_moment() && (m.a > 0.0 || m.has_jumps());
  if (variance && zero_mean(m)) {
    return {Verdict::Fail,
            "finite variance and zero mean: Re eta ~ -sigma^2 u^2/2, Im eta = O(u^3), so the "
            "integrand behaves like 1/u at 0"};
  }
  return {};
}

ProbeResult probe(const RealFunction& f, Interval dom, int budget) {
  return integrability_probe(f, dom, budget);
}

ConditionResult combine(std::string name, const Shortcut& s, const std::optional<ProbeResult>& p,
                        double estimate_scale = 1.0) {
  ConditionResult r;
  r.name = std::move(name);
  if (p) {
    r.numeric_verdict = from_probe(p->verdict);
    r.integral_estimate = p->finite_estimate * estimate_scale;
    r.evidence = p->evidence;
    r.note = p->note;
  }
  if (s.verdict) {
    r.verdict = *s.verdict;
    r.analytic_shortcut_used = true;
    r.rule = s.rule;
    if (r.numeric_verdict && *r.numeric_verdict != Verdict::Inconclusive &&
        *r.numeric_verdict != r.verdict) {
      r.note += (r.note.empty() ? "" : "; ") + std::string("numeric probe disagrees (advisory)");
    }
  } else {
    r.verdict = r.numeric_verdict.value_or(Verdict::Inconclusive);
    r.rule = "numeric integrability probe";
  }
  return r;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

ConditionViolation::ConditionViolation(const std::string& what, ConditionReport report)
    : std::runtime_error(what), report_(std::move(report)) {}

const ConditionResult& ConditionReport::at(const std::string& name) const {
  for (const auto& r : results) {
    if (r.name == name) return r;
  }
  throw std::out_of_range("no condition named " + name);
}

bool ConditionReport::analytic_shortcut_used() const {
  for (const auto& r : results) {
    if (r.analytic_shortcut_used) return true;
  }
  return false;
}

nlohmann::json ConditionReport::to_json() const {
  nlohmann::json j;
  j["model"] = model;
  j["analytic_shortcut_used"] = analytic_shortcut_used();
  nlohmann::json conds = nlohmann::json::object();
  for (const auto& r : results) {
    nlohmann::json c;
    c["verdict"] = to_string(r.verdict);
    c["analytic_shortcut_used"] = r.analytic_shortcut_used;
    c["rule"] = r.rule;
    c["numeric_verdict"] = r.numeric_verdict ? to_string(*r.numeric_verdict) : "not run";
    c["integral_estimate"] = r.integral_estimate;
    c["note"] = r.note;
    nlohmann::json ev = nlohmann::json::array();
    for (const auto& t : r.evidence) {
      ev.push_back({{"lo", t.lo}, {"hi", t.hi}, {"partial", t.partial_integral},
                    {"increment", t.increment}});
    }
    c["evidence"] = ev;
    conds[r.name] = c;
  }
  j["conditions"] = conds;
  j["implication_chain"] = implication_chain;
  return j;
}

std::optional<Verdict> analytic_A(const LevyModel& model) { return shortcut_A(model).verdict; }
std::optional<Verdict> analytic_B(const LevyModel& model) { return shortcut_B(model).verdict; }

ConditionResult check_A(const LevyModel& model, const CheckOptions& opts) {
  const auto s = shortcut_A(model);
  std::optional<ProbeResult> main;
  std::string agreement;
  if (opts.numeric_probes || !s.verdict) {
    CachedSymbol eta(model);
    std::vector<Verdict> verdicts;
    for (double q : {1.0, 0.1, 10.0}) {
      auto p = probe([&](double u) { return std::abs(1.0 / (q - eta(u))); }, Interval{},
                     opts.probe_budget);
      verdicts.push_back(from_probe(p.verdict));
      if (q == 1.0) main = std::move(p);
    }
    const bool agree = verdicts[0] == verdicts[1] && verdicts[0] == verdicts[2];
    agreement = std::string("q in {1, 0.1, 10}: ") + to_string(verdicts[0]) + "/" +
                to_string(verdicts[1]) + "/" + to_string(verdicts[2]);
    if (!agree) main->verdict = Integrability::Inconclusive;
  }
  auto r = combine("A", s, main, 2.0);
  if (!agreement.empty()) r.note = agreement + (r.note.empty() ? "" : "; " + r.note);
  return r;
}

ConditionResult check_B(const LevyModel& model, const CheckOptions& opts) {
  const auto s = shortcut_B(model);
  std::optional<ProbeResult> p;
  if (opts.numeric_probes || !s.verdict) {
    p = probe(
        [&](double u) {
          const cd eta = symbol(model, u);
          if (eta == cd{}) return 0.0;
          return std::abs((u / eta).imag());
        },
        Interval{0.0, 1.0}, opts.probe_budget);
  }
  return combine("B", s, p);
}

ConditionResult check_type_C(const LevyModel& model, const CheckOptions& opts) {
  const auto s = shortcut_type_C(model);
  std::optional<ProbeResult> p;
  if ((opts.numeric_probes || !s.verdict) && model.has_jumps() && model.a == 0.0) {
    p = probe([&](double y) { return y * (model.plus.density(y) + model.minus.density(y)); },
              Interval{0.0, 1.0}, opts.probe_budget);
    // Divergence of the small-jump first moment is what type C asks for.
    if (p->verdict == Integrability::Finite) {
      p->verdict = Integrability::Diverging;
    } else if (p->verdict == Integrability::Diverging) {
      p->verdict = Integrability::Finite;
    }
    p->note = "probe of int_{|y|<=1}|y| nu(dy); verdict inverted (divergence means type C)";
  }
  return combine("A3", s, p);
}

ConditionResult check_L1(const LevyModel& model, const CheckOptions& opts) {
  auto s = shortcut_A(model);
  if (s.verdict) s.rule = "same bound as (A), which is a bound on 1/(q - Re eta): " + s.rule;
  std::optional<ProbeResult> p;
  if (opts.numeric_probes || !s.verdict) {
    p = probe([&](double u) { return 1.0 / (1.0 - symbol(model, u).real()); }, Interval{},
              opts.probe_budget);
  }
  return combine("L1", s, p, 1.0);
}

ConditionResult check_L3(const LevyModel& model, const CheckOptions& opts) {
  const auto s = shortcut_L3(model);
  std::optional<ProbeResult> p;
  if (opts.numeric_probes || !s.verdict) {
    p = probe(
        [&](double u) {
          const cd eta = symbol(model, u);
          const cd d = symbol_derivative(model, u);
          const double n2 = std::norm(eta);
          if (n2 == 0.0) return 0.0;
          return std::min(u * u, 1.0) * (std::abs(d.real()) + std::abs(d.imag())) / n2;
        },
        Interval{}, opts.probe_budget);
  }
  auto r = combine("L3", s, p);
  if (!s.verdict) r.note += (r.note.empty() ? "" : "; ") + std::string("no regression pin for this family");
  return r;
}

ConditionResult check_A1(const LevyModel& model, const CheckOptions& opts) {
  Shortcut s;
  if (shortcut_A(model).verdict == Verdict::Pass) {
    s = {Verdict::Pass, "(A) implies (A1): Re 1/(q-eta) <= |1/(q-eta)|"};
  } else if (model.a == 0.0 && finite_activity(model) &&
             std::abs(effective_drift(model)) <= 1e-14) {
    s = {Verdict::Fail, "bounded symbol: Re 1/(q-eta) >= q/(q + 2 nu(R))^2 > 0"};
  } else if (model.a == 0.0 && model.has_jumps() && has_coefficient(model) &&
             model.activity_index() == 1.0) {
    const double cp = model.plus.singularity_index == 1.0 ? model.plus.near_zero_coefficient : 0.0;
    const double cm = model.minus.singularity_index == 1.0 ? model.minus.near_zero_coefficient : 0.0;
    if (cp != cm) {
      s = {Verdict::Pass, "index-1 jumps with c+ != c-: Im eta ~ (c- - c+) u log u dominates, "
                          "Re 1/(q-eta) = O(1/(u log^2 u))"};
    } else {
      s = {Verdict::Fail, "index-1 jumps with c+ = c-: |eta| = O(u), Re 1/(q-eta) ~ const/u"};
    }
  } else if (!model.has_jumps() && model.a == 0.0 && model.b != 0.0) {
    s = {Verdict::Pass, "pure drift: Re 1/(q - ibu) = q/(q^2 + b^2 u^2)"};
  }
  std::optional<ProbeResult> p;
  if (opts.numeric_probes || !s.verdict) {
    p = probe([&](double u) { return (1.0 / (1.0 - symbol(model, u))).real(); }, Interval{},
              opts.probe_budget);
  }
  return combine("A1", s, p, 2.0);
}

ConditionResult check_A4_direct(const LevyModel& model) {
  ConditionResult r;
  r.name = "A4";
  r.analytic_shortcut_used = true;
  if (model.a > 0.0) {
    r.verdict = Verdict::Pass;
    r.rule = "a > 0";
  } else if (!finite_activity(model)) {
    r.verdict = Verdict::Pass;
    r.rule = "nu has infinite mass";
  } else if (std::abs(effective_drift(model)) > 1e-14) {
    r.verdict = Verdict::Pass;
    r.rule = "finite activity with nonzero drift";
  } else {
    r.verdict = Verdict::Fail;
    r.rule = "a = 0, finite nu, zero drift: compound Poisson";
  }
  return r;
}

ConditionReport regularity_diagnostics(const LevyModel& model, const CheckOptions& opts) {
  ConditionReport rep;
  rep.model = model.label;
  auto a1 = check_A1(model, opts);
  auto a3 = check_type_C(model, opts);
  auto a4d = check_A4_direct(model);
  ConditionResult a2;
  a2.name = "A2";
  ConditionResult a4 = a4d;
  if (a1.verdict == Verdict::Pass && a3.verdict == Verdict::Pass) {
    a2.verdict = Verdict::Pass;
    a2.rule = "(A1) and (A3) imply (A2) and (A4)";
    a4.verdict = Verdict::Pass;
    a4.rule = a2.rule + "; direct check: " + a4d.rule;
    rep.implication_chain.push_back("(A1) & (A3) => (A2) & (A4)");
  } else if (a1.verdict == Verdict::Pass && a3.verdict == Verdict::Fail) {
    a2.verdict = Verdict::Fail;
    a2.rule = "under (A1), (A2) holds iff (A3) holds";
    rep.implication_chain.push_back("(A1) & not (A3) => not (A2)");
  } else if (a1.verdict == Verdict::Fail) {
    if (a4d.verdict == Verdict::Pass) {
      a2.verdict = Verdict::Fail;
      a2.rule = "(A2) & (A4) would imply (A1)";
      rep.implication_chain.push_back("not (A1) & (A4) => not (A2)");
    } else {
      a2.verdict = Verdict::Inconclusive;
      a2.rule = "(A1) and (A4) both fail; the equivalence does not decide (A2)";
    }
  } else {
    a2.verdict = Verdict::Inconclusive;
    a2.rule = "(A1) undecided";
  }
  a2.analytic_shortcut_used = a1.analytic_shortcut_used && a3.analytic_shortcut_used;
  rep.results = {a1, a2, a3, a4};
  return rep;
}

ConditionReport full_report(const LevyModel& model, const CheckOptions& opts) {
  ConditionReport rep;
  rep.model = model.label;
  auto a = check_A(model, opts);
  auto b = check_B(model, opts);
  auto reg = regularity_diagnostics(model, opts);
  auto l1 = check_L1(model, opts);
  auto l2 = reg.at("A3");
  l2.name = "L2";
  l2.rule = "same as (A3): " + l2.rule;
  auto l3 = check_L3(model, opts);
  rep.results = {a, b};
  for (const auto& r : reg.results) rep.results.push_back(r);
  rep.results.push_back(l1);
  rep.results.push_back(l2);
  rep.results.push_back(l3);
  rep.implication_chain = reg.implication_chain;
  if (a.verdict == Verdict::Pass) {
    rep.implication_chain.push_back("(A) => (A1), (A2), (A3), (A4)");
    for (const char* n : {"A1", "A2", "A3", "A4"}) {
      for (auto& r : rep.results) {
        if (r.name == n && r.verdict != Verdict::Pass) {
          r.note += (r.note.empty() ? "" : "; ") +
                    std::string("inconsistent with (A) passing; (A) implies this condition");
          r.verdict = Verdict::Pass;
        }
      }
    }
  }
  return rep;
}

void require_conditions(const LevyModel& model, bool need_B, bool force) {
  // With probes off, a check costs nothing beyond its analytic rule when one applies.
  auto decide = [&](const std::string& name, const ConditionResult& r) {
    if (r.verdict == Verdict::Pass) return;
    if (r.verdict == Verdict::Inconclusive && force) return;
    ConditionReport rep;
    rep.model = model.label;
    rep.results.push_back(r);
    throw ConditionViolation("condition (" + name + ") " + to_string(r.verdict) + " for model " +
                                 model.label + (r.verdict == Verdict::Inconclusive
                                                    ? " (use --force to proceed)"
                                                    : ""),
                             rep);
  };
  const CheckOptions quick{false, 40};
  decide("A", check_A(model, quick));
  if (need_B) decide("B", check_B(model, quick));
}

}  // namespace levy
