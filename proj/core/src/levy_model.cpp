#include "levy/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "levy/quadrature.hpp"

namespace levy {
namespace {

const std::vector<std::pair<Family, std::string>>& family_table() {
  static const std::vector<std::pair<Family, std::string>> t = {
      {Family::Stable, "stable"},
      {Family::TruncatedStable, "truncated_stable"},
      {Family::TemperedStable, "tempered_stable"},
      {Family::BrownianWithDrift, "brownian"},
      {Family::CustomTriplet, "custom"},
  };
  return t;
}

bool finite(double v) { return std::isfinite(v); }

// Integral of f over [lo, hi] within (0, inf), where f(y) ~ y^e0 near 0.
double integrate_positive(const std::function<double(double)>& f, double lo, double hi,
                          double e0) {
  if (!(hi > lo)) return 0.0;
  constexpr double kRel = 1e-11;
  constexpr double kAbs = 1e-15;
  double total = 0.0;
  const double mid_hi = std::min(hi, 1.0);
  if (lo < mid_hi) {
    if (lo <= 0.0) {
      if (e0 <= -1.0) return kInf;
      const double p = e0 < 0.0 ? 1.0 / (1.0 + e0) : 1.0;
      auto g = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double y = mid_hi * std::pow(t, p);
        return f(y) * p * mid_hi * std::pow(t, p - 1.0);
      };
      total += integrate_interval(g, 0.0, 1.0, kAbs, kRel, 400'000, 8).value;
    } else {
      auto g = [&](double t) {
        const double y = std::exp(t);
        return f(y) * y;
      };
      const double a = std::log(lo), b = std::log(mid_hi);
      const int cells = std::max(1, static_cast<int>(std::ceil(b - a)));
      total += integrate_interval(g, a, b, kAbs, kRel, 400'000, cells).value;
    }
  }
  const double tail_lo = std::max(lo, 1.0);
  if (tail_lo < hi) {
    if (std::isinf(hi)) {
      auto r = integrate_smooth_tail(f, tail_lo, kAbs, kRel);
      if (!r.converged && !finite(r.value)) return kInf;
      total += r.value;
    } else {
      auto g = [&](double t) {
        const double y = std::exp(t);
        return f(y) * y;
      };
      const double a = std::log(tail_lo), b = std::log(hi);
      const int cells = std::max(1, static_cast<int>(std::ceil(b - a)));
      total += integrate_interval(g, a, b, kAbs, kRel, 400'000, cells).value;
    }
  }
  return total;
}

double term_moment(const PowerLawTerm& t, double m, double lo, double hi) {
  hi = std::min(hi, t.support);
  if (!(hi > lo) || t.c == 0.0) return 0.0;
  const double e = m - t.alpha;
  if (t.lambda == 0.0) {
    if (lo <= 0.0 && e <= 0.0) return kInf;
    if (std::isinf(hi) && e >= 0.0) return kInf;
    if (std::abs(e) < 1e-14) return t.c * std::log(hi / lo);
    const double hi_part = std::isinf(hi) ? 0.0 : std::pow(hi, e);
    const double lo_part = lo <= 0.0 ? 0.0 : std::pow(lo, e);
    return t.c * (hi_part - lo_part) / e;
  }
  auto f = [&](double y) { return t.c * std::pow(y, m - t.alpha - 1.0) * std::exp(-t.lambda * y); };
  return integrate_positive(f, lo, hi, m - t.alpha - 1.0);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidModel(what);
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& [fam, name] : family_table()) {
    if (fam == f) return name;
  }
  return "unknown";
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : family_table()) n.push_back(e.second);
    return n;
  }();
  return names;
}

Family family_from_string(const std::string& name) {
  for (const auto& [fam, n] : family_table()) {
    if (n == name) return fam;
  }
  std::string valid;
  for (const auto& n : family_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw InvalidModel("unknown family '" + name + "'; valid families: " + valid);
}

double PowerLawTerm::density(double y) const {
  if (!(y > 0.0) || y > support || c == 0.0) return 0.0;
  double v = c * std::pow(y, -alpha - 1.0);
  if (lambda != 0.0) v *= std::exp(-lambda * y);
  return v;
}

double stable_c(double alpha) {
  return std::tgamma(alpha + 1.0) * std::sin(std::numbers::pi * alpha / 2.0) / std::numbers::pi;
}

JumpSide JumpSide::from_terms(std::vector<PowerLawTerm> terms) {
  JumpSide s;
  s.terms = std::move(terms);
  double sing = -kInf;
  double coef = 0.0;
  double rate = kInf;
  double index = kInf;
  double support = 0.0;
  bool unbounded = false;
  for (const auto& t : s.terms) {
    if (t.c <= 0.0) continue;
    if (t.alpha > sing + 1e-15) {
      sing = t.alpha;
      coef = t.c;
    } else if (std::abs(t.alpha - sing) <= 1e-15) {
      coef += t.c;
    }
    support = std::max(support, t.support);
    if (std::isinf(t.support)) {
      unbounded = true;
      rate = std::min(rate, t.lambda);
      if (t.lambda == 0.0) index = std::min(index, t.alpha);
    }
  }
  s.singularity_index = std::isinf(sing) ? 0.0 : sing;
  s.near_zero_coefficient = coef;
  s.support = support;
  s.tail_rate = unbounded ? rate : 0.0;
  s.tail_index = (unbounded && rate == 0.0) ? index : 0.0;
  return s;
}

JumpSide JumpSide::from_function(std::function<double(double)> density, double singularity_index,
                                 double near_zero_coefficient, double tail_rate,
                                 double tail_index, double support) {
  JumpSide s;
  s.handle = std::move(density);
  s.singularity_index = singularity_index;
  s.near_zero_coefficient = near_zero_coefficient;
  s.tail_rate = tail_rate;
  s.tail_index = tail_index;
  s.support = support;
  return s;
}

bool JumpSide::empty() const {
  if (handle) return support <= 0.0;
  return std::none_of(terms.begin(), terms.end(), [](const PowerLawTerm& t) { return t.c > 0.0; });
}

double JumpSide::density(double y) const {
  if (!(y > 0.0) || y > support) return 0.0;
  if (handle) return handle(y);
  double v = 0.0;
  for (const auto& t : terms) v += t.density(y);
  return v;
}

double JumpSide::moment(double m, double lo, double hi) const {
  if (empty()) return 0.0;
  hi = std::min(hi, support);
  if (!(hi > lo)) return 0.0;
  if (!handle) {
    double v = 0.0;
    for (const auto& t : terms) v += term_moment(t, m, lo, hi);
    return v;
  }
  if (std::isinf(hi) && tail_rate == 0.0 && m >= tail_index) return kInf;
  auto f = [&](double y) { return std::pow(y, m) * handle(y); };
  return integrate_positive(f, lo, hi, m - singularity_index - 1.0);
}

bool JumpSide::finite_second_moment() const {
  if (empty()) return true;
  return std::isfinite(support) || tail_rate > 0.0 || tail_index > 2.0;
}

bool JumpSide::finite_first_moment_at_infinity() const {
  if (empty()) return true;
  return std::isfinite(support) || tail_rate > 0.0 || tail_index > 1.0;
}

LevyModel LevyModel::stable_from_levy_measure(double alpha, double c_plus, double c_minus) {
  require(alpha > 1.0 && alpha < 2.0, "stable: alpha must lie in (1,2)");
  require(c_plus >= 0.0 && c_minus >= 0.0 && c_plus + c_minus > 0.0,
          "stable: need c+, c- >= 0 with c+ + c- > 0");
  LevyModel m;
  m.family = Family::Stable;
  StableParams p;
  p.alpha = alpha;
  p.c_plus = c_plus;
  p.c_minus = c_minus;
  p.d = (c_plus + c_minus) / (2.0 * stable_c(alpha));
  p.beta = (c_plus - c_minus) / (c_plus + c_minus);
  m.stable = p;
  m.plus = JumpSide::from_terms({{c_plus, alpha, 0.0, kInf}});
  m.minus = JumpSide::from_terms({{c_minus, alpha, 0.0, kInf}});
  m.label = "stable";
  m.validate();
  return m;
}

LevyModel LevyModel::stable_from_scale(double alpha, double d, double beta) {
  require(alpha > 1.0 && alpha < 2.0, "stable: alpha must lie in (1,2)");
  require(d > 0.0, "stable: d must be positive");
  require(beta >= -1.0 && beta <= 1.0, "stable: beta must lie in [-1,1]");
  const double cc = stable_c(alpha);
  LevyModel m = stable_from_levy_measure(alpha, d * cc * (1.0 + beta), d * cc * (1.0 - beta));
  // Keep the caller's (d, beta) bit-exact; validate() checks consistency.
  m.stable->d = d;
  m.stable->beta = beta;
  m.validate();
  return m;
}

LevyModel LevyModel::truncated_stable(double alpha, double c_plus, double c_minus, double b,
                                      double a) {
  LevyModel m;
  m.family = Family::TruncatedStable;
  m.b = b;
  m.a = a;
  m.plus = JumpSide::from_terms({{c_plus, alpha, 0.0, 1.0}});
  m.minus = JumpSide::from_terms({{c_minus, alpha, 0.0, 1.0}});
  m.label = "truncated_stable";
  m.validate();
  return m;
}

LevyModel LevyModel::tempered_stable(double alpha_plus, double alpha_minus, double c_plus,
                                     double c_minus, double lambda_plus, double lambda_minus,
                                     double b, double a) {
  LevyModel m;
  m.family = Family::TemperedStable;
  m.b = b;
  m.a = a;
  m.plus = JumpSide::from_terms({{c_plus, alpha_plus, lambda_plus, kInf}});
  m.minus = JumpSide::from_terms({{c_minus, alpha_minus, lambda_minus, kInf}});
  m.label = "tempered_stable";
  m.validate();
  return m;
}

LevyModel LevyModel::brownian(double b, double a) {
  LevyModel m;
  m.family = Family::BrownianWithDrift;
  m.b = b;
  m.a = a;
  m.label = "brownian";
  m.validate();
  return m;
}

LevyModel LevyModel::custom(double b, double a, JumpSide plus, JumpSide minus, std::string label) {
  LevyModel m;
  m.family = Family::CustomTriplet;
  m.b = b;
  m.a = a;
  m.plus = std::move(plus);
  m.minus = std::move(minus);
  m.label = std::move(label);
  m.validate();
  return m;
}

void LevyModel::validate() const {
  require(finite(b), "drift b must be finite");
  require(finite(a) && a >= 0.0, "Gaussian coefficient a must be finite and >= 0");
  auto check_terms = [](const JumpSide& s, double lo, double hi, bool tempered_ok,
                        const std::string& fam) {
    for (const auto& t : s.terms) {
      require(finite(t.c) && t.c >= 0.0, fam + ": jump coefficients must be >= 0");
      require(t.alpha > lo && t.alpha < hi, fam + ": alpha out of range");
      require(finite(t.lambda) && t.lambda >= 0.0 && (tempered_ok || t.lambda == 0.0),
              fam + ": invalid tempering rate");
      require(t.support > 0.0, fam + ": support must be positive");
    }
  };
  const double mass_sum = [&] {
    double v = 0.0;
    for (const auto& t : plus.terms) v += t.c;
    for (const auto& t : minus.terms) v += t.c;
    return v;
  }();
  switch (family) {
    case Family::Stable: {
      require(stable.has_value(), "stable: parameters missing");
      const auto& p = *stable;
      require(p.alpha > 1.0 && p.alpha < 2.0, "stable: alpha must lie in (1,2)");
      require(p.d > 0.0 && finite(p.d), "stable: d must be positive");
      require(p.beta >= -1.0 && p.beta <= 1.0, "stable: beta must lie in [-1,1]");
      require(b == 0.0 && a == 0.0,
              "stable: b and a must be 0 (extra drift or diffusion belongs in a custom model)");
      const double cc = stable_c(p.alpha);
      const double scale = p.c_plus + p.c_minus;
      require(std::abs(p.c_plus - p.d * cc * (1.0 + p.beta)) <= 1e-12 * scale + 1e-300 &&
                  std::abs(p.c_minus - p.d * cc * (1.0 - p.beta)) <= 1e-12 * scale + 1e-300,
              "stable: (c+, c-) inconsistent with (d, beta)");
      break;
    }
    case Family::TruncatedStable:
      check_terms(plus, 1.0, 2.0, false, "truncated_stable");
      check_terms(minus, 1.0, 2.0, false, "truncated_stable");
      require(mass_sum > 0.0, "truncated_stable: need c+ + c- > 0");
      break;
    case Family::TemperedStable:
      check_terms(plus, 1.0, 2.0, true, "tempered_stable");
      check_terms(minus, 1.0, 2.0, true, "tempered_stable");
      require(mass_sum > 0.0, "tempered_stable: need c+ + c- > 0");
      break;
    case Family::BrownianWithDrift:
      require(plus.empty() && minus.empty(), "brownian: no jump measure allowed");
      break;
    case Family::CustomTriplet: {
      for (const JumpSide* s : {&plus, &minus}) {
        check_terms(*s, -kInf, 2.0, true, "custom");
        if (s->handle) {
          require(s->singularity_index < 2.0, "custom: singularity index must be < 2");
          require(s->tail_rate >= 0.0, "custom: tail rate must be >= 0");
        }
        if (s->empty()) continue;
        const double small = s->moment(2.0, 0.0, 1.0);
        const double large = s->moment(0.0, 1.0, kInf);
        require(std::isfinite(small) && std::isfinite(large),
                "custom: jump measure fails int (y^2 ^ 1) nu(dy) < inf");
      }
      break;
    }
  }
}

bool LevyModel::has_jumps() const { return !plus.empty() || !minus.empty(); }

bool LevyModel::is_symmetric() const {
  if (family == Family::Stable) return stable->c_plus == stable->c_minus;
  if (b != 0.0) return false;
  if (plus.handle || minus.handle) return false;
  auto key = [](const JumpSide& s) {
    std::vector<std::tuple<double, double, double, double>> v;
    for (const auto& t : s.terms) {
      if (t.c > 0.0) v.emplace_back(t.c, t.alpha, t.lambda, t.support);
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  return key(plus) == key(minus);
}

double LevyModel::activity_index() const {
  double s = -kInf;
  for (const JumpSide* side : {&plus, &minus}) {
    if (!side->empty() && side->near_zero_coefficient > 0.0) {
      s = std::max(s, side->singularity_index);
    }
  }
  return s;
}

bool LevyModel::finite_second_moment() const {
  return plus.finite_second_moment() && minus.finite_second_moment();
}

bool LevyModel::finite_first_moment_at_infinity() const {
  return plus.finite_first_moment_at_infinity() && minus.finite_first_moment_at_infinity();
}

double LevyModel::truncation_drift() const {
  if (family == Family::Stable) {
    return -(stable->c_plus - stable->c_minus) / (stable->alpha - 1.0);
  }
  return b;
}

double LevyModel::mean_drift() const {
  if (!finite_first_moment_at_infinity()) return std::numeric_limits<double>::quiet_NaN();
  return truncation_drift() + plus.moment(1.0, 1.0, kInf) - minus.moment(1.0, 1.0, kInf);
}

double LevyModel::low_frequency_index() const {
  double k = 2.0;
  for (const JumpSide* s : {&plus, &minus}) {
    if (s->empty() || std::isfinite(s->support) || s->tail_rate > 0.0) continue;
    k = std::min(k, s->tail_index);
  }
  return k;
}

namespace {

LevyModel make_preset(const std::string& name) {
  if (name == "stable") return LevyModel::stable_from_scale(1.5, 1.0, 0.0);
  if (name == "stable_asym") {
    auto m = LevyModel::stable_from_scale(1.5, 1.0, 0.5);
    m.label = "stable_asym";
    return m;
  }
  if (name == "truncated_stable") return LevyModel::truncated_stable(1.5, 1.0, 0.5);
  if (name == "tempered_stable") {
    // Asymmetric tempering with the drift that makes the process centred.
    auto m = LevyModel::tempered_stable(1.5, 1.3, 1.0, 1.0, 1.0, 2.0);
    m.b = -(m.plus.moment(1.0, 1.0, kInf) - m.minus.moment(1.0, 1.0, kInf));
    m.validate();
    return m;
  }
  if (name == "integrable_drift") {
    auto side = JumpSide::from_terms({{1.0, 1.5, 1.0, kInf}});
    return LevyModel::custom(0.5, 0.0, side, side, "integrable_drift");
  }
  if (name == "spectrally_negative") {
    auto neg = JumpSide::from_terms({{1.0, 1.5, 1.0, kInf}});
    const double b = neg.moment(1.0, 1.0, kInf);
    return LevyModel::custom(b, 0.0, JumpSide::from_terms({}), neg, "spectrally_negative");
  }
  if (name == "brownian") return LevyModel::brownian(0.0, 1.0);
  if (name == "asymmetric_cauchy") {
    return LevyModel::custom(0.0, 0.0, JumpSide::from_terms({{1.0, 1.0, 0.0, kInf}}),
                             JumpSide::from_terms({{0.25, 1.0, 0.0, kInf}}),
                             "asymmetric_cauchy");
  }
  if (name == "compound_poisson") {
    auto side = JumpSide::from_terms({{1.0, -0.5, 0.0, 1.0}});
    return LevyModel::custom(0.0, 0.0, side, side, "compound_poisson");
  }
  std::string valid;
  for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw InvalidModel("unknown preset '" + name + "'; valid presets: " + valid);
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "stable",           "stable_asym",         "truncated_stable",
      "tempered_stable",  "integrable_drift",    "spectrally_negative",
      "brownian",         "asymmetric_cauchy",   "compound_poisson"};
  return names;
}

LevyModel preset(const std::string& name) { return make_preset(name); }

}  // namespace levy
