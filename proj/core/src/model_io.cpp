#include "levy/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace levy {
namespace {

using nlohmann::json;

void allow_keys(const json& j, const std::set<std::string>& keys, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    if (!keys.count(k)) throw InvalidModel(where + ": unknown key '" + k + "'");
  }
}

double num(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw InvalidModel(where + ": missing '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw InvalidModel(where + ": '" + key + "' must be a number");
  return v.get<double>();
}

double num_or(const json& j, const std::string& key, double fallback, const std::string& where) {
  return j.contains(key) ? num(j, key, where) : fallback;
}

std::vector<PowerLawTerm> parse_terms(const json& j, const std::string& where) {
  if (!j.is_array()) throw InvalidModel(where + " must be an array of terms");
  std::vector<PowerLawTerm> out;
  for (const auto& t : j) {
    if (!t.is_object()) throw InvalidModel(where + ": each term must be an object");
    allow_keys(t, {"c", "alpha", "lambda", "support"}, where);
    PowerLawTerm p;
    p.c = num(t, "c", where);
    p.alpha = num(t, "alpha", where);
    p.lambda = num_or(t, "lambda", 0.0, where);
    if (t.contains("support") && !t.at("support").is_null()) p.support = num(t, "support", where);
    out.push_back(p);
  }
  return out;
}

json terms_to_json(const JumpSide& s) {
  if (s.handle) throw InvalidModel("models built on density handles cannot be serialised");
  json arr = json::array();
  for (const auto& t : s.terms) {
    json o = {{"c", t.c}, {"alpha", t.alpha}, {"lambda", t.lambda}};
    o["support"] = std::isinf(t.support) ? json(nullptr) : json(t.support);
    arr.push_back(o);
  }
  return arr;
}

}  // namespace

LevyModel model_from_json(const json& spec) {
  if (!spec.is_object()) throw InvalidModel("model spec must be a JSON object");
  if (spec.contains("preset")) {
    allow_keys(spec, {"preset", "label"}, "preset spec");
    if (!spec.at("preset").is_string()) throw InvalidModel("'preset' must be a string");
    auto m = preset(spec.at("preset").get<std::string>());
    if (spec.contains("label")) m.label = spec.at("label").get<std::string>();
    return m;
  }
  if (!spec.contains("family") || !spec.at("family").is_string()) {
    std::string valid;
    for (const auto& n : family_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw InvalidModel("model spec needs a string 'family' (one of: " + valid + ") or a 'preset'");
  }
  const Family fam = family_from_string(spec.at("family").get<std::string>());
  const std::string where = to_string(fam);
  LevyModel m;
  switch (fam) {
    case Family::Stable: {
      allow_keys(spec, {"family", "label", "alpha", "d", "beta", "c_plus", "c_minus", "b", "a"}, where);
      const double alpha = num(spec, "alpha", where);
      const bool by_scale = spec.contains("d") || spec.contains("beta");
      const bool by_measure = spec.contains("c_plus") || spec.contains("c_minus");
      if (num_or(spec, "b", 0.0, where) != 0.0 || num_or(spec, "a", 0.0, where) != 0.0) {
        throw InvalidModel("stable: b and a must be 0 (use a custom model for extra drift)");
      }
      if (by_scale) {
        m = LevyModel::stable_from_scale(alpha, num(spec, "d", where), num_or(spec, "beta", 0.0, where));
        if (by_measure) {
          const double cp = num(spec, "c_plus", where), cm = num(spec, "c_minus", where);
          const double scale = cp + cm;
          if (std::abs(cp - m.stable->c_plus) > 1e-9 * scale ||
              std::abs(cm - m.stable->c_minus) > 1e-9 * scale) {
            throw InvalidModel("stable: (c_plus, c_minus) inconsistent with (d, beta)");
          }
        }
      } else if (by_measure) {
        m = LevyModel::stable_from_levy_measure(alpha, num(spec, "c_plus", where),
                                                num(spec, "c_minus", where));
      } else {
        throw InvalidModel("stable: give (d, beta) or (c_plus, c_minus)");
      }
      break;
    }
    case Family::TruncatedStable:
      allow_keys(spec, {"family", "label", "alpha", "c_plus", "c_minus", "b", "a"}, where);
      m = LevyModel::truncated_stable(num(spec, "alpha", where), num(spec, "c_plus", where),
                                      num(spec, "c_minus", where), num_or(spec, "b", 0.0, where),
                                      num_or(spec, "a", 0.0, where));
      break;
    case Family::TemperedStable:
      allow_keys(spec,
                 {"family", "label", "alpha_plus", "alpha_minus", "c_plus", "c_minus", "lambda_plus",
                  "lambda_minus", "b", "a"},
                 where);
      m = LevyModel::tempered_stable(num(spec, "alpha_plus", where), num(spec, "alpha_minus", where),
                                     num(spec, "c_plus", where), num(spec, "c_minus", where),
                                     num(spec, "lambda_plus", where), num(spec, "lambda_minus", where),
                                     num_or(spec, "b", 0.0, where), num_or(spec, "a", 0.0, where));
      break;
    case Family::BrownianWithDrift:
      allow_keys(spec, {"family", "label", "b", "a"}, where);
      m = LevyModel::brownian(num_or(spec, "b", 0.0, where), num_or(spec, "a", 1.0, where));
      break;
    case Family::CustomTriplet:
      allow_keys(spec, {"family", "label", "b", "a", "plus", "minus"}, where);
      m = LevyModel::custom(
          num_or(spec, "b", 0.0, where), num_or(spec, "a", 0.0, where),
          JumpSide::from_terms(spec.contains("plus") ? parse_terms(spec.at("plus"), "custom.plus")
                                                     : std::vector<PowerLawTerm>{}),
          JumpSide::from_terms(spec.contains("minus") ? parse_terms(spec.at("minus"), "custom.minus")
                                                      : std::vector<PowerLawTerm>{}));
      break;
  }
  if (spec.contains("label")) {
    if (!spec.at("label").is_string()) throw InvalidModel("'label' must be a string");
    m.label = spec.at("label").get<std::string>();
  }
  return m;
}

json model_to_json(const LevyModel& m) {
  json j;
  j["family"] = to_string(m.family);
  j["label"] = m.label;
  switch (m.family) {
    case Family::Stable:
      j["alpha"] = m.stable->alpha;
      j["d"] = m.stable->d;
      j["beta"] = m.stable->beta;
      j["c_plus"] = m.stable->c_plus;
      j["c_minus"] = m.stable->c_minus;
      break;
    case Family::TruncatedStable:
      j["alpha"] = m.plus.terms.at(0).alpha;
      j["c_plus"] = m.plus.terms.at(0).c;
      j["c_minus"] = m.minus.terms.at(0).c;
      j["b"] = m.b;
      j["a"] = m.a;
      break;
    case Family::TemperedStable:
      j["alpha_plus"] = m.plus.terms.at(0).alpha;
      j["alpha_minus"] = m.minus.terms.at(0).alpha;
      j["c_plus"] = m.plus.terms.at(0).c;
      j["c_minus"] = m.minus.terms.at(0).c;
      j["lambda_plus"] = m.plus.terms.at(0).lambda;
      j["lambda_minus"] = m.minus.terms.at(0).lambda;
      j["b"] = m.b;
      j["a"] = m.a;
      break;
    case Family::BrownianWithDrift:
      j["b"] = m.b;
      j["a"] = m.a;
      break;
    case Family::CustomTriplet:
      j["b"] = m.b;
      j["a"] = m.a;
      j["plus"] = terms_to_json(m.plus);
      j["minus"] = terms_to_json(m.minus);
      break;
  }
  return j;
}

LevyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidModel("cannot open model file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidModel("malformed model file '" + path + "': " + e.what());
  }
  return model_from_json(j);
}

std::string canonical_model_string(const LevyModel& model) { return model_to_json(model).dump(); }

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string model_hash(const LevyModel& model) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_model_string(model))));
  return buf;
}

}  // namespace levy
