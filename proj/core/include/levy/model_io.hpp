#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "levy/levy_model.hpp"

namespace levy {

/// Parses a model spec (see docs/model-spec.md). Throws InvalidModel on
/// unknown families, unknown keys, missing or out-of-range parameters.
LevyModel model_from_json(const nlohmann::json& spec);

/// Canonical spec: every parameter spelled out, keys sorted. Models built on
/// density handles cannot be serialised and throw InvalidModel.
nlohmann::json model_to_json(const LevyModel& model);

/// Reads and parses a spec file. Throws InvalidModel for unreadable files and
/// JSON syntax errors.
LevyModel load_model(const std::string& path);

std::string canonical_model_string(const LevyModel& model);

std::uint64_t fnv1a64(std::string_view data);

/// 16 hex digits of fnv1a64(canonical_model_string(model)).
std::string model_hash(const LevyModel& model);

}  // namespace levy
