#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "levy/model_io.hpp"
#include "levy/symbol.hpp"

using namespace levy;
using nlohmann::json;

TEST_SUITE("model_io") {

TEST_CASE("round trip for every preset") {
  for (const auto& name : preset_names()) {
    auto m = preset(name);
    auto j = model_to_json(m);
    auto back = model_from_json(j);
    CAPTURE(name);
    CHECK(canonical_model_string(back) == canonical_model_string(m));
    CHECK(model_hash(back) == model_hash(m));
    CHECK(symbol(back, 1.3) == symbol(m, 1.3));
  }
}

TEST_CASE("preset specs") {
  auto m = model_from_json(json{{"preset", "tempered_stable"}, {"label", "ts"}});
  CHECK(m.label == "ts");
  CHECK(m.family == Family::TemperedStable);
}

TEST_CASE("family specs") {
  auto s = model_from_json(json{{"family", "stable"}, {"alpha", 1.5}, {"d", 1.0}, {"beta", 0.5}});
  CHECK(s.stable->beta == 0.5);
  auto t = model_from_json(json{{"family", "truncated_stable"}, {"alpha", 1.5}, {"c_plus", 1.0}, {"c_minus", 0.5}});
  CHECK(symbol(t, 2.0) == symbol(preset("truncated_stable"), 2.0));
  auto c = model_from_json(json::parse(R"({"family":"custom","b":0.5,
      "plus":[{"c":1.0,"alpha":1.5,"lambda":1.0}],"minus":[{"c":1.0,"alpha":1.5,"lambda":1.0}]})"));
  CHECK(symbol(c, 2.0) == symbol(preset("integrable_drift"), 2.0));
}

TEST_CASE("rejections name the problem") {
  auto msg = [](const json& j) {
    try {
      (void)model_from_json(j);
    } catch (const InvalidModel& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg(json{{"family", "gamma"}}).find("stable") != std::string::npos);
  CHECK(msg(json{{"family", "stable"}, {"alpha", 1.5}, {"d", 1.0}, {"gamma", 1}}).find("gamma") != std::string::npos);
  CHECK(msg(json{{"family", "stable"}, {"d", 1.0}}).find("alpha") != std::string::npos);
  CHECK_FALSE(msg(json{{"family", "stable"}, {"alpha", 2.5}, {"d", 1.0}}).empty());
  CHECK_FALSE(msg(json{{"family", "stable"}, {"alpha", 1.5}, {"d", 1.0}, {"b", 1.0}}).empty());
  CHECK_FALSE(msg(json::array()).empty());
  CHECK_FALSE(msg(json{{"preset", "nope"}}).empty());
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "levy_model_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "ok.json") << R"({"family": "brownian", "b": 0.25, "a": 2})";
    std::ofstream(dir / "bad.json") << R"({"family": "brownian", )";
  }
  auto m = load_model((dir / "ok.json").string());
  CHECK(m.b == 0.25);
  CHECK(m.a == 2.0);
  CHECK_THROWS_AS(load_model((dir / "bad.json").string()), InvalidModel);
  CHECK_THROWS_AS(load_model((dir / "missing.json").string()), InvalidModel);
  std::filesystem::remove_all(dir);
}

TEST_CASE("shipped model files load") {
  int n = 0;
  for (const auto& e : std::filesystem::directory_iterator(LEVY_MODELS_DIR)) {
    if (e.path().extension() != ".json") continue;
    CAPTURE(e.path().string());
    CHECK_NOTHROW((void)load_model(e.path().string()));
    ++n;
  }
  CHECK(n >= 5);
}

TEST_CASE("hashes") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(model_hash(preset("stable")) != model_hash(preset("stable_asym")));
  CHECK(model_hash(preset("stable")).size() == 16);
}

TEST_CASE("density handles cannot be serialised") {
  auto side = JumpSide::from_function([](double y) { return std::exp(-y) / y; }, 0.0, 1.0, 1.0, 0.0, kInf);
  CHECK_THROWS_AS(model_to_json(LevyModel::custom(0.0, 1.0, side, side)), InvalidModel);
}

}  // TEST_SUITE
