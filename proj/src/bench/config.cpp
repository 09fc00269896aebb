// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/bench/config.hpp"

#include <set>
#include <stdexcept>
#include <type_traits>

#include <json.hpp>

#include "vde/simd/kernels.hpp"

namespace vde::bench {

using nlohmann::ordered_json;

std::string FieldSpec::label() const {
  switch (kind) {
    case FieldKind::kGaussian: return "gaussian";
    case FieldKind::kControlled: return "controlled";
    case FieldKind::kMlp: return "mlp:" + weights_path;
  }
  return "gaussian";
}

void apply_field_label(FieldSpec& desc, std::string_view label) {
  if (label == "gaussian") {
    desc.kind = FieldKind::kGaussian;
  } else if (label == "controlled") {
    desc.kind = FieldKind::kControlled;
  } else if (label.starts_with("mlp:") && label.size() > 4) {
    desc.kind = FieldKind::kMlp;
    desc.weights_path = std::string(label.substr(4));
  } else {
    fail(Errc::kInvalidConfig,
         "field must be gaussian, controlled or mlp:<path>, got '" + std::string(label) + "'");
  }
}

Shape ExperimentConfig::latent_shape() const {
  if (shape.size() == 2) return Shape::grid(shape[0], shape[1]);
  if (shape.size() == 1) return Shape::flat(shape[0]);
  fail(Errc::kInvalidConfig, "shape must be [d] or [h, w]");
}

TimeGrid ExperimentConfig::grid() const {
  return spacing == Spacing::kUniform ? TimeGrid::uniform(steps) : TimeGrid::shifted(steps, shift);
}

std::optional<std::size_t> locate_key_line(std::string_view text, std::string_view pointer) {
  struct Frame {
    bool object;
    bool expect_key;
    std::string path;
    std::string pending;  // last key seen in this object
  };
  std::vector<Frame> stack;
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
    } else if (ch == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        s += text[i];
      }
      if (!stack.empty() && stack.back().object && stack.back().expect_key) {
        Frame& f = stack.back();
        f.pending = s;
        f.expect_key = false;
        if (f.path + "/" + s == pointer) return line;
      }
    } else if (ch == '{' || ch == '[') {
      std::string path;
      if (!stack.empty()) {
        path = stack.back().object ? stack.back().path + "/" + stack.back().pending
                                   : stack.back().path + "/*";
      }
      stack.push_back({ch == '{', ch == '{', std::move(path), {}});
    } else if (ch == '}' || ch == ']') {
      if (!stack.empty()) stack.pop_back();
    } else if (ch == ',') {
      if (!stack.empty() && stack.back().object) stack.back().expect_key = true;
    }
  }
  return std::nullopt;
}

namespace {

class Reader {
 public:
  Reader(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {}

  [[noreturn]] void error(const std::string& pointer, const std::string& message) const {
    std::string where(origin_);
    if (auto line = locate_key_line(text_, pointer)) where += ":" + std::to_string(*line);
    fail(Errc::kInvalidConfig, where + ": " + message);
  }

  void reject_unknown(const ordered_json& obj, const std::string& base,
                      const std::set<std::string>& known) const {
    for (const auto& [key, _] : obj.items()) {
      if (!known.contains(key)) error(base + "/" + key, "unknown key '" + key + "'");
    }
  }

  template <class T>
  T get(const ordered_json& obj, const std::string& base, const char* key,
        const char* expected) const {
    const std::string pointer = base + "/" + key;
    try {
      const ordered_json& v = obj.at(key);
      if constexpr (std::is_unsigned_v<T>) {
        if (!v.is_number_unsigned()) throw std::invalid_argument("signed");
      } else if constexpr (std::is_same_v<T, std::vector<std::size_t>>) {
        for (const auto& e : v) {
          if (!e.is_number_unsigned()) throw std::invalid_argument("signed");
        }
      }
      return v.template get<T>();
    } catch (const std::exception&) {
      error(pointer, std::string("'") + key + "' must be " + expected);
    }
  }

 private:
  std::string_view text_;
  std::string_view origin_;
};

PolynomialSpec polynomial(const Reader& rd, const ordered_json& obj, const std::string& base) {
  rd.reject_unknown(obj, base, {"breaks", "pieces"});
  PolynomialSpec p;
  if (obj.contains("breaks")) {
    p.breaks = rd.get<std::vector<double>>(obj, base, "breaks", "a list of numbers");
  }
  p.pieces = rd.get<std::vector<std::vector<double>>>(obj, base, "pieces",
                                                      "a list of coefficient lists");
  return p;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, std::string_view origin) {
  const std::string origin_s(origin);
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports "line L, column C" in the message
    fail(Errc::kInvalidConfig, origin_s + ": " + e.what());
  }
  std::string base;
  if (doc.is_object() && doc.contains("config") && doc.contains("version")) {
    doc = doc.at("config");
    base = "/config";
  }
  const Reader rd(text, origin);
  if (!doc.is_object()) rd.error(base, "config must be a JSON object");
  rd.reject_unknown(doc, base,
                    {"field", "gaussian", "controlled", "T", "W", "n", "calls_per_step", "seeds",
                     "base_seed", "shape", "mode", "epsilon", "delta", "spacing", "shift",
                     "output", "workers", "simd"});

  ExperimentConfig cfg;
  try {
    if (doc.contains("field")) {
      apply_field_label(cfg.field, rd.get<std::string>(doc, base, "field", "a string"));
    }
  } catch (const Error& e) {
    rd.error(base + "/field", e.what());
  }
  if (doc.contains("gaussian")) {
    const auto& g = doc.at("gaussian");
    const std::string gb = base + "/gaussian";
    if (!g.is_object()) rd.error(gb, "'gaussian' must be an object");
    rd.reject_unknown(g, gb, {"mu1", "s1"});
    if (g.contains("mu1")) {
      cfg.field.mu1 = g.at("mu1").is_number()
                          ? std::vector<double>{rd.get<double>(g, gb, "mu1", "a number")}
                          : rd.get<std::vector<double>>(g, gb, "mu1", "a number or a list");
    }
    if (g.contains("s1")) cfg.field.s1 = rd.get<double>(g, gb, "s1", "a number");
  }
  if (doc.contains("controlled")) {
    const auto& c = doc.at("controlled");
    const std::string cb = base + "/controlled";
    if (!c.is_object()) rd.error(cb, "'controlled' must be an object");
    rd.reject_unknown(c, cb, {"a", "b", "w"});
    if (c.contains("a")) cfg.field.a = polynomial(rd, c.at("a"), cb + "/a");
    if (c.contains("b")) cfg.field.b = polynomial(rd, c.at("b"), cb + "/b");
    if (c.contains("w")) cfg.field.w = rd.get<std::vector<double>>(c, cb, "w", "a list of numbers");
  }
  if (doc.contains("T")) cfg.steps = rd.get<std::size_t>(doc, base, "T", "a non-negative integer");
  if (doc.contains("W")) cfg.warmup = rd.get<std::size_t>(doc, base, "W", "a non-negative integer");
  if (doc.contains("n")) {
    const auto& v = doc.at("n");
    cfg.intervals = v.is_number_unsigned()
                        ? std::vector<std::size_t>{v.get<std::size_t>()}
                        : rd.get<std::vector<std::size_t>>(doc, base, "n",
                                                           "a non-negative integer or a list");
  }
  if (doc.contains("calls_per_step")) {
    cfg.calls_per_step = rd.get<std::size_t>(doc, base, "calls_per_step", "a positive integer");
  }
  if (doc.contains("seeds")) cfg.seeds = rd.get<std::size_t>(doc, base, "seeds", "an integer");
  if (doc.contains("base_seed")) {
    cfg.base_seed = rd.get<std::uint64_t>(doc, base, "base_seed", "a non-negative integer");
  }
  if (doc.contains("shape")) {
    cfg.shape = rd.get<std::vector<std::size_t>>(doc, base, "shape", "[d] or [h, w]");
  }
  if (doc.contains("mode")) {
    const auto m = rd.get<std::string>(doc, base, "mode", "a string");
    if (m == "fixed") {
      cfg.mode = VdeMode::kFixedWarmup;
    } else if (m == "dynamic") {
      cfg.mode = VdeMode::kDynamic;
    } else {
      rd.error(base + "/mode", "mode must be 'fixed' or 'dynamic'");
    }
  }
  if (doc.contains("epsilon")) cfg.stable.epsilon = rd.get<double>(doc, base, "epsilon", "a number");
  if (doc.contains("delta")) cfg.stable.delta = rd.get<double>(doc, base, "delta", "a number");
  if (doc.contains("spacing")) {
    const auto s = rd.get<std::string>(doc, base, "spacing", "a string");
    if (s == "uniform") {
      cfg.spacing = Spacing::kUniform;
    } else if (s == "shifted") {
      cfg.spacing = Spacing::kShifted;
    } else {
      rd.error(base + "/spacing", "spacing must be 'uniform' or 'shifted'");
    }
  }
  if (doc.contains("shift")) cfg.shift = rd.get<double>(doc, base, "shift", "a number");
  if (doc.contains("output")) cfg.output_dir = rd.get<std::string>(doc, base, "output", "a string");
  if (doc.contains("workers")) cfg.workers = rd.get<std::size_t>(doc, base, "workers", "an integer");
  if (doc.contains("simd")) cfg.simd = rd.get<std::string>(doc, base, "simd", "a string");

  validate_config(cfg, text, origin);
  return cfg;
}

void validate_config(const ExperimentConfig& c, std::string_view text, std::string_view origin) {
  std::string base;
  if (!text.empty()) {
    try {
      const auto doc = ordered_json::parse(text);
      if (doc.is_object() && doc.contains("config") && doc.contains("version")) base = "/config";
    } catch (const nlohmann::json::exception&) {
    }
  }
  const Reader rd(text, origin);
  auto check = [&](bool ok, const char* key, const std::string& message) {
    if (!ok) rd.error(base + key, message);
  };
  check(c.steps >= 3, "/T", "T must be at least 3");
  check(c.warmup >= 2, "/W", "W must be at least 2 so the warm-up seeds two anchors");
  check(c.warmup + 1 <= c.steps, "/W", "W must be at most T - 1");
  check(!c.intervals.empty(), "/n", "n needs at least one interval");
  for (std::size_t n : c.intervals) check(n >= 1, "/n", "every interval n must be >= 1");
  check(c.calls_per_step >= 1, "/calls_per_step", "calls_per_step must be >= 1");
  check(c.seeds >= 1, "/seeds", "seeds must be >= 1");
  check(c.shape.size() == 1 || c.shape.size() == 2, "/shape", "shape must be [d] or [h, w]");
  std::size_t dim = 1;
  for (std::size_t s : c.shape) dim *= s;
  check(dim >= 2, "/shape", "latents need at least 2 entries");
  check(c.stable.epsilon > 0.0 && c.stable.epsilon < 1.0, "/epsilon", "epsilon must lie in (0, 1)");
  check(c.stable.delta > 0.0 && c.stable.delta < 1.0, "/delta", "delta must lie in (0, 1)");
  check(c.shift > 0.0, "/shift", "shift must be positive");
  check(c.simd == "auto" || simd::parse_isa(c.simd).has_value(), "/simd",
        "simd must be auto, scalar, avx2 or neon");
  switch (c.field.kind) {
    case FieldKind::kGaussian:
      check(c.field.mu1.size() == 1 || c.field.mu1.size() == dim, "/gaussian/mu1",
            "mu1 must have 1 or " + std::to_string(dim) + " entries");
      check(c.field.s1 > 0.0, "/gaussian/s1", "s1 must be positive");
      break;
    case FieldKind::kControlled:
      check(c.field.a.pieces.size() == c.field.a.breaks.size() + 1, "/controlled/a",
            "a needs one more piece than breakpoints");
      check(c.field.b.pieces.size() == c.field.b.breaks.size() + 1, "/controlled/b",
            "b needs one more piece than breakpoints");
      check(c.field.w.empty() || c.field.w.size() == dim, "/controlled/w",
            "w must have " + std::to_string(dim) + " entries");
      break;
    case FieldKind::kMlp:
      check(!c.field.weights_path.empty(), "/field", "mlp field needs a weight file path");
      break;
  }
}

namespace {

ordered_json polynomial_json(const PolynomialSpec& p) {
  return ordered_json{{"breaks", p.breaks}, {"pieces", p.pieces}};
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["field"] = c.field.label();
  j["gaussian"] = {{"mu1", c.field.mu1}, {"s1", c.field.s1}};
  j["controlled"] = {{"a", polynomial_json(c.field.a)},
                     {"b", polynomial_json(c.field.b)},
                     {"w", c.field.w}};
  j["T"] = c.steps;
  j["W"] = c.warmup;
  j["n"] = c.intervals;
  j["calls_per_step"] = c.calls_per_step;
  j["seeds"] = c.seeds;
  j["base_seed"] = c.base_seed;
  j["shape"] = c.shape;
  j["mode"] = c.mode == VdeMode::kFixedWarmup ? "fixed" : "dynamic";
  j["epsilon"] = c.stable.epsilon;
  j["delta"] = c.stable.delta;
  j["spacing"] = std::string(spacing_name(c.spacing));
  j["shift"] = c.shift;
  j["output"] = c.output_dir;
  j["workers"] = c.workers;
  j["simd"] = c.simd;
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
  return config_json(config).dump(2) + "\n";
}

std::string run_manifest(const ExperimentConfig& config, std::string_view command) {
  ordered_json j;
  j["version"] = std::string(kVersion);
  j["command"] = std::string(command);
  j["config"] = config_json(config);
  return j.dump(2) + "\n";
}

}  // namespace vde::bench
