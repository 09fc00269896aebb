// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#include "vde/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vde/sampler.hpp"

namespace vde {

using nlohmann::json;

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::ordered_json latent_json(const Latent& x) {
  nlohmann::ordered_json j;
  j["shape"] = x.shape().is_grid() ? std::vector<std::size_t>{x.shape().rows(), x.shape().cols()}
                                   : std::vector<std::size_t>{x.dim()};
  j["data"] = std::vector<double>(x.values().begin(), x.values().end());
  return j;
}

}  // namespace

std::string latent_to_json(const Latent& x) { return latent_json(x).dump(); }

Latent latent_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::kIo, std::string("latent is not valid JSON: ") + e.what());
  }
  try {
    auto dims = doc.at("shape").get<std::vector<std::size_t>>();
    auto data = doc.at("data").get<std::vector<double>>();
    if (dims.size() == 2) return Latent(Shape::grid(dims[0], dims[1]), std::move(data));
    if (dims.size() == 1) return Latent(Shape::flat(dims[0]), std::move(data));
    fail(Errc::kShapeMismatch, "latent shape must have one or two entries");
  } catch (const json::exception& e) {
    fail(Errc::kIo, std::string("malformed latent: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::kIo, "cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) fail(Errc::kIo, "failed writing " + path.string());
}

std::string TrajectoryTrace::to_csv() const {
  std::string out = "step,t,mode,alpha,beta,u_cos,x_norm,v_norm,nfe\n";
  for (const TraceRow& r : rows) {
    out += std::to_string(r.step);
    out += ',' + format_real(r.t);
    out += ',';
    out += static_cast<char>(r.mode);
    out += ',' + format_real(r.alpha);
    out += ',' + format_real(r.beta);
    out += ',' + (std::isnan(r.u_cos) ? std::string() : format_real(r.u_cos));
    out += ',' + format_real(r.x_norm);
    out += ',' + format_real(r.v_norm);
    out += ',' + std::to_string(r.nfe);
    out += '\n';
  }
  return out;
}

std::string SampleResult::to_json() const {
  nlohmann::ordered_json j;
  j["nfe"] = nfe;
  j["final"] = latent_json(final_state);
  return j.dump() + "\n";
}

}  // namespace vde
