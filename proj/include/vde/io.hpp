// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vde/flow_core.hpp"

namespace vde {

// Shortest decimal that round-trips ('.' separator); "nan", "inf", "-inf" otherwise.
std::string format_real(double value);

// {"shape":[h,w]} for grid latents, {"shape":[d]} for flat ones, plus "data".
std::string latent_to_json(const Latent& x);
// Throws kIo on malformed text, kShapeMismatch / kNonFiniteInput on bad content.
Latent latent_from_json(std::string_view text);

// Whole-file helpers; throw kIo.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace vde
