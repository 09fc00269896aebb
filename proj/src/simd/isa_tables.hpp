// Copyright 2026 The VDE Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vde/simd/kernels.hpp"

namespace vde::simd::detail {

// Defined only in the ISA translation units that are part of the build.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

}  // namespace vde::simd::detail
