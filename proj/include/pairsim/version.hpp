// Copyright (c) 2026 The pairsim developers
// SPDX-License-Identifier: MIT

#pragma once

namespace pairsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pairsim
