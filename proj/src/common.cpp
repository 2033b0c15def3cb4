// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mmia Authors

#include "mmia/common.hpp"

#include <stdexcept>
#include <string>

namespace mmia {

std::string_view to_string(Phase phase) { return phase == Phase::Sync ? "sync" : "ra"; }

Phase parse_phase(std::string_view text) {
  if (text == "sync" || text == "Sync") return Phase::Sync;
  if (text == "ra" || text == "RA") return Phase::RA;
  throw std::invalid_argument("unknown phase '" + std::string(text) + "' (expected sync|ra)");
}

}  // namespace mmia
