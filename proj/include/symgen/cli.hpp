// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace symgen {

/// Full command-line surface. `args` excludes the program name.
/// Exit codes: 0 success, 1 partial/validation failure, 2 usage or config
/// error.
int run_cli(const std::vector<std::string>& args);

}  // namespace symgen
