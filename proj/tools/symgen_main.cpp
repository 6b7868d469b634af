// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/cli.hpp"

int main(int argc, char** argv) {
    return symgen::run_cli({argv + 1, argv + argc});
}
