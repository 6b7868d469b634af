// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "symgen/geometry.hpp"

namespace symgen {

class XyzDecodeError : public std::runtime_error {
  public:
    XyzDecodeError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Cloud text form: one "x y z" line per point, shortest round-trip floats,
/// LF endings.
std::string cloud_to_text(const PointCloud& cloud);
PointCloud cloud_from_text(const std::string& text);

/// Standard xz container around the text form. `preset` is the usual 0-9
/// compression level.
std::vector<uint8_t> encode_xyz(const PointCloud& cloud, uint32_t preset = 1);
PointCloud decode_xyz(const std::vector<uint8_t>& bytes);

std::vector<uint8_t> xz_compress(const std::string& text, uint32_t preset);
std::string xz_decompress(const std::vector<uint8_t>& bytes);

void write_file(const std::filesystem::path& path, const std::string& text);
void write_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes);
std::string read_text_file(const std::filesystem::path& path);
std::vector<uint8_t> read_binary_file(const std::filesystem::path& path);

/// FNV-1a 64-bit digest, used for manifest checksums and determinism checks.
uint64_t fnv1a64(const void* data, size_t size);
uint64_t fnv1a64_file(const std::filesystem::path& path);
std::string hex64(uint64_t value);

}  // namespace symgen
