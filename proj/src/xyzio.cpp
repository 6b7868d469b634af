// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/xyzio.hpp"

#include <lzma.h>

#include <fstream>

#include "symgen/detail/text_scan.hpp"

namespace symgen {

std::string cloud_to_text(const PointCloud& cloud) {
    std::string out;
    out.reserve(cloud.size() * 24);
    for (const Vec3& p : cloud) {
        detail::format_double(out, p.x);
        out.push_back(' ');
        detail::format_double(out, p.y);
        out.push_back(' ');
        detail::format_double(out, p.z);
        out.push_back('\n');
    }
    return out;
}

PointCloud cloud_from_text(const std::string& text) {
    using Scanner = detail::LineScanner<XyzDecodeError>;
    PointCloud cloud;
    detail::for_each_line(text, [&cloud](int line_no, const char* begin, const char* end) {
        Scanner sc{begin, end, line_no};
        if (sc.at_eol()) throw XyzDecodeError(line_no, "empty line");
        Vec3 p{sc.number("x"), sc.number("y"), sc.number("z")};
        if (!sc.at_eol()) throw XyzDecodeError(line_no, "expected 3 columns");
        if (!p.finite()) throw XyzDecodeError(line_no, "non-finite coordinate");
        cloud.push_back(p);
    });
    if (cloud.empty()) throw XyzDecodeError(0, "no points");
    return cloud;
}

std::vector<uint8_t> xz_compress(const std::string& text, uint32_t preset) {
    std::vector<uint8_t> out(lzma_stream_buffer_bound(text.size()));
    size_t out_pos = 0;
    lzma_ret rc = lzma_easy_buffer_encode(preset, LZMA_CHECK_CRC64, nullptr,
                                          reinterpret_cast<const uint8_t*>(text.data()),
                                          text.size(), out.data(), &out_pos, out.size());
    if (rc != LZMA_OK) throw std::runtime_error("xz encoding failed (lzma_ret " +
                                                std::to_string(static_cast<int>(rc)) + ")");
    out.resize(out_pos);
    return out;
}

std::string xz_decompress(const std::vector<uint8_t>& bytes) {
    lzma_stream strm = LZMA_STREAM_INIT;
    if (lzma_stream_decoder(&strm, UINT64_MAX, 0) != LZMA_OK)
        throw std::runtime_error("xz decoder init failed");
    std::string out;
    uint8_t buf[1 << 16];
    strm.next_in = bytes.data();
    strm.avail_in = bytes.size();
    lzma_ret rc = LZMA_OK;
    do {
        strm.next_out = buf;
        strm.avail_out = sizeof buf;
        rc = lzma_code(&strm, LZMA_FINISH);
        if (rc != LZMA_OK && rc != LZMA_STREAM_END) {
            lzma_end(&strm);
            throw XyzDecodeError(0, "corrupt xz container (lzma_ret " +
                                        std::to_string(static_cast<int>(rc)) + ")");
        }
        out.append(reinterpret_cast<char*>(buf), sizeof buf - strm.avail_out);
    } while (rc != LZMA_STREAM_END && (strm.avail_in > 0 || strm.avail_out == 0));
    lzma_end(&strm);
    if (rc != LZMA_STREAM_END) throw XyzDecodeError(0, "truncated xz container");
    return out;
}

std::vector<uint8_t> encode_xyz(const PointCloud& cloud, uint32_t preset) {
    if (cloud.empty()) throw std::invalid_argument("encode_xyz: empty cloud");
    return xz_compress(cloud_to_text(cloud), preset);
}

PointCloud decode_xyz(const std::vector<uint8_t>& bytes) {
    return cloud_from_text(xz_decompress(bytes));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("failed to write " + path.string());
}

void write_file(const std::filesystem::path& path, const std::vector<uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("failed to write " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("failed to open " + path.string());
    std::string out((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return out;
}

std::vector<uint8_t> read_binary_file(const std::filesystem::path& path) {
    std::string text = read_text_file(path);
    return {text.begin(), text.end()};
}

uint64_t fnv1a64(const void* data, size_t size) {
    const uint8_t* p = static_cast<const uint8_t*>(data);
    uint64_t h = 0xCBF29CE484222325ULL;
    for (size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::string bytes = read_text_file(path);
    return fnv1a64(bytes.data(), bytes.size());
}

std::string hex64(uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

}  // namespace symgen
