// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

namespace symgen::detail {

/// Shortest float text that round-trips.
inline void format_double(std::string& out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, res.ptr);
}

/// Space-separated token scanner over one line.
template <typename Error>
struct LineScanner {
    const char* p;
    const char* end;
    int line_no;

    void skip_spaces() {
        while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    }

    bool at_eol() {
        skip_spaces();
        return p == end;
    }

    std::string_view token() {
        skip_spaces();
        const char* start = p;
        while (p != end && *p != ' ' && *p != '\t' && *p != '\r') ++p;
        return {start, static_cast<size_t>(p - start)};
    }

    double number(const char* what) {
        std::string_view tok = token();
        if (tok.empty()) throw Error(line_no, std::string("missing ") + what);
        if (tok == "inf") return std::numeric_limits<double>::infinity();
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
            throw Error(line_no,
                        std::string("bad ") + what + " '" + std::string(tok) + "'");
        return v;
    }

    void expect_eol(const char* context) {
        if (!at_eol())
            throw Error(line_no, std::string("trailing content after ") + context);
    }
};

/// Calls fn(line_no, begin, end) for every line; tolerates a missing final
/// newline and stops cleanly on a trailing one.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        size_t stop = eol == std::string_view::npos ? text.size() : eol;
        ++line_no;
        fn(line_no, text.data() + pos, text.data() + stop);
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
}

}  // namespace symgen::detail
