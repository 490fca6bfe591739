#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sparsedraw {

// Locale-independent, shortest round-trip formatting. All text output (CSV, SVG,
// JSON sidecars) goes through here so reruns are byte-identical.
inline std::string fmt_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& what) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("invalid number for " + what + ": '" + std::string(s) + "'");
    return v;
}

inline long long parse_int(std::string_view s, const std::string& what) {
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::runtime_error("invalid integer for " + what + ": '" + std::string(s) + "'");
    return v;
}

} // namespace sparsedraw
