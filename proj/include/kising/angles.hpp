#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "kising/bloch.hpp"
#include "kising/errors.hpp"

namespace kising {

/**
 * Parse an angle expression in radians with pi-literals:
 *   "0.75", "pi", "-pi/8", "3pi/16", "2*pi", "pi/2".
 * Grammar: [sign] [coefficient] [*] [pi] [/ divisor], where at least a
 * coefficient or "pi" must be present.
 */
[[nodiscard]] inline double parse_angle(const std::string& text) {
    const char* p = text.c_str();
    auto skip_ws = [&] { while (*p == ' ' || *p == '\t') ++p; };
    auto read_number = [&](double& out) {
        char* end = nullptr;
        const double v = std::strtod(p, &end);
        if (end == p) return false;
        p = end;
        out = v;
        return true;
    };

    skip_ws();
    double sign = 1.0;
    if (*p == '+' || *p == '-') {
        if (*p == '-') sign = -1.0;
        ++p;
    }
    skip_ws();

    double coefficient = 1.0;
    const bool has_coefficient = read_number(coefficient);
    skip_ws();
    if (*p == '*') {
        ++p;
        skip_ws();
    }

    bool has_pi = false;
    if (p[0] == 'p' && p[1] == 'i') {
        has_pi = true;
        p += 2;
        skip_ws();
    }
    if (!has_coefficient && !has_pi) {
        throw parse_error("cannot parse angle '" + text + "'");
    }

    double divisor = 1.0;
    if (*p == '/') {
        ++p;
        skip_ws();
        if (!read_number(divisor) || divisor == 0.0) {
            throw parse_error("bad divisor in angle '" + text + "'");
        }
        skip_ws();
    }
    if (*p != '\0') {
        throw parse_error("trailing characters in angle '" + text + "'");
    }
    return sign * coefficient * (has_pi ? pi : 1.0) / divisor;
}

/// "start:stop:count" -> inclusive linspace; a single angle expression is a
/// one-point grid.
[[nodiscard]] inline std::vector<double> parse_angle_grid(const std::string& text) {
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        return {parse_angle(text)};
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) {
        throw parse_error("grid '" + text + "' must be start:stop:count");
    }
    const double start = parse_angle(text.substr(0, c1));
    const double stop = parse_angle(text.substr(c1 + 1, c2 - c1 - 1));
    const long count = std::strtol(text.c_str() + c2 + 1, nullptr, 10);
    if (count < 1) {
        throw parse_error("grid count must be >= 1 in '" + text + "'");
    }
    if (start > stop) {
        throw parse_error("grid start exceeds stop in '" + text + "'");
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        grid.push_back(start);
        return grid;
    }
    for (long i = 0; i < count; ++i) {
        grid.push_back(start + (stop - start) * static_cast<double>(i) /
                                   static_cast<double>(count - 1));
    }
    grid.back() = stop;  // guard against 1-ulp overshoot at the endpoint
    return grid;
}

}  // namespace kising
