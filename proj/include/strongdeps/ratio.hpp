#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "strongdeps/errors.hpp"

namespace strongdeps {

// Exact non-negative rational; dominance percentages are compared to the
// fuzz threshold without any floating-point rounding.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Ratio of(std::int64_t num, std::int64_t den) {
        std::int64_t g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        return Ratio{num, den};
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool zero() const { return num == 0; }

    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.num == b.num && a.den == b.den;  // both normalised
    }
    friend bool operator<(const Ratio& a, const Ratio& b) {
        return static_cast<__int128>(a.num) * b.den <
               static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Ratio& a, const Ratio& b) {
        return static_cast<__int128>(a.num) * b.den <=
               static_cast<__int128>(b.num) * a.den;
    }
};

// Parses a non-negative decimal percentage ("5", "2.5", "0.05") into an
// exact rational.
inline Ratio parse_percentage(std::string_view text) {
    if (text.empty()) throw ParseError("empty percentage");
    std::int64_t num = 0, den = 1;
    bool seen_digit = false, seen_dot = false;
    for (char c : text) {
        if (c == '.') {
            if (seen_dot) throw ParseError("malformed percentage '" + std::string(text) + "'");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (seen_dot) den *= 10;
            seen_digit = true;
            if (num > (std::int64_t{1} << 50))
                throw ParseError("percentage out of range '" + std::string(text) + "'");
        } else {
            throw ParseError("malformed percentage '" + std::string(text) + "'");
        }
    }
    if (!seen_digit) throw ParseError("malformed percentage '" + std::string(text) + "'");
    return Ratio::of(num, den);
}

}  // namespace strongdeps
