// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <string>

#include "crisda/error.hpp"

namespace crisda {

/// Exact rational, used for split fractions so that e.g. 0.3 of 5 messages
/// rounds as 15/10 = 1.5 -> 2 rather than whatever the nearest double does.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Fraction() = default;
    Fraction(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (d <= 0) throw ArgumentError("fraction denominator must be positive");
        std::int64_t g = std::gcd(num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    /// Reconstructs the exact decimal the user wrote, via the shortest
    /// round-trip representation. Denominators are capped at 1e9 by
    /// round-half-up truncation of surplus digits.
    static Fraction from_double(double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        std::string s(buf, res.ptr);

        std::int64_t mantissa = 0;
        int exp10 = 0;
        bool neg = false;
        std::size_t i = 0;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-');
        for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i)
            mantissa = mantissa * 10 + (s[i] - '0');
        if (i < s.size() && s[i] == '.') {
            for (++i; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
                mantissa = mantissa * 10 + (s[i] - '0');
                --exp10;
            }
        }
        if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
            int e = 0;
            bool eneg = false;
            ++i;
            if (i < s.size() && (s[i] == '-' || s[i] == '+')) eneg = (s[i++] == '-');
            for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i)
                e = e * 10 + (s[i] - '0');
            exp10 += eneg ? -e : e;
        }
        if (neg) mantissa = -mantissa;

        std::int64_t n = mantissa, d = 1;
        for (; exp10 > 0; --exp10) n *= 10;
        for (; exp10 < 0; ++exp10) {
            if (d >= 1000000000LL) {
                n = n >= 0 ? (n + 5) / 10 : -((-n + 5) / 10);
            } else {
                d *= 10;
            }
        }
        return Fraction(n, d);
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    bool in_open_unit_interval() const { return num > 0 && num < den; }

    /// round-half-up(this * n) with exact integer arithmetic.
    std::int64_t round_half_up_times(std::int64_t n) const {
        __int128 scaled = static_cast<__int128>(num) * n * 2 + den;
        return static_cast<std::int64_t>(scaled / (2 * static_cast<__int128>(den)));
    }

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num == b.num && a.den == b.den;
    }
};

} // namespace crisda
