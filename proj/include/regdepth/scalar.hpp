#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace regdepth {

/// Exact rational number. Every geometric predicate in the library is
/// evaluated on these, so comparisons never round.
using Scalar = mpq_class;

/// num/den in canonical form (mpq arithmetic requires it).
inline Scalar rational(long num, long den) {
    Scalar v(num, den);
    v.canonicalize();
    return v;
}

inline int sign(const Scalar& v) { return sgn(v); }

inline Scalar abs_value(const Scalar& v) { return v < 0 ? Scalar(-v) : v; }

/// Parses "p/q", integers, and decimals with optional exponent ("-1.25e-3")
/// without loss.
inline Scalar parse_scalar(std::string_view text) {
    auto bad = [&]() -> Scalar { fail(ErrorKind::parse, "not a rational number: '" + std::string(text) + "'"); };
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return bad();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_scalar(text.substr(0, slash));
        auto den = parse_scalar(text.substr(slash + 1));
        if (den == 0) return bad();
        return Scalar(num / den);
    }

    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long scale = 0;
    bool seen_digit = false, seen_point = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            seen_digit = true;
            if (seen_point) ++scale;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return bad();
    long exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') return bad();
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        if (i == text.size()) return bad();
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return bad();
            exponent = exponent * 10 + (text[i] - '0');
            if (exponent > 100000) return bad();
        }
        if (exp_negative) exponent = -exponent;
    }
    mpz_class mantissa(digits, 10);
    long power = exponent - scale;
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(power < 0 ? -power : power));
    Scalar value = power >= 0 ? Scalar(mantissa * ten_pow) : Scalar(mantissa, ten_pow);
    value.canonicalize();
    return negative ? Scalar(-value) : value;
}

/// Canonical exact rendering: "p" or "p/q".
inline std::string to_string(const Scalar& v) { return v.get_str(10); }

/// Decimal rendering rounded half away from zero to `digits` fractional
/// digits, trailing zeros trimmed.
inline std::string to_decimal(const Scalar& v, int digits = 12) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Scalar scaled = abs_value(v) * scale;
    mpz_class q = scaled.get_num() / scaled.get_den();
    mpz_class r = scaled.get_num() % scaled.get_den();
    if (2 * r >= scaled.get_den()) q += 1;
    std::string s = q.get_str(10);
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<int>(s.size())), '0');
    std::string out = s.substr(0, s.size() - static_cast<std::size_t>(digits));
    std::string frac = s.substr(s.size() - static_cast<std::size_t>(digits));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    if (v < 0 && out != "0") out.insert(0, "-");
    return out;
}

} // namespace regdepth
