#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace regdepth {

enum class BoundStatus { proven_exact, proven_upper, proven_lower, conjectured };

inline const char* to_string(BoundStatus s) {
    switch (s) {
    case BoundStatus::proven_exact: return "proven-exact";
    case BoundStatus::proven_upper: return "proven-upper";
    case BoundStatus::proven_lower: return "proven-lower";
    case BoundStatus::conjectured: return "conjectured";
    }
    return "";
}

/// Closed rational interval.
struct Interval {
    Scalar lo, hi;
};

namespace detail {

/// arctan(1/m) by its alternating series; consecutive partial sums bracket it.
inline Interval atan_inverse(long m, int terms) {
    Scalar x = rational(1, m), x2 = x * x, power = x, sum = 0, prev = 0;
    for (int i = 0; i < terms; ++i) {
        prev = sum;
        Scalar term = power / (2 * i + 1);
        sum += i % 2 == 0 ? term : Scalar(-term);
        power *= x2;
    }
    return sum < prev ? Interval{sum, prev} : Interval{prev, sum};
}

/// arcsin(1/m): positive series with term ratio at most x², so the tail
/// after the partial sum is at most next_term / (1 - x²).
inline Interval asin_inverse(long m, int terms) {
    Scalar x = rational(1, m), x2 = x * x, coeff = 1, power = x, sum = 0;
    for (int i = 0; i < terms; ++i) {
        sum += coeff * power / (2 * i + 1);
        coeff = coeff * (2 * i + 1) / (2 * i + 2);
        power *= x2;
    }
    Scalar next = coeff * power / (2 * terms + 1);
    return {sum, sum + next / (1 - x2)};
}

} // namespace detail

/// Rational enclosure of pi (Machin's formula).
inline Interval pi_enclosure(int terms = 30) {
    auto a = detail::atan_inverse(5, terms), b = detail::atan_inverse(239, terms);
    return {16 * a.lo - 4 * b.hi, 16 * a.hi - 4 * b.lo};
}

/// Rational enclosure of pi / (2 arcsin(1/3)) ≈ 4.622.
inline Interval sphere_partition_lower_bound(int terms = 30) {
    auto pi = pi_enclosure(terms);
    auto as = detail::asin_inverse(3, terms);
    return {pi.lo / (2 * as.hi), pi.hi / (2 * as.lo)};
}

/// One entry of the table of known constants. `d` and `k` are either a
/// number or a symbolic pattern ("d", "d-1"); `expression` gives the value,
/// with `value` its numeric form when the entry is a single number.
struct BoundEntry {
    std::string quantity;
    std::string d;
    std::string k;
    std::string relation; // "=", "<=", ">="
    std::string expression;
    BoundStatus status;
    std::optional<Scalar> value;
    std::optional<Interval> enclosure;

    std::string statement() const {
        std::string head = quantity + "(" + d + (k.empty() ? "" : "," + k) + ")";
        return head + " " + relation + " " + expression;
    }
};

inline std::vector<BoundEntry> bounds_table() {
    using S = BoundStatus;
    auto lower = sphere_partition_lower_bound();
    return {
        {"P", "1", "", "=", "2", S::proven_exact, Scalar(2), std::nullopt},
        {"P", "2", "", "<=", "6", S::proven_upper, Scalar(6), std::nullopt},
        {"P", "2", "", ">=", "pi/(2*arcsin(1/3))", S::proven_lower, std::nullopt, lower},
        {"R", "d", "0", "=", "d+1", S::proven_exact, std::nullopt, std::nullopt},
        {"R", "d", "d-1", "=", "d+1", S::proven_exact, std::nullopt, std::nullopt},
        {"R", "d", "k", "<=", "(d-k+1)*P(k)", S::proven_upper, std::nullopt, std::nullopt},
        {"R", "d", "1", "<=", "2d-1", S::proven_upper, std::nullopt, std::nullopt},
        {"R", "3", "1", "=", "5", S::proven_exact, Scalar(5), std::nullopt},
        {"R", "d", "k", "=", "(k+1)(d-k)+1", S::conjectured, std::nullopt, std::nullopt},
        {"T", "d", "0", "=", "d+1", S::proven_exact, std::nullopt, std::nullopt},
        {"T", "2", "1", "=", "3", S::proven_exact, Scalar(3), std::nullopt},
        {"T", "d", "d-1", "<=", "d(d+1)", S::proven_upper, std::nullopt, std::nullopt},
        {"T", "3", "2", "<=", "6", S::proven_upper, Scalar(6), std::nullopt},
    };
}

/// Entries of the table that apply to a concrete (d, k), with symbolic
/// expressions evaluated where possible.
inline std::vector<BoundEntry> bounds_for(int d, int k) {
    require(d >= 1 && k >= 0 && k < d, ErrorKind::invalid, "need 0 <= k < d");
    std::vector<BoundEntry> out;
    const std::string ds = std::to_string(d), ks = std::to_string(k);
    for (auto e : bounds_table()) {
        if (e.quantity == "P") {
            if (e.d == std::to_string(k)) out.push_back(e);
            continue;
        }
        bool d_ok = e.d == "d" || e.d == ds;
        bool k_ok = e.k == "k" || e.k == ks || (e.k == "d-1" && k == d - 1);
        if (!d_ok || !k_ok) continue;
        if (e.expression == "d+1") e.value = Scalar(d + 1);
        if (e.expression == "2d-1") e.value = Scalar(2 * d - 1);
        if (e.expression == "d(d+1)") e.value = Scalar(d * (d + 1));
        if (e.expression == "(k+1)(d-k)+1") e.value = Scalar((k + 1) * (d - k) + 1);
        if (e.expression == "(d-k+1)*P(k)") {
            if (k == 1) e.value = Scalar(2 * d);
            else if (k == 2) e.value = Scalar(6 * (d - 1));
        }
        e.d = ds;
        e.k = ks;
        out.push_back(e);
    }
    return out;
}

/// Smallest proven upper bound (or exact value) on R(d, k) in the table.
inline long r_upper(int d, int k) {
    std::optional<Scalar> best;
    for (const auto& e : bounds_for(d, k)) {
        if (e.quantity != "R" || !e.value) continue;
        if (e.status != BoundStatus::proven_exact && e.status != BoundStatus::proven_upper) continue;
        if (!best || *e.value < *best) best = e.value;
    }
    require(best.has_value(), ErrorKind::unsupported, "no proven bound on R(d,k) for this (d,k)");
    return best->get_num().get_si();
}

} // namespace regdepth
