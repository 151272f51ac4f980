#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"

namespace regdepth {

/// Points read from CSV, with the optional `# k=` pragma.
struct Dataset {
    PointSet points;
    int dim = 0;
    std::optional<int> k;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i)
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    return out;
}

inline Vec parse_vec(std::string_view text) {
    std::vector<Scalar> c;
    for (auto part : split(text, ',')) c.push_back(parse_scalar(part));
    if (c.size() == 2) return Vec(c[0], c[1]);
    if (c.size() == 3) return Vec(c[0], c[1], c[2]);
    fail(ErrorKind::parse, "expected 2 or 3 comma-separated coordinates in '" + std::string(text) + "'");
}

} // namespace detail

/// Exact text for a scalar: a terminating decimal when one exists, "p/q"
/// otherwise. parse_scalar reads both back losslessly.
inline std::string exact_text(const Scalar& v) {
    mpz_class den = v.get_den();
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return to_string(v);
    const int digits = std::max(twos, fives);
    return to_decimal(v, digits);
}

inline std::string vec_text(const Vec& v) {
    std::string s;
    for (int i = 0; i < v.dim; ++i) s += (i ? "," : "") + exact_text(v[i]);
    return s;
}

inline Dataset parse_csv(std::string_view text) {
    Dataset ds;
    std::size_t line_no = 0;
    bool header = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            auto body = detail::trim(line.substr(1));
            if (body.starts_with("k=")) {
                const Scalar k = parse_scalar(body.substr(2));
                require(k.get_den() == 1 && k >= 0 && k <= 2, ErrorKind::parse,
                        "line " + std::to_string(line_no) + ": bad k pragma");
                ds.k = static_cast<int>(k.get_num().get_si());
            }
            continue;
        }
        const auto cells = detail::split(line, ',');
        if (!header) {
            const bool xy = cells.size() == 2 && cells[0] == "x" && cells[1] == "y";
            const bool xyz = cells.size() == 3 && cells[0] == "x" && cells[1] == "y" && cells[2] == "z";
            require(xy || xyz, ErrorKind::parse, "line " + std::to_string(line_no) + ": expected header 'x,y' or 'x,y,z'");
            ds.dim = static_cast<int>(cells.size());
            header = true;
            continue;
        }
        require(static_cast<int>(cells.size()) == ds.dim, ErrorKind::parse,
                "line " + std::to_string(line_no) + ": expected " + std::to_string(ds.dim) + " values");
        try {
            ds.points.push_back(detail::parse_vec(line));
        } catch (const Error& e) {
            fail(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    require(header, ErrorKind::parse, "missing CSV header");
    return ds;
}

inline std::string write_csv(const PointSet& xs, int dim, std::optional<int> k = std::nullopt) {
    require(dim == 2 || dim == 3, ErrorKind::unsupported, "only dimensions 2 and 3 are supported");
    std::string out;
    if (k) out += "# k=" + std::to_string(*k) + "\n";
    out += dim == 2 ? "x,y\n" : "x,y,z\n";
    for (const auto& p : xs) out += vec_text(p) + "\n";
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    require(f.good(), ErrorKind::invalid, "cannot open '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

inline Dataset load_csv(const std::string& path) { return parse_csv(read_file(path)); }

/// "anchor;span[;span]" with comma-separated components.
inline AffineFlat parse_flat(std::string_view text) {
    const auto parts = detail::split(text, ';');
    require(!parts.empty() && !parts[0].empty(), ErrorKind::parse, "empty flat");
    Point anchor = detail::parse_vec(parts[0]);
    std::vector<Vec> span;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (parts[i].empty()) continue;
        span.push_back(detail::parse_vec(parts[i]));
        require(span.back().dim == anchor.dim, ErrorKind::parse, "flat components differ in dimension");
    }
    return make_flat(std::move(anchor), std::move(span));
}

inline std::string flat_text(const AffineFlat& f) {
    std::string s = vec_text(f.anchor);
    for (const auto& v : f.span) s += ";" + vec_text(v);
    return s;
}

/// "normal;offset".
inline Hyperplane parse_hyperplane(std::string_view text) {
    const auto parts = detail::split(text, ';');
    require(parts.size() == 2, ErrorKind::parse, "hyperplane must be 'normal;offset'");
    return Hyperplane::make(detail::parse_vec(parts[0]), parse_scalar(parts[1]));
}

inline std::string hyperplane_text(const Hyperplane& h) {
    if (h.at_infinity) return "infinity";
    return vec_text(h.normal) + ";" + exact_text(h.offset);
}

/// Index lists "0,1,2;3,4;5".
inline std::vector<std::vector<std::size_t>> parse_parts(std::string_view text) {
    std::vector<std::vector<std::size_t>> out;
    for (auto group : detail::split(text, ';')) {
        std::vector<std::size_t> part;
        for (auto cell : detail::split(group, ',')) {
            if (cell.empty()) continue;
            const Scalar v = parse_scalar(cell);
            require(v.get_den() == 1 && v >= 0, ErrorKind::parse, "part index must be a nonnegative integer");
            part.push_back(v.get_num().get_ui());
        }
        out.push_back(std::move(part));
    }
    return out;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = hex[h & 15];
    return s;
}

} // namespace regdepth
