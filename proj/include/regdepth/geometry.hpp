#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace regdepth {

/// Coordinate tuple in dimension 2 or 3. Independent coordinates come first,
/// so for a k-flat fit the first k coordinates are the explanatory variables.
struct Vec {
    int dim = 0;
    std::array<Scalar, 3> c{};

    Vec() = default;
    Vec(Scalar x, Scalar y) : dim(2), c{std::move(x), std::move(y), Scalar(0)} {}
    Vec(Scalar x, Scalar y, Scalar z) : dim(3), c{std::move(x), std::move(y), std::move(z)} {}

    static Vec zero(int d) {
        Vec v;
        v.dim = d;
        return v;
    }

    const Scalar& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
    Scalar& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

    bool is_zero() const {
        for (int i = 0; i < dim; ++i)
            if ((*this)[i] != 0) return false;
        return true;
    }

    friend bool operator==(const Vec& a, const Vec& b) {
        if (a.dim != b.dim) return false;
        for (int i = 0; i < a.dim; ++i)
            if (a[i] != b[i]) return false;
        return true;
    }
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

    friend Vec operator+(const Vec& a, const Vec& b) {
        Vec r = Vec::zero(a.dim);
        for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
        return r;
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        Vec r = Vec::zero(a.dim);
        for (int i = 0; i < a.dim; ++i) r[i] = a[i] - b[i];
        return r;
    }
    friend Vec operator-(const Vec& a) {
        Vec r = Vec::zero(a.dim);
        for (int i = 0; i < a.dim; ++i) r[i] = -a[i];
        return r;
    }
    friend Vec operator*(const Scalar& s, const Vec& a) {
        Vec r = Vec::zero(a.dim);
        for (int i = 0; i < a.dim; ++i) r[i] = s * a[i];
        return r;
    }
};

using Point = Vec;
using PointSet = std::vector<Point>;

inline Scalar dot(const Vec& a, const Vec& b) {
    Scalar s = 0;
    for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
    return s;
}

inline Vec cross(const Vec& a, const Vec& b) {
    return Vec(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

/// z-component of the 2D cross product.
inline Scalar cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline bool parallel(const Vec& a, const Vec& b) {
    if (a.dim == 2) return cross2(a, b) == 0;
    return cross(a, b).is_zero();
}

inline void require_dim(const Vec& p, int d) {
    require(p.dim == d, ErrorKind::invalid,
            "dimension mismatch: expected " + std::to_string(d) + ", got " + std::to_string(p.dim));
}

/// Ambient dimension of a dataset; all points must agree.
inline int dataset_dim(const PointSet& xs) {
    if (xs.empty()) return 0;
    int d = xs.front().dim;
    for (const auto& p : xs) require_dim(p, d);
    return d;
}

/// Oriented hyperplane {p : normal·p = offset}; the positive side is
/// normal·p >= offset. The `at_infinity` sentinel stands for the hyperplane
/// at infinity: every affine point is on its positive side.
struct Hyperplane {
    Vec normal;
    Scalar offset = 0;
    bool at_infinity = false;

    static Hyperplane infinity(int d) {
        Hyperplane h;
        h.normal = Vec::zero(d);
        h.at_infinity = true;
        return h;
    }

    static Hyperplane make(Vec normal, Scalar offset) {
        require(!normal.is_zero(), ErrorKind::invalid, "hyperplane normal must be nonzero");
        Hyperplane h;
        h.normal = std::move(normal);
        h.offset = std::move(offset);
        return h;
    }

    /// Hyperplane through `p` with the given normal.
    static Hyperplane through(const Point& p, Vec normal) {
        Scalar off = dot(normal, p);
        return make(std::move(normal), std::move(off));
    }

    int dim() const { return normal.dim; }

    friend Hyperplane operator-(const Hyperplane& h) {
        if (h.at_infinity) return h;
        return make(-h.normal, -h.offset);
    }
};

/// Sign of normal·p − offset.
inline int orient(const Hyperplane& h, const Point& p) {
    require_dim(p, h.dim());
    if (h.at_infinity) return 1;
    return sign(dot(h.normal, p) - h.offset);
}

/// Two hyperplanes describe the same (unoriented) set.
inline bool same_hyperplane(const Hyperplane& a, const Hyperplane& b) {
    if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
    if (!parallel(a.normal, b.normal)) return false;
    // a.normal = t b.normal, need a.offset = t b.offset
    for (int i = 0; i < a.dim(); ++i) {
        if (b.normal[i] != 0) {
            Scalar t = a.normal[i] / b.normal[i];
            return a.offset == t * b.offset;
        }
    }
    return false;
}

/// Affine k-flat: anchor + span of k independent directions.
struct AffineFlat {
    Point anchor;
    std::vector<Vec> span;

    int k() const { return static_cast<int>(span.size()); }
    int dim() const { return anchor.dim; }
};

/// The (d-k-1)-flat at vertical infinity for a dataset of dimension `dim`.
struct VerticalInfinity {
    int dim = 0;
    int j = 0;
};

using Flat = std::variant<AffineFlat, VerticalInfinity>;

inline int flat_dim(const Flat& f) {
    if (const auto* a = std::get_if<AffineFlat>(&f)) return a->dim();
    return std::get<VerticalInfinity>(f).dim;
}

inline bool independent(const std::vector<Vec>& span) {
    if (span.empty()) return true;
    if (span.size() == 1) return !span[0].is_zero();
    if (span.size() == 2) return !parallel(span[0], span[1]) && !span[0].is_zero() && !span[1].is_zero();
    return false;
}

inline AffineFlat make_flat(Point anchor, std::vector<Vec> span) {
    int d = anchor.dim;
    require(d == 2 || d == 3, ErrorKind::unsupported, "only dimensions 2 and 3 are supported");
    for (const auto& v : span) require_dim(v, d);
    require(static_cast<int>(span.size()) <= d - 1, ErrorKind::unsupported, "flat dimension must be at most d-1");
    require(independent(span), ErrorKind::invalid, "flat span vectors are linearly dependent");
    return AffineFlat{std::move(anchor), std::move(span)};
}

inline AffineFlat point_flat(const Point& p) { return make_flat(p, {}); }
inline AffineFlat line_through(const Point& p, const Point& q) { return make_flat(p, {q - p}); }
inline AffineFlat plane_through(const Point& p, const Point& q, const Point& r) {
    return make_flat(p, {q - p, r - p});
}

inline bool flat_contains(const AffineFlat& f, const Point& p) {
    Vec w = p - f.anchor;
    switch (f.k()) {
    case 0: return w.is_zero();
    case 1: return parallel(w, f.span[0]);
    default:
        if (f.dim() == 3) return dot(w, cross(f.span[0], f.span[1])) == 0;
        return true;
    }
}

/// For k = d-1, the unique hyperplane containing the flat.
inline Hyperplane containing_hyperplane(const AffineFlat& f) {
    require(f.k() == f.dim() - 1, ErrorKind::invalid, "flat is not a hyperplane");
    if (f.dim() == 2) return Hyperplane::through(f.anchor, Vec(-f.span[0][1], f.span[0][0]));
    return Hyperplane::through(f.anchor, cross(f.span[0], f.span[1]));
}

/// The flat of points on h. Non-vertical hyperplanes are written over the
/// independent coordinates: anchor on the last axis, span (1, slope...).
inline AffineFlat hyperplane_flat(const Hyperplane& h) {
    require(!h.at_infinity, ErrorKind::invalid, "hyperplane at infinity has no affine points");
    const Vec& n = h.normal;
    const int d = n.dim;
    if (n[d - 1] != 0) {
        Point anchor = Vec::zero(d);
        anchor[d - 1] = h.offset / n[d - 1];
        std::vector<Vec> span;
        for (int i = 0; i < d - 1; ++i) {
            Vec e = Vec::zero(d);
            e[i] = 1;
            e[d - 1] = -n[i] / n[d - 1];
            span.push_back(e);
        }
        return make_flat(anchor, span);
    }
    const Point anchor = (h.offset / dot(n, n)) * n;
    if (d == 2) return make_flat(anchor, {Vec(-n[1], n[0])});
    Vec e = Vec::zero(3);
    e[2] = 1;
    return make_flat(anchor, {cross(n, e), e});
}

/// A k-flat is vertical when its projection onto the first k coordinates
/// is not onto.
inline bool is_vertical(const AffineFlat& f) {
    switch (f.k()) {
    case 0: return false;
    case 1: return f.span[0][0] == 0;
    default: return f.span[0][0] * f.span[1][1] - f.span[0][1] * f.span[1][0] == 0;
    }
}

/// Non-vertical line in 3D through `anchor` written as x -> anchor + t (1, a, b).
inline Vec unit_x_direction(const Vec& dir) {
    require(dir[0] != 0, ErrorKind::invalid, "direction is vertical");
    Scalar inv = 1 / dir[0];
    return inv * dir;
}

// ----- planar duality: (a, b) <-> y = a x - b -----

inline Hyperplane dualize_2d(const Point& p) {
    require_dim(p, 2);
    // y >= a x - b  <=>  -a x + y >= -b
    return Hyperplane::make(Vec(-p[0], Scalar(1)), -p[1]);
}

inline Point dualize_2d_line(const Hyperplane& h) {
    require(!h.at_infinity && h.dim() == 2, ErrorKind::invalid, "dual of a planar line expected");
    require(h.normal[1] != 0, ErrorKind::unsupported, "vertical line has no affine dual point (projective point at infinity)");
    Scalar a = -h.normal[0] / h.normal[1];
    Scalar b = -h.offset / h.normal[1];
    return Point(a, b);
}

} // namespace regdepth
