#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace regdepth {

namespace detail {

/// Representative of the direction class of `v` in the half-plane
/// {y > 0} ∪ {y = 0, x > 0}.
inline Vec canonical_half(const Vec& v) {
    if (v[1] < 0 || (v[1] == 0 && v[0] < 0)) return -v;
    return v;
}

inline Vec perp(const Vec& v) { return Vec(-v[1], v[0]); }

/// Embedding of a one-parameter pencil of hyperplanes: lines through a point
/// in the plane, or planes through a line in space. Members are addressed by
/// a planar normal `m`; the sign of a data point against member m is
/// sign(m · residual(q)).
class PencilFrame {
public:
    static PencilFrame around_point(const Point& p) {
        require_dim(p, 2);
        PencilFrame f;
        f.anchor_ = p;
        return f;
    }

    static PencilFrame around_line(const Point& anchor, const Vec& dir) {
        require_dim(anchor, 3);
        require(!dir.is_zero(), ErrorKind::invalid, "line direction must be nonzero");
        PencilFrame f;
        f.anchor_ = anchor;
        f.axis_ = dir;
        for (int i = 0; i < 3; ++i) {
            Vec e = Vec::zero(3);
            e[i] = 1;
            Vec b = cross(dir, e);
            if (!b.is_zero()) {
                f.b1_ = b;
                break;
            }
        }
        f.b2_ = cross(dir, f.b1_);
        return f;
    }

    int dim() const { return anchor_.dim; }
    const Point& anchor() const { return anchor_; }
    const Vec& axis() const { return axis_; }

    Vec residual(const Point& q) const {
        Vec w = q - anchor_;
        if (dim() == 2) return w;
        return Vec(dot(b1_, w), dot(b2_, w));
    }

    std::vector<Vec> residuals(const PointSet& xs) const {
        std::vector<Vec> r;
        r.reserve(xs.size());
        for (const auto& q : xs) r.push_back(residual(q));
        return r;
    }

    Vec normal(const Vec& m) const {
        if (dim() == 2) return m;
        return m[0] * b1_ + m[1] * b2_;
    }

    Hyperplane member(const Vec& m) const { return Hyperplane::through(anchor_, normal(m)); }

private:
    Point anchor_;
    Vec axis_, b1_, b2_;
};

/// Sweeps a one-parameter pencil given the planar residual of every data
/// point (zero residual = point lies on the pencil's axis).
///
/// Calls visit(is_event, m, signs) for every generic member (between two
/// consecutive event directions) and, when `with_events`, for every event
/// member. Between-members are sums of angularly consecutive event normals,
/// so every one avoids all off-axis points. Signs are updated by flipping
/// the class of points whose event is crossed.
template <class Visit>
void sweep_pencil(const std::vector<Vec>& res, bool with_events, Visit&& visit) {
    const std::size_t n = res.size();
    std::vector<Vec> dirs(n);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
        if (res[i].is_zero()) continue;
        dirs[i] = canonical_half(perp(res[i]));
        idx.push_back(i);
    }
    std::vector<std::int8_t> s(n, 0);
    if (idx.empty()) {
        visit(false, Vec(Scalar(1), Scalar(0)), std::span<const std::int8_t>(s));
        return;
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return cross2(dirs[a], dirs[b]) > 0; });
    std::vector<std::size_t> cls_begin{0};
    for (std::size_t t = 1; t < idx.size(); ++t)
        if (cross2(dirs[idx[t - 1]], dirs[idx[t]]) != 0) cls_begin.push_back(t);
    const std::size_t classes = cls_begin.size();
    cls_begin.push_back(idx.size());
    auto event = [&](std::size_t c) -> const Vec& { return dirs[idx[cls_begin[c]]]; };

    std::vector<std::int8_t> tmp;
    auto visit_event = [&](std::size_t c, const Vec& m) {
        if (!with_events) return;
        tmp = s;
        for (std::size_t t = cls_begin[c]; t < cls_begin[c + 1]; ++t) tmp[idx[t]] = 0;
        visit(true, m, std::span<const std::int8_t>(tmp));
    };

    if (classes == 1) {
        const Vec m = res[idx[0]];
        for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::int8_t>(sign(dot(m, res[i])));
        visit(false, m, std::span<const std::int8_t>(s));
        visit_event(0, event(0));
        return;
    }

    Vec m = event(0) + event(1);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::int8_t>(sign(dot(m, res[i])));
    visit(false, m, std::span<const std::int8_t>(s));
    for (std::size_t c = 1; c < classes; ++c) {
        visit_event(c, event(c));
        for (std::size_t t = cls_begin[c]; t < cls_begin[c + 1]; ++t) s[idx[t]] = static_cast<std::int8_t>(-s[idx[t]]);
        m = c + 1 < classes ? event(c) + event(c + 1) : event(c) - event(0);
        visit(false, m, std::span<const std::int8_t>(s));
    }
    visit_event(0, -event(0));
}

/// Enumerates one representative of every way a line can split `pts`
/// (planar) without touching any point, plus the empty split (all +1).
/// visit(pivot, m, sigma, signs): pivot < 0 is the all-positive split;
/// otherwise the split is realised by `separation_line(pts, pivot, m, sigma)`.
template <class Visit>
void for_each_line_separation(const std::vector<Vec>& pts, Visit&& visit) {
    const std::size_t n = pts.size();
    std::vector<std::int8_t> out(n, 1);
    visit(-1, Vec(Scalar(1), Scalar(0)), 1, std::span<const std::int8_t>(out));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto lex = [&](std::size_t a, std::size_t b) {
        if (pts[a][0] != pts[b][0]) return pts[a][0] < pts[b][0];
        if (pts[a][1] != pts[b][1]) return pts[a][1] < pts[b][1];
        return a < b;
    };
    std::sort(order.begin(), order.end(), lex);
    std::vector<Vec> res(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t pivot = order[t];
        if (t > 0 && pts[order[t - 1]] == pts[pivot]) continue;
        for (std::size_t q = 0; q < n; ++q) res[q] = pts[q] - pts[pivot];
        sweep_pencil(res, true, [&](bool, const Vec& m, std::span<const std::int8_t> s) {
            for (int sigma : {1, -1}) {
                for (std::size_t q = 0; q < n; ++q) out[q] = s[q] != 0 ? s[q] : static_cast<std::int8_t>(sigma);
                visit(static_cast<long>(pivot), m, sigma, std::span<const std::int8_t>(out));
            }
        });
    }
}

/// Line with normal m through pts[pivot], translated so that every point on
/// it moves to side `sigma` while no other point changes side.
inline Hyperplane separation_line(const std::vector<Vec>& pts, long pivot, const Vec& m, int sigma) {
    if (pivot < 0) return Hyperplane::infinity(2);
    const Vec& p = pts[static_cast<std::size_t>(pivot)];
    Scalar eps = 1;
    bool found = false;
    for (const auto& q : pts) {
        Scalar v = abs_value(dot(m, q - p));
        if (v == 0) continue;
        if (!found || v < eps) eps = v;
        found = true;
    }
    if (found) eps /= 2;
    return Hyperplane::make(m, dot(m, p) - Scalar(sigma) * eps);
}

/// Plane through `p` with normal `normal` (orthogonal to `axis`), tilted so
/// the part of the axis line in direction `axis` lies on side `sigma`, the
/// opposite ray on side -sigma, and every off-axis point keeps its side.
inline Hyperplane tilted_plane(const Point& p, const Vec& axis, const Vec& normal, int sigma, const PointSet& xs) {
    Scalar eps = 1;
    bool found = false;
    for (const auto& q : xs) {
        Vec w = q - p;
        Scalar a = abs_value(dot(normal, w));
        if (a == 0) continue;
        Scalar bound = a / (2 * (abs_value(dot(axis, w)) + 1));
        if (!found || bound < eps) eps = bound;
        found = true;
    }
    return Hyperplane::through(p, normal + Scalar(sigma) * eps * axis);
}

/// Canonical representative of the direction class of a nonzero vector
/// (first nonzero coordinate equal to 1).
inline Vec canonical_direction(const Vec& v) {
    for (int i = 0; i < v.dim; ++i)
        if (v[i] != 0) return Scalar(1 / v[i]) * v;
    return v;
}

inline bool lex_less(const Vec& a, const Vec& b) {
    for (int i = 0; i < a.dim; ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

inline Vec projection_xy(const Point& p) { return Vec(p[0], p[1]); }

inline Hyperplane lift_vertical(const Hyperplane& line) {
    if (line.at_infinity) return Hyperplane::infinity(3);
    return Hyperplane::make(Vec(line.normal[0], line.normal[1], Scalar(0)), line.offset);
}

} // namespace detail

/// Candidate hyperplanes containing `f` that realise every combinatorial
/// position of such a hyperplane relative to `xs`. Event members (through a
/// data point) and between-members are both listed, in both orientations.
/// For the flat at vertical infinity the vertical family is returned
/// together with the hyperplane-at-infinity sentinel.
inline std::vector<Hyperplane> pencil_candidates(const Flat& f, const PointSet& xs) {
    std::vector<Hyperplane> out;
    if (xs.empty()) return out;
    const int d = flat_dim(f);
    for (const auto& p : xs) require_dim(p, d);

    auto both = [&](const Hyperplane& h) {
        out.push_back(h);
        out.push_back(-h);
    };

    if (const auto* vi = std::get_if<VerticalInfinity>(&f)) {
        const int k = d - vi->j - 1;
        if (k == 0) {
            out.push_back(Hyperplane::infinity(d));
        } else if (k == 1) {
            std::vector<Scalar> xsorted;
            for (const auto& p : xs) xsorted.push_back(p[0]);
            std::sort(xsorted.begin(), xsorted.end());
            xsorted.erase(std::unique(xsorted.begin(), xsorted.end()), xsorted.end());
            Vec e = Vec::zero(d);
            e[0] = 1;
            for (std::size_t i = 0; i < xsorted.size(); ++i) {
                out.push_back(Hyperplane::make(e, xsorted[i]));
                if (i + 1 < xsorted.size()) out.push_back(Hyperplane::make(e, (xsorted[i] + xsorted[i + 1]) / 2));
            }
            out.push_back(Hyperplane::infinity(d));
        } else {
            std::vector<Vec> proj;
            for (const auto& p : xs) proj.push_back(detail::projection_xy(p));
            for (std::size_t i = 0; i < proj.size(); ++i)
                for (std::size_t j = i + 1; j < proj.size(); ++j)
                    if (proj[i] != proj[j])
                        out.push_back(detail::lift_vertical(Hyperplane::through(proj[i], detail::perp(proj[j] - proj[i]))));
            detail::for_each_line_separation(proj, [&](long pivot, const Vec& m, int sigma, std::span<const std::int8_t>) {
                out.push_back(detail::lift_vertical(detail::separation_line(proj, pivot, m, sigma)));
            });
        }
        return out;
    }

    const auto& af = std::get<AffineFlat>(f);
    const int k = af.k();
    if (k == d - 1) {
        out.push_back(containing_hyperplane(af));
        return out;
    }
    if (d == 2 || k == 1) {
        auto frame = d == 2 ? detail::PencilFrame::around_point(af.anchor)
                            : detail::PencilFrame::around_line(af.anchor, af.span[0]);
        detail::sweep_pencil(frame.residuals(xs), true,
                             [&](bool, const Vec& m, std::span<const std::int8_t>) { both(frame.member(m)); });
        return out;
    }
    // point in space: pencils around every axis through the point and a data point
    std::vector<Vec> axes;
    for (const auto& q : xs)
        if (q != af.anchor) axes.push_back(detail::canonical_direction(q - af.anchor));
    std::sort(axes.begin(), axes.end(), detail::lex_less);
    axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
    if (axes.empty()) {
        both(Hyperplane::through(af.anchor, Vec(Scalar(1), Scalar(0), Scalar(0))));
        return out;
    }
    for (const auto& u : axes) {
        auto frame = detail::PencilFrame::around_line(af.anchor, u);
        detail::sweep_pencil(frame.residuals(xs), true, [&](bool is_event, const Vec& m, std::span<const std::int8_t>) {
            both(frame.member(m));
            if (!is_event)
                for (int sigma : {1, -1}) both(detail::tilted_plane(af.anchor, u, frame.normal(m), sigma, xs));
        });
    }
    return out;
}

} // namespace regdepth
