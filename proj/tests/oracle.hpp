#pragma once

// Brute-force reference evaluators used by the tests. They share only the
// exact predicate `orient` with the library and build their own, deliberately
// redundant, candidate sets.

#include <algorithm>
#include <cstdint>
#include <vector>

#include <regdepth/depth.hpp>

namespace oracle {

using namespace regdepth;

inline std::vector<Vec> signed_sums(const std::vector<Vec>& base, int terms) {
    std::vector<Vec> out = base;
    for (std::size_t a = 0; a < base.size(); ++a)
        for (std::size_t b = a + 1; b < base.size(); ++b) {
            out.push_back(base[a] + base[b]);
            out.push_back(base[a] - base[b]);
            if (terms < 3) continue;
            for (std::size_t c = b + 1; c < base.size(); ++c)
                for (int sb : {1, -1})
                    for (int sc : {1, -1}) out.push_back(base[a] + Scalar(sb) * base[b] + Scalar(sc) * base[c]);
        }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Vec& v) { return v.is_zero(); }), out.end());
    return out;
}

inline Vec some_normal_to(const AffineFlat& f) {
    const int d = f.dim();
    if (d == 2) return f.k() == 0 ? Vec(Scalar(1), Scalar(0)) : Vec(-f.span[0][1], f.span[0][0]);
    if (f.k() == 2) return cross(f.span[0], f.span[1]);
    if (f.k() == 1) {
        for (int i = 0; i < 3; ++i) {
            Vec e = Vec::zero(3);
            e[i] = 1;
            Vec n = cross(f.span[0], e);
            if (!n.is_zero()) return n;
        }
    }
    return Vec(Scalar(1), Scalar(0), Scalar(0));
}

/// Every hyperplane through f that any generic or data-incident position
/// could require, including degenerate (event) ones, in both orientations.
inline std::vector<Hyperplane> hyperplanes_through(const AffineFlat& f, const PointSet& xs) {
    const int d = f.dim();
    std::vector<Vec> events;
    if (f.k() == d - 1) {
        events.push_back(some_normal_to(f));
    } else if (d == 2) {
        for (const auto& q : xs)
            if (q != f.anchor) events.push_back(Vec(-(q - f.anchor)[1], (q - f.anchor)[0]));
    } else if (f.k() == 1) {
        for (const auto& q : xs) {
            Vec n = cross(f.span[0], q - f.anchor);
            if (!n.is_zero()) events.push_back(n);
        }
    } else {
        std::vector<Vec> ws;
        for (const auto& q : xs)
            if (q != f.anchor) ws.push_back(q - f.anchor);
        for (std::size_t i = 0; i < ws.size(); ++i)
            for (std::size_t j = i + 1; j < ws.size(); ++j) {
                Vec n = cross(ws[i], ws[j]);
                if (!n.is_zero()) events.push_back(n);
            }
        // planes containing a single axis, for configurations without vertices
        for (const auto& w : ws) events.push_back(some_normal_to(AffineFlat{f.anchor, {w}}));
    }
    events.push_back(some_normal_to(f));
    if (f.k() < d - 1) {
        // off-event directions, so pencils with a single event class still get a generic member
        for (const auto& v : {Vec(Scalar(3), Scalar(-7), Scalar(11)), Vec(Scalar(-5), Scalar(2), Scalar(13))}) {
            Vec n = v;
            if (d == 2) n = Vec(v[0], v[1]);
            if (f.k() == 1) n = cross(f.span[0], cross(n, f.span[0]));
            events.push_back(n);
        }
    }
    std::vector<Vec> normals = (d == 3 && f.k() == 0) ? signed_sums(events, 3) : signed_sums(events, 2);
    std::vector<Hyperplane> out;
    for (const auto& n : normals) {
        out.push_back(Hyperplane::through(f.anchor, n));
        out.push_back(Hyperplane::through(f.anchor, -n));
    }
    return out;
}

/// Thresholds realising every split of the values `v` (at, between, beyond).
inline std::vector<Scalar> thresholds(std::vector<Scalar> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<Scalar> out;
    if (v.empty()) return {Scalar(0)};
    out.push_back(v.front() - 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(v[i]);
        if (i + 1 < v.size()) out.push_back((v[i] + v[i + 1]) / 2);
    }
    out.push_back(v.back() + 1);
    return out;
}

/// Vertical hyperplanes relevant to regression depth of a k-flat, plus the
/// hyperplane at infinity.
inline std::vector<Hyperplane> vertical_family(int d, int k, const PointSet& xs) {
    std::vector<Hyperplane> out{Hyperplane::infinity(d)};
    if (k == 0) return out;
    std::vector<Vec> normals;
    if (k == 1) {
        Vec e = Vec::zero(d);
        e[0] = 1;
        normals.push_back(e);
    } else {
        std::vector<Vec> base;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j) {
                Vec n(-(xs[j][1] - xs[i][1]), xs[j][0] - xs[i][0], Scalar(0));
                if (!n.is_zero()) base.push_back(n);
            }
        base.push_back(Vec(Scalar(1), Scalar(0), Scalar(0)));
        normals = signed_sums(base, 2);
    }
    for (const auto& n : normals) {
        std::vector<Scalar> vals;
        for (const auto& p : xs) vals.push_back(dot(n, p));
        for (const auto& t : thresholds(vals)) out.push_back(Hyperplane::make(n, t));
    }
    return out;
}

inline std::size_t min_wedge(const std::vector<Hyperplane>& h1s, const std::vector<Hyperplane>& h2s, const PointSet& xs) {
    std::size_t best = xs.size();
    for (const auto& h1 : h1s) {
        std::vector<int> s1;
        for (const auto& p : xs) s1.push_back(orient(h1, p));
        for (const auto& h2 : h2s) {
            std::size_t plus = 0, minus = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                int v = s1[i] * orient(h2, xs[i]);
                if (v >= 0) ++plus;
                if (v <= 0) ++minus;
            }
            best = std::min({best, plus, minus});
        }
    }
    return best;
}

inline std::size_t regression_depth(const AffineFlat& f, int k, const PointSet& xs) {
    if (is_vertical(f)) return 0;
    return min_wedge(hyperplanes_through(f, xs), vertical_family(f.dim(), k, xs), xs);
}

inline std::size_t crossing_distance(const AffineFlat& f, const AffineFlat& g, const PointSet& xs) {
    return min_wedge(hyperplanes_through(f, xs), hyperplanes_through(g, xs), xs);
}

inline std::size_t halfspace_depth(const AffineFlat& f, const PointSet& xs) {
    return min_wedge(hyperplanes_through(f, xs), {Hyperplane::infinity(f.dim())}, xs);
}

inline AffineFlat dual_line(const Scalar& a, const Scalar& b) { return make_flat(Point(Scalar(0), -b), {Vec(Scalar(1), a)}); }

/// Best exhaustive depth over the lines y = a x - b at every vertex of the
/// dual arrangement, at near-horizontal lines through each point, and at
/// small offsets around both, which visits every residual sign pattern of a
/// small integer dataset.
inline std::size_t deepest_line(const PointSet& xs) {
    Scalar far = 1;
    for (const auto& p : xs) far = std::max(far, Scalar(abs_value(p[1]) + 1));
    std::size_t best = oracle::regression_depth(dual_line(0, far), 1, xs);
    const Scalar eps = rational(1, 1000000);
    const std::vector<std::pair<int, int>> offsets{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (const auto& p : xs)
        for (auto [u, v] : offsets) {
            const Scalar a = u * eps, b = a * p[0] - p[1] + v * eps;
            best = std::max(best, oracle::regression_depth(dual_line(a, b), 1, xs));
        }
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            if (xs[i][0] == xs[j][0]) continue;
            const Scalar a = (xs[j][1] - xs[i][1]) / (xs[j][0] - xs[i][0]);
            const Scalar b = a * xs[i][0] - xs[i][1];
            for (auto [u, v] : offsets)
                best = std::max(best, oracle::regression_depth(dual_line(a + u * eps, b + v * eps), 1, xs));
        }
    return best;
}

} // namespace oracle
