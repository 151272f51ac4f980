#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace regdepth {

enum class GeneratorKind { uniform_box, circle_equispaced, sphere_projection, clusters, collinear, planted_flat, r31_lower_bound };

inline const char* to_string(GeneratorKind k) {
    switch (k) {
    case GeneratorKind::uniform_box: return "uniform-box";
    case GeneratorKind::circle_equispaced: return "circle-equispaced";
    case GeneratorKind::sphere_projection: return "sphere-projection";
    case GeneratorKind::clusters: return "clusters";
    case GeneratorKind::collinear: return "collinear";
    case GeneratorKind::planted_flat: return "planted-flat";
    case GeneratorKind::r31_lower_bound: return "r31-lower-bound";
    }
    return "";
}

inline GeneratorKind parse_generator_kind(const std::string& s) {
    for (auto k : {GeneratorKind::uniform_box, GeneratorKind::circle_equispaced, GeneratorKind::sphere_projection,
                   GeneratorKind::clusters, GeneratorKind::collinear, GeneratorKind::planted_flat,
                   GeneratorKind::r31_lower_bound})
        if (s == to_string(k)) return k;
    fail(ErrorKind::parse, "unknown generator kind '" + s + "'");
}

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::uniform_box;
    std::size_t n = 0;
    int d = 2;
    std::uint64_t seed = 1;
    /// Half-width of the integer coordinate box.
    long spread = 1000;
    /// clusters: number of clusters; planted-flat: number of coincident
    /// groups on the flat (0 spreads the points along it).
    std::size_t clusters = 3;
    /// Half-width of each cluster.
    long cluster_spread = 20;
    /// planted-flat: dimension of the planted flat and points placed off it.
    int planted_k = 1;
    std::size_t noise = 0;
    /// uniform-box: resample until no three points are collinear (planar)
    /// or no four coplanar (space).
    bool general_position = false;
    /// r31-lower-bound: slope spread within a group and crossing spacing.
    Scalar tau = rational(1, 100);
    Scalar gamma = rational(1, 1000);
};

/// Properties a generated dataset promises, each verified exactly.
struct GeneratedData {
    PointSet points;
    bool distinct_x = false;
    bool general_position = false;
    /// circle-equispaced: every point lies exactly on the unit circle while
    /// the angles are rational approximations.
    bool exact_on_circle = false;
};

namespace detail {

inline bool has_distinct_x(const PointSet& xs) {
    std::vector<Scalar> x;
    for (const auto& p : xs) x.push_back(p[0]);
    std::sort(x.begin(), x.end());
    return std::adjacent_find(x.begin(), x.end()) == x.end();
}

__extension__ typedef __int128 Wide;
using Lattice = std::array<Wide, 3>;

/// Integer coordinates below 2^30 in magnitude, padded with zeros; empty
/// when some point falls outside that lattice.
inline std::vector<Lattice> small_lattice(const PointSet& xs) {
    std::vector<Lattice> out;
    out.reserve(xs.size());
    for (const auto& p : xs) {
        Lattice q{};
        for (int c = 0; c < p.dim; ++c) {
            if (p[c].get_den() != 1 || abs(p[c].get_num()) >= (1L << 30)) return {};
            q[static_cast<std::size_t>(c)] = p[c].get_num().get_si();
        }
        out.push_back(q);
    }
    return out;
}

inline Lattice lattice_sub(const Lattice& a, const Lattice& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

inline Lattice lattice_cross(const Lattice& a, const Lattice& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Wide lattice_dot(const Lattice& a, const Lattice& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

/// Does the point at index m break general position with points [0, m)?
/// Planar points have a zero third coordinate, so only the third cross
/// component matters for them.
inline bool lattice_degenerate(const std::vector<Lattice>& q, std::size_t m, int dim) {
    const Lattice& p = q[m];
    for (std::size_t i = 0; i < m; ++i) {
        if (q[i] == p) return true;
        const Lattice u = lattice_sub(p, q[i]);
        for (std::size_t j = i + 1; j < m; ++j) {
            const Lattice nrm = lattice_cross(lattice_sub(q[j], q[i]), u);
            if (dim == 2) {
                if (nrm[2] == 0) return true;
                continue;
            }
            if (nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0) return true;
            for (std::size_t k = j + 1; k < m; ++k)
                if (lattice_dot(nrm, lattice_sub(q[k], q[i])) == 0) return true;
        }
    }
    return false;
}

inline bool exact_degenerate(const PointSet& xs, std::size_t m, const Point& p) {
    for (std::size_t i = 0; i < m; ++i) {
        if (xs[i] == p) return true;
        for (std::size_t j = i + 1; j < m; ++j) {
            if (p.dim == 2) {
                if (cross2(xs[j] - xs[i], p - xs[i]) == 0) return true;
                continue;
            }
            const Vec nrm = cross(xs[j] - xs[i], p - xs[i]);
            if (nrm.is_zero()) return true;
            for (std::size_t k = j + 1; k < m; ++k)
                if (dot(nrm, xs[k] - xs[i]) == 0) return true;
        }
    }
    return false;
}

/// No three points on a line (planar) or four on a plane (space).
inline bool in_general_position(const PointSet& xs) {
    if (xs.empty()) return true;
    const auto q = small_lattice(xs);
    for (std::size_t m = 1; m < xs.size(); ++m) {
        const bool bad = q.empty() ? exact_degenerate(xs, m, xs[m]) : lattice_degenerate(q, m, xs[0].dim);
        if (bad) return false;
    }
    return true;
}

/// Does p break general position together with earlier points?
inline bool degenerate_with(const PointSet& xs, const Point& p) {
    PointSet all = xs;
    all.push_back(p);
    const auto q = small_lattice(all);
    if (q.empty()) return exact_degenerate(xs, xs.size(), p);
    return lattice_degenerate(q, xs.size(), p.dim);
}

inline double unit_double(Rng& rng) { return static_cast<double>(rng.next() >> 11) * 0x1.0p-53; }

inline double gaussian(Rng& rng) {
    double u = unit_double(rng);
    while (u <= 0) u = unit_double(rng);
    return std::sqrt(-2 * std::log(u)) * std::cos(2 * std::numbers::pi * unit_double(rng));
}

inline Scalar round_rational(double v, long den) { return rational(std::lround(v * static_cast<double>(den)), den); }

inline Point box_point(Rng& rng, int d, long spread) {
    if (d == 2) return Vec(Scalar(rng.between(-spread, spread)), Scalar(rng.between(-spread, spread)));
    return Vec(Scalar(rng.between(-spread, spread)), Scalar(rng.between(-spread, spread)),
               Scalar(rng.between(-spread, spread)));
}

} // namespace detail

/// One plane z = a x + b y + c of the R(3,1) configuration, described by
/// its slope b (shared by every cross-section x = const) and its
/// intercepts at the cross-sections x = 1 and x = -1.
struct R31Plane {
    int group = 0; // 0 A1, 1 A2, 2 B1, 3 B2, 4 C
    Scalar slope, at_plus, at_minus;

    Scalar intercept(int section) const { return section > 0 ? at_plus : at_minus; }
    /// Data point whose dual plane z = p_x x + p_y y - p_z is this plane.
    Point dual_point() const { return Vec((at_plus - at_minus) / 2, slope, -(at_plus + at_minus) / 2); }
};

namespace detail {

inline constexpr const char* r31_names[5] = {"A1", "A2", "B1", "B2", "C"};

struct R31Base {
    Scalar slope[5] = {Scalar(-1), Scalar(-3), Scalar(2), Scalar(-2), Scalar(0)};
    // section x = 1: A1 and A2 cross inside the triangle of B1, B2, C
    Scalar plus[5] = {Scalar(1), Scalar(1), Scalar(4), Scalar(4), Scalar(0)};
    // section x = -1: B1 and B2 cross inside the triangle of A1, A2, C
    Scalar minus[5] = {Scalar(0), Scalar(4), rational(-6, 5), rational(4, 5), Scalar(0)};

    Scalar at(int g, int section) const { return section > 0 ? plus[g] : minus[g]; }
    /// y where base lines g and h meet in a section.
    Scalar meet(int g, int h, int section) const { return (at(h, section) - at(g, section)) / (slope[g] - slope[h]); }
};

/// Groups whose mutual crossing lies inside the triangle, the far side of
/// that triangle they avoid, and the two base lines bounding the segment
/// holding each group's internal crossings.
struct R31Section {
    int inner[2], triangle[3], avoided;
    int segment[5][2];
};

inline R31Section r31_section(int section) {
    if (section > 0)
        return {{0, 1}, {2, 3, 4}, 3, {{4, 1}, {0, 2}, {4, 3}, {4, 2}, {2, 3}}};
    return {{2, 3}, {0, 1, 4}, 1, {{4, 1}, {4, 0}, {4, 3}, {2, 0}, {0, 1}}};
}

} // namespace detail

/// Five groups of n/5 nearly parallel planes. In each cross-section, member
/// j of a group is its base line turned by tau * j/m about a pivot at 3/5
/// of the group's designated segment and lifted by gamma * L * (j/m)^2, L
/// the segment's y-extent, so members cross one another between 2/5 and
/// 3/5 of that segment.
inline std::vector<R31Plane> r31_planes(std::size_t n, const Scalar& tau, const Scalar& gamma) {
    require(n % 5 == 0 && n > 0, ErrorKind::invalid, "r31-lower-bound needs n divisible by 5");
    require(tau > 0 && gamma > 0, ErrorKind::invalid, "r31-lower-bound needs positive tau and gamma");
    const detail::R31Base base;
    const std::size_t m = n / 5;
    std::vector<R31Plane> planes;
    for (int g = 0; g < 5; ++g)
        for (std::size_t j = 0; j < m; ++j) {
            const Scalar t = rational(static_cast<long>(j), static_cast<long>(m));
            R31Plane p;
            p.group = g;
            p.slope = base.slope[g] + tau * t;
            for (int section : {1, -1}) {
                const auto sec = detail::r31_section(section);
                const Scalar lo = base.meet(g, sec.segment[g][0], section);
                const Scalar hi = base.meet(g, sec.segment[g][1], section);
                const Scalar len = abs(hi - lo);
                const Scalar py = lo + rational(3, 5) * (hi - lo);
                const Scalar pz = base.slope[g] * py + base.at(g, section);
                const Scalar value = pz - p.slope * py + gamma * len * t * t;
                (section > 0 ? p.at_plus : p.at_minus) = value;
            }
            planes.push_back(p);
        }
    return planes;
}

/// Checks the cross-section structure of an R(3,1) configuration at
/// x = 1 and x = -1; returns an empty string or the first violation.
inline std::string check_r31_cross_sections(const std::vector<R31Plane>& planes) {
    const detail::R31Base base;
    for (int section : {1, -1}) {
        const auto sec = detail::r31_section(section);
        const std::string where = section > 0 ? "x=1" : "x=-1";
        auto value = [&](const R31Plane& p, const Scalar& y) -> Scalar { return p.slope * y + p.intercept(section); };
        auto meet = [&](const R31Plane& a, const R31Plane& b) {
            const Scalar y = (b.intercept(section) - a.intercept(section)) / (a.slope - b.slope);
            return std::make_pair(y, value(a, y));
        };
        // side of each triangle group that holds the inner crossing
        const Scalar cy = base.meet(sec.inner[0], sec.inner[1], section);
        const Scalar cz = base.slope[sec.inner[0]] * cy + base.at(sec.inner[0], section);
        int side[5] = {0, 0, 0, 0, 0};
        for (int g : sec.triangle) side[g] = sign(cz - (base.slope[g] * cy + base.at(g, section)));
        // strictly inside the triangle, ignoring the lines of one group
        auto inside = [&](const std::pair<Scalar, Scalar>& q, int skip) {
            for (const auto& p : planes)
                if (p.group != skip && side[p.group] != 0 && sign(q.second - value(p, q.first)) != side[p.group])
                    return false;
            return true;
        };
        for (const auto& a : planes)
            for (const auto& b : planes) {
                if (&a == &b || a.slope == b.slope) continue;
                const auto q = meet(a, b);
                if (a.group == sec.inner[0] && b.group == sec.inner[1] && !inside(q, -1))
                    return where + ": a " + detail::r31_names[a.group] + "/" + detail::r31_names[b.group] +
                           " crossing leaves the triangle";
                if ((a.group == sec.inner[0] || a.group == sec.inner[1]) && b.group == sec.avoided && inside(q, sec.avoided))
                    return where + ": " + detail::r31_names[a.group] + " crosses side " +
                           detail::r31_names[b.group] + " of the triangle";
                if (a.group == b.group) {
                    const int g = a.group;
                    const Scalar lo = base.meet(g, sec.segment[g][0], section);
                    const Scalar hi = base.meet(g, sec.segment[g][1], section);
                    if (!(std::min(lo, hi) < q.first && q.first < std::max(lo, hi)))
                        return where + ": crossing within " + detail::r31_names[g] + " is off its segment";
                }
            }
    }
    return {};
}

inline GeneratedData generate(const GeneratorSpec& spec) {
    require(spec.d == 2 || spec.d == 3, ErrorKind::invalid, "generator dimension must be 2 or 3");
    require(spec.spread > 0, ErrorKind::invalid, "generator spread must be positive");
    Rng rng(spec.seed);
    GeneratedData out;
    auto& xs = out.points;
    const std::size_t n = spec.n;
    const int d = spec.d;

    switch (spec.kind) {
    case GeneratorKind::uniform_box: {
        out.distinct_x = 2 * spec.spread + 1 >= static_cast<long>(n);
        out.general_position = spec.general_position;
        std::vector<Scalar> seen;
        std::size_t tries = 0;
        while (xs.size() < n) {
            require(++tries <= 1000 * (n + 10), ErrorKind::invalid, "uniform-box: box too small for the requested flags");
            Point p = detail::box_point(rng, d, spec.spread);
            if (out.distinct_x && std::find(seen.begin(), seen.end(), p[0]) != seen.end()) continue;
            if (spec.general_position && detail::degenerate_with(xs, p)) continue;
            seen.push_back(p[0]);
            xs.push_back(std::move(p));
        }
        break;
    }
    case GeneratorKind::circle_equispaced: {
        require(d == 2, ErrorKind::invalid, "circle-equispaced is planar");
        // (1 - t^2, 2t) / (1 + t^2) with t a rational approximation of tan(theta/2)
        out.exact_on_circle = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (2 * j == n) {
                xs.push_back(Vec(Scalar(-1), Scalar(0)));
                continue;
            }
            const double theta = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            const Scalar t = detail::round_rational(std::tan(theta / 2), 1000000);
            const Scalar den = 1 + t * t;
            xs.push_back(Vec((1 - t * t) / den, 2 * t / den));
        }
        break;
    }
    case GeneratorKind::sphere_projection: {
        // gnomonic projection of a uniform point on the sphere in one more dimension
        out.distinct_x = true;
        std::vector<Scalar> seen;
        while (xs.size() < n) {
            double g[4];
            for (int i = 0; i <= d; ++i) g[i] = detail::gaussian(rng);
            const double h = std::fabs(g[d]);
            if (h < 1e-9) continue;
            Point p = d == 2 ? Vec(detail::round_rational(g[0] / h, 1000000), detail::round_rational(g[1] / h, 1000000))
                             : Vec(detail::round_rational(g[0] / h, 1000000), detail::round_rational(g[1] / h, 1000000),
                                   detail::round_rational(g[2] / h, 1000000));
            if (std::find(seen.begin(), seen.end(), p[0]) != seen.end()) continue;
            seen.push_back(p[0]);
            xs.push_back(std::move(p));
        }
        break;
    }
    case GeneratorKind::clusters: {
        require(spec.clusters > 0, ErrorKind::invalid, "clusters needs at least one cluster");
        PointSet centers;
        for (std::size_t c = 0; c < spec.clusters; ++c) centers.push_back(detail::box_point(rng, d, spec.spread));
        for (std::size_t i = 0; i < n; ++i)
            xs.push_back(centers[i % spec.clusters] + detail::box_point(rng, d, spec.cluster_spread));
        break;
    }
    case GeneratorKind::collinear: {
        Point anchor = detail::box_point(rng, d, spec.spread);
        Vec dir = detail::box_point(rng, d, 10);
        while (dir[0] == 0) dir = detail::box_point(rng, d, 10);
        std::vector<long> ts;
        while (ts.size() < n) {
            const long t = rng.between(-spec.spread, spec.spread);
            if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
        }
        for (long t : ts) xs.push_back(anchor + Scalar(t) * dir);
        out.distinct_x = true;
        break;
    }
    case GeneratorKind::planted_flat: {
        require(spec.planted_k >= 0 && spec.planted_k < d, ErrorKind::invalid, "planted flat must have 0 <= k < d");
        require(spec.noise <= n, ErrorKind::invalid, "planted-flat noise exceeds n");
        const Point anchor = detail::box_point(rng, d, spec.spread / 10 + 1);
        std::vector<Vec> span;
        while (static_cast<int>(span.size()) < spec.planted_k) {
            Vec v = detail::box_point(rng, d, 10);
            if (!v.is_zero()) span.push_back(std::move(v));
        }
        auto on_flat = [&]() {
            Point p = anchor;
            for (const auto& v : span) p = p + Scalar(rng.between(-spec.spread / 10, spec.spread / 10)) * v;
            return p;
        };
        const std::size_t inliers = n - spec.noise;
        if (spec.clusters > 0) {
            PointSet sites;
            for (std::size_t c = 0; c < spec.clusters; ++c) sites.push_back(on_flat());
            for (std::size_t i = 0; i < inliers; ++i) xs.push_back(sites[i * spec.clusters / std::max<std::size_t>(inliers, 1)]);
        } else {
            for (std::size_t i = 0; i < inliers; ++i) xs.push_back(on_flat());
        }
        for (std::size_t i = 0; i < spec.noise; ++i) xs.push_back(detail::box_point(rng, d, spec.spread));
        break;
    }
    case GeneratorKind::r31_lower_bound: {
        require(d == 3, ErrorKind::invalid, "r31-lower-bound needs d = 3");
        const auto planes = r31_planes(n, spec.tau, spec.gamma);
        const std::string problem = check_r31_cross_sections(planes);
        require(problem.empty(), ErrorKind::verification, "r31-lower-bound cross-sections: " + problem);
        for (const auto& p : planes) xs.push_back(p.dual_point());
        rng.shuffle(xs);
        out.distinct_x = true;
        break;
    }
    }

    if (out.distinct_x)
        require(detail::has_distinct_x(xs), ErrorKind::verification, std::string(to_string(spec.kind)) + ": x coordinates repeat");
    if (out.general_position)
        require(detail::in_general_position(xs), ErrorKind::verification,
                std::string(to_string(spec.kind)) + ": points not in general position");
    if (out.exact_on_circle)
        for (const auto& p : xs)
            require(p[0] * p[0] + p[1] * p[1] == 1, ErrorKind::verification, "circle point off the unit circle");
    return out;
}

} // namespace regdepth
