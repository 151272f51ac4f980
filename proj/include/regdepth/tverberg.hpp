#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <numeric>
#include <optional>
#include <vector>

#include "centerpoint.hpp"
#include "constructions.hpp"
#include "depth.hpp"

namespace regdepth {

struct TverbergResult {
    AffineFlat flat; // a point (k = 0) or a line (k = 1)
    int k = 0;
    PartitionFamily parts;
    std::vector<std::size_t> per_part_depth;
};

/// Regression depth of f within each part.
inline std::vector<std::size_t> verify_flat_tverberg(const AffineFlat& f, int k, const PartitionFamily& parts,
                                                     const PointSet& xs) {
    check_partition(parts, xs.size());
    std::vector<std::size_t> out;
    for (const auto& part : parts.parts) out.push_back(regression_depth(f, k, gather(xs, part)).depth);
    return out;
}

namespace detail {

/// t lies in the closed convex hull of pts.
inline bool closed_hull_contains(const Point& t, const PointSet& pts) {
    std::vector<Vec> v;
    for (const auto& p : pts) {
        if (p == t) return true;
        v.push_back(p - t);
    }
    if (v.empty()) return false;
    // outside iff some vector is the clockwise edge of a cone narrower than pi
    for (const auto& a : v) {
        bool edge = true;
        for (const auto& b : v) {
            const Scalar c = cross2(a, b);
            if (c < 0 || (c == 0 && dot(a, b) < 0)) {
                edge = false;
                break;
            }
        }
        if (edge) return false;
    }
    return true;
}

inline bool angle_less(const Vec& a, const Vec& b) {
    auto half = [](const Vec& v) { return v[1] > 0 || (v[1] == 0 && v[0] > 0) ? 0 : 1; };
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross2(a, b) > 0;
}

/// Groups 3k points into triangles {j, j+k, j+2k} of their angular order
/// around t; when t has depth at least k among them every triangle
/// contains t.
inline std::optional<std::vector<std::vector<std::size_t>>> angular_triples(const Point& t, const PointSet& xs,
                                                                            std::vector<std::size_t> idx, std::size_t k) {
    if (idx.size() != 3 * k) return std::nullopt;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return angle_less(xs[a] - t, xs[b] - t); });
    std::vector<std::vector<std::size_t>> parts;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::size_t> part{idx[j], idx[j + k], idx[j + 2 * k]};
        if (!closed_hull_contains(t, gather(xs, part))) return std::nullopt;
        parts.push_back(std::move(part));
    }
    return parts;
}

/// Convex region of points with Tukey depth at least r: the intersection
/// of the closed halfplanes, bounded by lines through two data points, that
/// hold at least n - r + 1 points. Returned as a (possibly degenerate)
/// vertex cycle.
inline std::vector<Point> depth_region(const PointSet& xs, std::size_t r) {
    const std::size_t n = xs.size();
    Scalar lx = xs[0][0], hx = lx, ly = xs[0][1], hy = ly;
    for (const auto& p : xs) {
        lx = std::min(lx, p[0]);
        hx = std::max(hx, p[0]);
        ly = std::min(ly, p[1]);
        hy = std::max(hy, p[1]);
    }
    std::vector<Point> poly{Vec(lx, ly), Vec(hx, ly), Vec(hx, hy), Vec(lx, hy)};
    auto clip = [&](const Vec& nrm, const Scalar& off) {
        std::vector<Point> out;
        const std::size_t m = poly.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Point &p = poly[i], &q = poly[(i + 1) % m];
            const Scalar fp = dot(nrm, p) - off, fq = dot(nrm, q) - off;
            if (fp >= 0) out.push_back(p);
            if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) out.push_back(p + (fp / (fp - fq)) * (q - p));
        }
        std::vector<Point> dedup;
        for (const auto& p : out)
            if (dedup.empty() || dedup.back() != p) dedup.push_back(p);
        while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
        poly = std::move(dedup);
    };
    for (std::size_t i = 0; i < n && !poly.empty(); ++i)
        for (std::size_t j = i + 1; j < n && !poly.empty(); ++j) {
            if (xs[i] == xs[j]) continue;
            const Vec nrm = perp(xs[j] - xs[i]);
            const Scalar off = dot(nrm, xs[i]);
            std::size_t pos = 0, neg = 0;
            for (const auto& p : xs) {
                const int s = sign(dot(nrm, p) - off);
                pos += s >= 0;
                neg += s <= 0;
            }
            if (pos + r >= n + 1) clip(nrm, off);
            if (neg + r >= n + 1) clip(-nrm, -off);
        }
    return poly;
}

/// Some point of segment [a, b] inside the convex hull of `region`.
inline std::optional<Point> segment_meets(const Point& a, const Point& b, const std::vector<Point>& region) {
    if (region.empty()) return std::nullopt;
    bool flat = true;
    for (std::size_t i = 2; i < region.size() && flat; ++i) flat = cross2(region[1] - region[0], region[i] - region[0]) == 0;
    if (!flat && region.size() >= 3) {
        // orient the cycle counter-clockwise and clip the parameter range
        Scalar area = 0;
        for (std::size_t i = 0; i < region.size(); ++i) area += cross2(region[i], region[(i + 1) % region.size()]);
        Scalar lo = 0, hi = 1;
        const Vec d = b - a;
        for (std::size_t i = 0; i < region.size(); ++i) {
            const Point &p = region[i], &q = region[(i + 1) % region.size()];
            Vec e = q - p;
            if (area < 0) e = -e;
            // inside: cross(e, x - p) >= 0
            const Scalar f0 = cross2(e, a - p), f1 = cross2(e, d);
            if (f1 == 0) {
                if (f0 < 0) return std::nullopt;
                continue;
            }
            const Scalar lambda = -f0 / f1;
            if (f1 > 0) lo = std::max(lo, lambda);
            else hi = std::min(hi, lambda);
            if (lo > hi) return std::nullopt;
        }
        return a + ((lo + hi) / 2) * d;
    }
    // degenerate region: a point or a segment [p, q]
    Point p = region[0], q = region[0];
    const Vec dir = region.size() > 1 ? region[1] - region[0] : Vec(Scalar(1), Scalar(0));
    for (const auto& v : region) {
        if (dot(v - p, dir) < 0) p = v;
        if (dot(v - q, dir) > 0) q = v;
    }
    auto on_segment = [](const Point& x, const Point& s, const Point& e) {
        return cross2(e - s, x - s) == 0 && dot(x - s, x - e) <= 0;
    };
    if (on_segment(p, a, b)) return p;
    if (on_segment(q, a, b)) return q;
    if (on_segment(a, p, q)) return a;
    if (on_segment(b, p, q)) return b;
    const Scalar den = cross2(b - a, q - p);
    if (den == 0) return std::nullopt;
    const Scalar s = cross2(p - a, q - p) / den, u = cross2(p - a, b - a) / den;
    if (s < 0 || s > 1 || u < 0 || u > 1) return std::nullopt;
    return a + s * (b - a);
}

inline bool region_contains(const Point& t, const std::vector<Point>& region) {
    auto m = segment_meets(t, t, region);
    return m.has_value();
}

} // namespace detail

/// Partition of a planar set into ceil(n/3) parts whose closed hulls share
/// a point. With r = ceil(n/3) and deficiency 3r - n, a partition with parts
/// of at most three points has one of the shapes tried here: triangles
/// around a centerpoint, a data point as a singleton part with triangles
/// around it, or one or two segments through a point of depth r with
/// triangles around their crossing. Surplus points join the first part.
inline TverbergResult tverberg_partition_2d(const PointSet& xs, std::size_t budget = 2000000) {
    require(xs.size() >= 3, ErrorKind::invalid, "tverberg_partition_2d needs at least 3 points");
    require(dataset_dim(xs) == 2, ErrorKind::unsupported, "tverberg_partition_2d needs planar points");
    const std::size_t n = xs.size(), r = (n + 2) / 3, deficit = 3 * r - n;
    std::size_t attempts = 0;

    auto finish = [&](const Point& t, std::vector<std::vector<std::size_t>> parts, const std::vector<std::size_t>& extra) {
        for (auto i : extra) parts.front().push_back(i);
        while (parts.size() > r) {
            auto last = std::move(parts.back());
            parts.pop_back();
            parts.back().insert(parts.back().end(), last.begin(), last.end());
        }
        TverbergResult out;
        out.flat = point_flat(t);
        out.k = 0;
        out.parts = {PartitionKind::tverberg, std::move(parts)};
        out.per_part_depth = verify_flat_tverberg(out.flat, 0, out.parts, xs);
        for (auto d : out.per_part_depth)
            require(d >= 1, ErrorKind::verification, "tverberg: a part misses the common point");
        require(out.parts.parts.size() == r, ErrorKind::verification, "tverberg: wrong number of parts");
        return out;
    };
    auto without = [&](std::vector<std::size_t> drop) {
        std::sort(drop.begin(), drop.end());
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (!std::binary_search(drop.begin(), drop.end(), i)) rest.push_back(i);
        return rest;
    };
    using Parts = std::vector<std::vector<std::size_t>>;
    // k triangles around t from `pool`, leaving `surplus` of its points out
    auto triangles = [&](const Point& t, const std::vector<std::size_t>& pool, std::size_t k, std::size_t surplus,
                         std::vector<std::size_t>& extra) -> std::optional<Parts> {
        auto attempt = [&](const std::vector<std::size_t>& skip) -> std::optional<Parts> {
            if (++attempts > budget)
                fail(ErrorKind::budget, "tverberg_partition_2d: budget of " + std::to_string(budget) +
                                            " grouping attempts exhausted");
            std::vector<std::size_t> use;
            for (auto i : pool)
                if (std::find(skip.begin(), skip.end(), i) == skip.end()) use.push_back(i);
            auto parts = detail::angular_triples(t, xs, std::move(use), k);
            if (parts) extra = skip;
            return parts;
        };
        if (surplus == 0) return attempt({});
        if (surplus == 1) {
            for (auto q : pool)
                if (auto p = attempt({q})) return p;
            return std::nullopt;
        }
        for (std::size_t a = 0; a < pool.size(); ++a)
            for (std::size_t b = a + 1; b < pool.size(); ++b)
                if (auto p = attempt({pool[a], pool[b]})) return p;
        return std::nullopt;
    };
    std::vector<std::size_t> extra;

    // collinear data: nested segments around the median point
    {
        std::size_t far = 0;
        while (far < n && xs[far] == xs[0]) ++far;
        bool collinear = true;
        if (far < n) {
            const Vec u = xs[far] - xs[0];
            for (const auto& p : xs) collinear = collinear && cross2(u, p - xs[0]) == 0;
            if (collinear) {
                std::vector<std::size_t> order(n);
                std::iota(order.begin(), order.end(), 0);
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) { return dot(u, xs[a]) < dot(u, xs[b]); });
                Parts parts;
                for (std::size_t i = 0; 2 * i < n; ++i) {
                    if (i == n - 1 - i) parts.push_back({order[i]});
                    else parts.push_back({order[i], order[n - 1 - i]});
                }
                return finish(xs[order[(n - 1) / 2]], std::move(parts), {});
            }
        } else {
            Parts parts;
            for (std::size_t i = 0; i < n; ++i) parts.push_back({i});
            return finish(xs[0], std::move(parts), {});
        }
    }

    if (deficit == 0) {
        const Point c = centerpoint(xs);
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        if (auto parts = triangles(c, all, r, 0, extra)) return finish(c, std::move(*parts), extra);
    }

    // a data point as a singleton part
    std::vector<std::pair<std::size_t, std::size_t>> deep;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t d = tukey_depth(xs[i], xs).depth;
        if (d >= r) deep.emplace_back(d, i);
    }
    std::stable_sort(deep.begin(), deep.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [d, p] : deep) {
        if (auto parts = triangles(xs[p], without({p}), r - 1, 2 - deficit, extra)) {
            parts->insert(parts->begin(), {p});
            return finish(xs[p], std::move(*parts), extra);
        }
    }

    // one or two segments through a point of depth r
    const auto region = detail::depth_region(xs, r);
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (xs[a] != xs[b] && detail::segment_meets(xs[a], xs[b], region)) segments.emplace_back(a, b);
    if (deficit <= 1)
        for (const auto& [a, b] : segments) {
            const Point t = *detail::segment_meets(xs[a], xs[b], region);
            if (auto parts = triangles(t, without({a, b}), r - 1, 1 - deficit, extra)) {
                parts->insert(parts->begin(), {a, b});
                return finish(t, std::move(*parts), extra);
            }
        }
    if (r >= 2)
        for (std::size_t i = 0; i < segments.size(); ++i)
            for (std::size_t j = i + 1; j < segments.size(); ++j) {
                const auto [a, b] = segments[i];
                const auto [c, d] = segments[j];
                if (a == c || a == d || b == c || b == d) continue;
                const Vec u = xs[b] - xs[a], v = xs[d] - xs[c];
                const Scalar den = cross2(u, v);
                if (den == 0) continue;
                const Scalar s = cross2(xs[c] - xs[a], v) / den, w = cross2(xs[c] - xs[a], u) / den;
                if (s < 0 || s > 1 || w < 0 || w > 1) continue;
                const Point t = xs[a] + s * u;
                if (!detail::region_contains(t, region)) continue;
                if (auto parts = triangles(t, without({a, b, c, d}), r - 2, 2 - deficit, extra)) {
                    parts->insert(parts->begin(), {c, d});
                    parts->insert(parts->begin(), {a, b});
                    return finish(t, std::move(*parts), extra);
                }
            }
    fail(ErrorKind::verification, "tverberg_partition_2d: no partition into " + std::to_string(r) +
                                      " parts found among " + std::to_string(segments.size()) +
                                      " segments through the depth region");
}

namespace detail {

/// `target` disjoint parts of the positions of `signs`: zero entries alone
/// and alternating triples (signs s, -s, s in order) of nonzero ones, or
/// nothing if no such family exists. Open partial triples are
/// interchangeable, so a scan over counts of open partials (started with +,
/// started with -, missing only a closing +, missing only a closing -) is
/// exact; states that can no longer reach `target` parts are pruned.
inline std::vector<std::vector<std::size_t>> alternating_parts(const std::vector<int>& signs, std::size_t target) {
    const std::size_t n = signs.size();
    struct State {
        std::array<std::uint16_t, 4> open; // a+, a-, b+, b-
        std::uint32_t done;
        std::int32_t parent;
        std::int8_t action; // -1 skip, 0 start, 1 extend, 2 close
    };
    auto key = [](const std::array<std::uint16_t, 4>& o) {
        return std::uint64_t{o[0]} | std::uint64_t{o[1]} << 16 | std::uint64_t{o[2]} << 32 | std::uint64_t{o[3]} << 48;
    };
    std::vector<std::size_t> zeros_after(n + 1, 0), plus_after(n + 1, 0), minus_after(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        zeros_after[i] = zeros_after[i + 1] + (signs[i] == 0);
        plus_after[i] = plus_after[i + 1] + (signs[i] > 0);
        minus_after[i] = minus_after[i + 1] + (signs[i] < 0);
    }
    // parts still reachable from position i with the given open partials
    auto reach = [&](std::size_t i, const std::array<std::uint16_t, 4>& o) {
        std::size_t p = plus_after[i], m = minus_after[i];
        const std::size_t close_p = std::min<std::size_t>(o[2], p), close_m = std::min<std::size_t>(o[3], m);
        p -= close_p;
        m -= close_m;
        const std::size_t half = std::min<std::size_t>({std::size_t{o[0]} + o[1], p, m});
        p -= half;
        m -= half;
        return zeros_after[i] + close_p + close_m + half + std::min({(p + m) / 3, p, m});
    };
    std::vector<std::vector<State>> layers(n + 1);
    layers[0].push_back({{0, 0, 0, 0}, 0, -1, -1});
    std::optional<std::pair<std::size_t, std::size_t>> hit; // first state reaching the target
    for (std::size_t i = 0; i < n && !hit; ++i) {
        std::unordered_map<std::uint64_t, std::size_t> seen;
        auto& next = layers[i + 1];
        auto put = [&](std::array<std::uint16_t, 4> o, std::uint32_t done, std::size_t parent, std::int8_t action) {
            if (done + reach(i + 1, o) < target) return;
            auto [it, fresh] = seen.emplace(key(o), next.size());
            if (fresh) next.push_back({o, done, static_cast<std::int32_t>(parent), action});
            else if (next[it->second].done < done) next[it->second] = {o, done, static_cast<std::int32_t>(parent), action};
            if (done >= target && !hit) hit = std::make_pair(i + 1, it->second);
        };
        for (std::size_t j = 0; j < layers[i].size(); ++j) {
            const State st = layers[i][j];
            if (signs[i] == 0) {
                put(st.open, st.done + 1, j, -1);
                continue;
            }
            const int me = signs[i] > 0 ? 0 : 1, other = 1 - me;
            put(st.open, st.done, j, -1);
            auto o = st.open;
            ++o[me];
            put(o, st.done, j, 0);
            if (st.open[other] > 0) {
                o = st.open;
                --o[other];
                ++o[2 + other];
                put(o, st.done, j, 1);
            }
            if (st.open[2 + me] > 0) {
                o = st.open;
                --o[2 + me];
                put(o, st.done + 1, j, 2);
            }
        }
    }
    if (!hit) return {};
    std::vector<std::int8_t> actions(n, -1);
    for (std::size_t i = hit->first, j = hit->second; i-- > 0;) {
        actions[i] = layers[i + 1][j].action;
        j = static_cast<std::size_t>(layers[i + 1][j].parent);
    }
    // replay: partials are interchangeable, so any open one may be used
    std::vector<std::vector<std::size_t>> parts, open[4];
    for (std::size_t i = 0; i < n; ++i) {
        const int me = signs[i] > 0 ? 0 : 1, other = 1 - me;
        switch (actions[i]) {
        case -1:
            if (signs[i] == 0 && i < hit->first) parts.push_back({i});
            break;
        case 0: open[me].push_back({i}); break;
        case 1:
            open[other].back().push_back(i);
            open[2 + other].push_back(std::move(open[other].back()));
            open[other].pop_back();
            break;
        default:
            open[2 + me].back().push_back(i);
            parts.push_back(std::move(open[2 + me].back()));
            open[2 + me].pop_back();
        }
    }
    return parts;
}

} // namespace detail

/// Parts of a planar set in which the catline keeps regression depth at
/// least one: points on the line alone, and triples whose signs alternate
/// in x order (above, below, above or the reverse). A part of two points
/// with distinct x always has depth 0, so triples are the smallest useful
/// parts. Surplus parts and unused points are merged so that exactly
/// ceil(n/3) parts remain.
inline TverbergResult catline_tverberg(const PointSet& xs) {
    require(xs.size() >= 3, ErrorKind::invalid, "catline_tverberg needs at least 3 points");
    const Construction line = catline(xs);
    const std::size_t n = xs.size(), r = (n + 2) / 3;
    const Vec u = line.flat.span.front();
    require(u[0] != 0, ErrorKind::verification, "catline_tverberg: catline is vertical");
    const auto order = detail::x_order(xs);
    std::vector<int> signs;
    for (auto i : order) signs.push_back(sign(cross2(u, xs[i] - line.flat.anchor)) * sign(u[0]));
    auto parts = detail::alternating_parts(signs, r);
    std::vector<bool> used(n, false);
    for (auto& part : parts)
        for (auto& i : part) {
            i = order[i];
            used[i] = true;
        }
    std::vector<std::size_t> loose;
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) loose.push_back(i);
    require(parts.size() >= r, ErrorKind::verification,
            "catline_tverberg: only " + std::to_string(parts.size()) + " alternating parts, expected " +
                std::to_string(r));
    while (parts.size() > r) {
        loose.insert(loose.end(), parts.back().begin(), parts.back().end());
        parts.pop_back();
    }
    parts.front().insert(parts.front().end(), loose.begin(), loose.end());
    TverbergResult out;
    out.flat = line.flat;
    out.k = 1;
    out.parts = {PartitionKind::tverberg, std::move(parts)};
    out.per_part_depth = verify_flat_tverberg(out.flat, 1, out.parts, xs);
    for (auto d : out.per_part_depth)
        require(d >= 1, ErrorKind::verification, "catline_tverberg: a part has depth 0");
    return out;
}

} // namespace regdepth
