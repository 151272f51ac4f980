#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "depth.hpp"
#include "random.hpp"

namespace regdepth {

/// Largest number of points of `set` strictly on either open side of h.
inline std::size_t max_open_side(const Hyperplane& h, const PointSet& set) {
    std::size_t pos = 0, neg = 0;
    for (const auto& p : set) {
        const int s = orient(h, p);
        pos += s > 0;
        neg += s < 0;
    }
    return std::max(pos, neg);
}

/// h bisects every set: at most floor(|s|/2) points strictly on each side.
inline bool bisects_all(const Hyperplane& h, const std::vector<const PointSet*>& sets) {
    for (const auto* s : sets)
        if (max_open_side(h, *s) > s->size() / 2) return false;
    return true;
}

/// Line leaving at most floor(|a|/2) points of a, and floor(|b|/2) of b,
/// strictly on each side. The valid lines form a closed set that is a union
/// of faces of the dual arrangement, so one passes through two distinct
/// data points; those lines are scanned in index order.
inline Hyperplane ham_sandwich_2d(const PointSet& a, const PointSet& b) {
    PointSet all = a;
    all.insert(all.end(), b.begin(), b.end());
    if (all.empty()) return Hyperplane::make(Vec(Scalar(0), Scalar(1)), 0);
    require(dataset_dim(all) == 2, ErrorKind::unsupported, "ham_sandwich_2d needs planar points");
    const std::vector<const PointSet*> sets{&a, &b};
    bool distinct = false;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (all[i] == all[j]) continue;
            distinct = true;
            auto h = Hyperplane::through(all[i], detail::perp(all[j] - all[i]));
            if (bisects_all(h, sets)) return h;
        }
    if (!distinct) return Hyperplane::through(all[0], Vec(Scalar(0), Scalar(1)));
    fail(ErrorKind::verification, "ham_sandwich_2d: no bisecting line through two points (kernel bug)");
}

struct HamSandwichOptions {
    std::uint64_t seed = 1;
    /// Maximum number of point pairs whose pencils are swept.
    std::size_t budget = 1000000;
    /// Prefer planes that are not vertical (normal with nonzero last coordinate).
    bool avoid_vertical = false;
};

/// Plane bisecting three point sets in space. Every plane through two data
/// points p, q and a third point is an event of the pencil around line pq;
/// pencils are swept for pairs in seeded random order until a bisecting
/// event plane is found.
inline Hyperplane ham_sandwich_3d(const PointSet& a, const PointSet& b, const PointSet& c,
                                  const HamSandwichOptions& opt = {}) {
    PointSet all = a;
    all.insert(all.end(), b.begin(), b.end());
    all.insert(all.end(), c.begin(), c.end());
    const Hyperplane fallback_plane = Hyperplane::make(Vec(Scalar(0), Scalar(0), Scalar(1)), 0);
    if (all.empty()) return fallback_plane;
    require(dataset_dim(all) == 3, ErrorKind::unsupported, "ham_sandwich_3d needs points in space");
    const std::vector<const PointSet*> sets{&a, &b, &c};
    std::vector<std::size_t> label;
    for (std::size_t s = 0; s < 3; ++s) label.insert(label.end(), sets[s]->size(), s);
    std::size_t limit[3] = {a.size() / 2, b.size() / 2, c.size() / 2};

    // collinear or coincident data: any plane containing their common line
    std::optional<std::pair<std::size_t, std::size_t>> spread;
    for (std::size_t j = 1; j < all.size() && !spread; ++j)
        if (all[j] != all[0]) spread = std::make_pair(std::size_t{0}, j);
    if (!spread) return Hyperplane::through(all[0], Vec(Scalar(0), Scalar(0), Scalar(1)));
    {
        const Vec u = all[spread->second] - all[0];
        bool collinear = true;
        for (const auto& p : all) collinear = collinear && cross(u, p - all[0]).is_zero();
        if (collinear) {
            Vec n = cross(u, Vec(Scalar(1), Scalar(0), Scalar(0)));
            if (n.is_zero() || (opt.avoid_vertical && n[2] == 0)) n = cross(u, Vec(Scalar(0), Scalar(1), Scalar(0)));
            if (opt.avoid_vertical && n[2] == 0) n = cross(u, Vec(Scalar(0), Scalar(0), Scalar(1)));
            return Hyperplane::through(all[0], n);
        }
    }

    // coplanar data: the common plane leaves nothing strictly on either side
    for (std::size_t k = 0; k < all.size(); ++k) {
        const Vec n = cross(all[spread->second] - all[0], all[k] - all[0]);
        if (n.is_zero()) continue;
        const Hyperplane h = Hyperplane::through(all[0], n);
        bool flat = true;
        for (const auto& p : all) flat = flat && orient(h, p) == 0;
        if (flat && !(opt.avoid_vertical && n[2] == 0)) return h;
        break;
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i] != all[j]) pairs.emplace_back(i, j);
    Rng rng(opt.seed);
    rng.shuffle(pairs);

    std::optional<Hyperplane> vertical_fallback;
    std::optional<Hyperplane> best;
    std::size_t best_excess = SIZE_MAX;
    std::size_t examined = 0;
    for (const auto& [i, j] : pairs) {
        if (examined++ >= opt.budget) break;
        const auto frame = detail::PencilFrame::around_line(all[i], all[j] - all[i]);
        std::optional<Hyperplane> found;
        detail::sweep_pencil(frame.residuals(all), true, [&](bool is_event, const Vec& m, std::span<const std::int8_t> s) {
            if (found || !is_event) return;
            std::size_t pos[3] = {0, 0, 0}, neg[3] = {0, 0, 0};
            for (std::size_t t = 0; t < s.size(); ++t) {
                pos[label[t]] += s[t] > 0;
                neg[label[t]] += s[t] < 0;
            }
            std::size_t excess = 0;
            for (int k = 0; k < 3; ++k) {
                const std::size_t worst = std::max(pos[k], neg[k]);
                if (worst > limit[k]) excess += worst - limit[k];
            }
            if (excess > 0) {
                if (excess < best_excess) {
                    best_excess = excess;
                    best = frame.member(m);
                }
                return;
            }
            Hyperplane h = frame.member(m);
            if (opt.avoid_vertical && h.normal[2] == 0) {
                if (!vertical_fallback) vertical_fallback = h;
                return;
            }
            found = h;
        });
        if (found) {
            require(bisects_all(*found, sets), ErrorKind::verification, "ham_sandwich_3d: sweep count mismatch");
            return *found;
        }
    }
    if (vertical_fallback) return *vertical_fallback;
    std::string msg = "ham_sandwich_3d: search budget exhausted";
    if (best) {
        msg += "; best candidate normal (" + to_string(best->normal[0]) + "," + to_string(best->normal[1]) + "," +
               to_string(best->normal[2]) + ") offset " + to_string(best->offset) + " exceeds bisection by " +
               std::to_string(best_excess);
    }
    fail(ErrorKind::budget, msg);
}

} // namespace regdepth
