#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "centerpoint.hpp"
#include "depth.hpp"
#include "hamsandwich.hpp"
#include "sixsector.hpp"

namespace regdepth {

enum class PartitionKind { vertical_thirds, six_sector, median_split, three_piece, tverberg };

inline const char* to_string(PartitionKind k) {
    switch (k) {
    case PartitionKind::vertical_thirds: return "vertical-thirds";
    case PartitionKind::six_sector: return "six-sector";
    case PartitionKind::median_split: return "median-split";
    case PartitionKind::three_piece: return "three-piece";
    case PartitionKind::tverberg: return "tverberg";
    }
    return "";
}

/// Disjoint index subsets of a dataset.
struct PartitionFamily {
    PartitionKind kind = PartitionKind::tverberg;
    std::vector<std::vector<std::size_t>> parts;
};

inline void check_partition(const PartitionFamily& fam, std::size_t n) {
    std::vector<bool> used(n, false);
    for (const auto& part : fam.parts)
        for (auto i : part) {
            require(i < n, ErrorKind::invalid, "partition index out of range");
            require(!used[i], ErrorKind::invalid, "partition parts overlap");
            used[i] = true;
        }
}

inline PointSet gather(const PointSet& xs, const std::vector<std::size_t>& idx) {
    PointSet out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(xs[i]);
    return out;
}

/// A constructed flat together with the depth it is proven to reach and its
/// exact certificate (always at least `guarantee`).
struct Construction {
    AffineFlat flat;
    int k = 0;
    std::size_t guarantee = 0;
    DepthCertificate certificate;
    PartitionFamily family;
};

namespace detail {

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

/// Indices sorted by (x, index).
inline std::vector<std::size_t> x_order(const PointSet& xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a][0] < xs[b][0]; });
    return order;
}

inline std::vector<std::size_t> slice(const std::vector<std::size_t>& v, std::size_t from, std::size_t to) {
    return {v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(to)};
}

inline Construction finish(AffineFlat flat, int k, std::size_t guarantee, PartitionFamily fam, const PointSet& xs,
                           const std::string& what) {
    Construction c;
    c.certificate = regression_depth(flat, k, xs);
    c.flat = std::move(flat);
    c.k = k;
    c.guarantee = guarantee;
    c.family = std::move(fam);
    require(c.certificate.depth >= guarantee, ErrorKind::verification,
            what + ": verified depth " + std::to_string(c.certificate.depth) + " is below the guarantee " +
                std::to_string(guarantee));
    return c;
}

/// Line through two centerpoints, or the x direction through the first
/// when they coincide.
inline AffineFlat line_between(const Point& a, const Point& b) {
    if (a == b) return make_flat(a, {Vec(Scalar(1), Scalar(0), Scalar(0))});
    return line_through(a, b);
}

} // namespace detail

/// Planar line of regression depth at least ceil(n/3). With the points
/// sorted by x, the outer pieces L and R hold a = floor((n+1)/3) points
/// each and M the rest; the line bisects both L∪M and M∪R.
inline Construction catline(const PointSet& xs) {
    require(!xs.empty(), ErrorKind::invalid, "catline of an empty set");
    require(dataset_dim(xs) == 2, ErrorKind::unsupported, "catline needs planar points");
    const std::size_t n = xs.size(), a = (n + 1) / 3;
    const auto order = detail::x_order(xs);
    PartitionFamily fam{PartitionKind::vertical_thirds,
                        {detail::slice(order, 0, a), detail::slice(order, a, n - a), detail::slice(order, n - a, n)}};
    const Hyperplane h = ham_sandwich_2d(gather(xs, detail::slice(order, 0, n - a)), gather(xs, detail::slice(order, a, n)));
    return detail::finish(hyperplane_flat(h), 1, detail::ceil_div(n, 3), std::move(fam), xs, "catline");
}

enum class DeepLineStrategy { median, three_piece };

/// Deep line in space through the centerpoints of two x-ordered groups.
///
/// median: halves of floor(n/2) points each (the middle point of odd n is
/// left out). A wedge whose vertical boundary misses one half contains a
/// closed halfspace of that half bounded by a plane through its
/// centerpoint, giving ceil(floor(n/2)/4).
///
/// three-piece: outer pieces of a = min(ceil(2n/5), floor(n/2)) points,
/// centerpoints of the overlapping sets S1 = L∪M and S2 = M∪R. A vertical
/// boundary through M leaves both quarter-halfspaces inside the wedge, which
/// share at most |M| points, so the guarantee is
/// min(ceil(s/4), 2 ceil(s/4) - |M|) with s = n - a.
inline Construction construct_deep_line_3d(const PointSet& xs, DeepLineStrategy strategy = DeepLineStrategy::median) {
    require(xs.size() >= 2, ErrorKind::invalid, "construct_deep_line_3d needs at least 2 points");
    require(dataset_dim(xs) == 3, ErrorKind::unsupported, "construct_deep_line_3d needs points in space");
    const std::size_t n = xs.size();
    const auto order = detail::x_order(xs);
    if (strategy == DeepLineStrategy::median) {
        const std::size_t m = n / 2;
        auto low = detail::slice(order, 0, m), high = detail::slice(order, n - m, n);
        const Point c1 = centerpoint(gather(xs, low)), c2 = centerpoint(gather(xs, high));
        PartitionFamily fam{PartitionKind::median_split, {std::move(low), std::move(high)}};
        return detail::finish(detail::line_between(c1, c2), 1, detail::ceil_div(m, 4), std::move(fam), xs,
                              "deep line (median)");
    }
    const std::size_t a = std::min(detail::ceil_div(2 * n, 5), n / 2), s = n - a, mid = n - 2 * a;
    const Point c1 = centerpoint(gather(xs, detail::slice(order, 0, s)));
    const Point c2 = centerpoint(gather(xs, detail::slice(order, a, n)));
    const std::size_t quarter = detail::ceil_div(s, 4);
    const std::size_t guarantee = 2 * quarter > mid ? std::min(quarter, 2 * quarter - mid) : 0;
    PartitionFamily fam{PartitionKind::three_piece,
                        {detail::slice(order, 0, a), detail::slice(order, a, n - a), detail::slice(order, n - a, n)}};
    return detail::finish(detail::line_between(c1, c2), 1, guarantee, std::move(fam), xs, "deep line (three-piece)");
}

/// Deep plane in space: the alternating sectors of a six-sector partition of
/// the xy projections form a nontransversal triple, so every vertical plane
/// misses one of them entirely; a plane bisecting all three (lifted) keeps a
/// closed half of the missed one in every wedge: ceil(floor(n/6)/2).
inline Construction construct_deep_plane_3d(const PointSet& xs, std::uint64_t seed = 1, std::size_t budget = 1000000) {
    require(dataset_dim(xs) == 3, ErrorKind::unsupported, "construct_deep_plane_3d needs points in space");
    require(xs.size() >= 6, ErrorKind::invalid, "construct_deep_plane_3d needs at least 6 points");
    PointSet proj;
    for (const auto& p : xs) proj.push_back(detail::projection_xy(p));
    const SixSectorWitness w = six_sector_partition(proj);
    PartitionFamily fam{PartitionKind::six_sector, std::vector<std::vector<std::size_t>>(6)};
    for (std::size_t i = 0; i < xs.size(); ++i) fam.parts[static_cast<std::size_t>(w.sector[i])].push_back(i);
    HamSandwichOptions opt;
    opt.seed = seed;
    opt.budget = budget;
    opt.avoid_vertical = true;
    const Hyperplane h = ham_sandwich_3d(gather(xs, w.triple[0]), gather(xs, w.triple[1]), gather(xs, w.triple[2]), opt);
    return detail::finish(hyperplane_flat(h), 2, detail::ceil_div(xs.size() / 6, 2), std::move(fam), xs, "deep plane");
}

} // namespace regdepth
