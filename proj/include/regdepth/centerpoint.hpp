#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "depth.hpp"
#include "lp.hpp"

namespace regdepth {

namespace detail {

/// maximize c·x subject to A x <= b and lo <= x <= hi (x free otherwise).
inline std::optional<std::vector<Scalar>> lp_box(const std::vector<std::vector<Scalar>>& A, const std::vector<Scalar>& b,
                                                 const std::vector<Scalar>& c, const std::vector<Scalar>& lo,
                                                 const std::vector<Scalar>& hi) {
    const std::size_t n = c.size();
    std::vector<std::vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    for (std::size_t i = 0; i < A.size(); ++i) {
        Scalar shift = b[i];
        for (std::size_t j = 0; j < n; ++j) shift -= A[i][j] * lo[j];
        rows.push_back(A[i]);
        rhs.push_back(shift);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Scalar> r(n, Scalar(0));
        r[j] = 1;
        rows.push_back(r);
        rhs.push_back(hi[j] - lo[j]);
    }
    auto res = lp_maximize(rows, rhs, c);
    if (res.status != LpStatus::optimal) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) res.x[j] += lo[j];
    return res.x;
}

inline Scalar kth_largest(const Vec& g, const PointSet& xs, std::size_t t) {
    std::vector<Scalar> v;
    v.reserve(xs.size());
    for (const auto& p : xs) v.push_back(dot(g, p));
    std::nth_element(v.begin(), v.begin() + static_cast<long>(t - 1), v.end(), std::greater<>());
    return v[t - 1];
}

inline Scalar l1_norm(const Vec& g) {
    Scalar s = 0;
    for (int i = 0; i < g.dim; ++i) s += abs_value(g[i]);
    return s;
}

/// Given a direction g0 along which c lies beyond the t-th largest data
/// projection, returns a direction with the same property drawn from a
/// finite family: a vertex of the cone of directions inducing g0's data
/// order, intersected with the unit box.
inline Vec snap_cut(const Vec& g0, const Point& c, const PointSet& xs, std::size_t t) {
    const int d = g0.dim;
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Scalar> proj;
    for (const auto& p : xs) proj.push_back(dot(g0, p));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proj[a] > proj[b]; });
    std::vector<std::vector<Scalar>> A;
    std::vector<Scalar> b;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        // g·(x_next - x_prev) <= 0
        Vec diff = xs[order[i + 1]] - xs[order[i]];
        if (diff.is_zero()) continue;
        std::vector<Scalar> row;
        for (int j = 0; j < d; ++j) row.push_back(diff[j]);
        A.push_back(row);
        b.push_back(0);
    }
    Vec target = c - xs[order[t - 1]];
    std::vector<Scalar> obj, lo(static_cast<std::size_t>(d), Scalar(-1)), hi(static_cast<std::size_t>(d), Scalar(1));
    for (int j = 0; j < d; ++j) obj.push_back(target[j]);
    auto sol = lp_box(A, b, obj, lo, hi);
    require(sol.has_value(), ErrorKind::verification, "centerpoint: cut direction LP failed");
    Vec g = Vec::zero(d);
    for (int j = 0; j < d; ++j) g[j] = (*sol)[static_cast<std::size_t>(j)];
    require(!g.is_zero() && dot(g, c) > kth_largest(g, xs, t), ErrorKind::verification,
            "centerpoint: snapped cut is not violated");
    return g;
}

} // namespace detail

/// A point of Tukey depth at least ceil(n/(d+1)).
///
/// Tries the coordinate-wise median and the centroid, then runs a cutting
/// plane method: every point of the target depth satisfies g·c <= (t-th
/// largest g·x) for every direction g; a shallow candidate's witness
/// halfspace yields a violated direction, which is snapped to a finite
/// family so the loop terminates, and the next candidate maximises the
/// slack of all cuts collected so far.
inline Point centerpoint(const PointSet& xs, std::size_t max_rounds = 100000) {
    require(!xs.empty(), ErrorKind::invalid, "centerpoint of an empty set");
    const int d = dataset_dim(xs);
    require(d == 2 || d == 3, ErrorKind::unsupported, "only dimensions 2 and 3 are supported");
    const std::size_t n = xs.size();
    const std::size_t t = (n + static_cast<std::size_t>(d)) / static_cast<std::size_t>(d + 1);

    std::vector<Point> seeds;
    {
        Point med = Vec::zero(d), mean = Vec::zero(d);
        for (int j = 0; j < d; ++j) {
            std::vector<Scalar> v;
            for (const auto& p : xs) {
                v.push_back(p[j]);
                mean[j] += p[j];
            }
            std::nth_element(v.begin(), v.begin() + static_cast<long>((n - 1) / 2), v.end());
            med[j] = v[(n - 1) / 2];
            mean[j] /= static_cast<long>(n);
        }
        seeds = {med, mean};
    }

    std::vector<Scalar> lo(static_cast<std::size_t>(d) + 1), hi(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j < d; ++j) {
        lo[static_cast<std::size_t>(j)] = hi[static_cast<std::size_t>(j)] = xs[0][j];
        for (const auto& p : xs) {
            lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], p[j]);
            hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j)], p[j]);
        }
    }
    lo[static_cast<std::size_t>(d)] = 0;
    hi[static_cast<std::size_t>(d)] = 1;

    std::vector<std::vector<Scalar>> A;
    std::vector<Scalar> b;
    std::vector<Scalar> objective(static_cast<std::size_t>(d) + 1, Scalar(0));
    objective[static_cast<std::size_t>(d)] = 1;

    Point c = seeds[0];
    for (std::size_t round = 0; round < max_rounds; ++round) {
        auto cert = tukey_depth(c, xs);
        if (cert.depth >= t) return c;
        if (round == 0) {
            auto alt = tukey_depth(seeds[1], xs);
            if (alt.depth >= t) return seeds[1];
        }
        const auto& w = *cert.witness;
        Vec g0 = w.pairing == Pairing::plus ? w.h1.normal : -w.h1.normal;
        Vec g = detail::snap_cut(g0, c, xs, t);
        std::vector<Scalar> row;
        for (int j = 0; j < d; ++j) row.push_back(g[j]);
        row.push_back(detail::l1_norm(g));
        A.push_back(row);
        b.push_back(detail::kth_largest(g, xs, t));
        auto sol = detail::lp_box(A, b, objective, lo, hi);
        require(sol.has_value(), ErrorKind::verification, "centerpoint: cut system infeasible");
        for (int j = 0; j < d; ++j) c[j] = (*sol)[static_cast<std::size_t>(j)];
    }
    fail(ErrorKind::budget, "centerpoint: cutting-plane round limit reached");
}

} // namespace regdepth
