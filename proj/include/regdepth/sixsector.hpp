#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <vector>

#include "pencil.hpp"

namespace regdepth {

struct TransversalResult {
    bool transversal = false;
    std::optional<Hyperplane> witness;
};

/// Whether one line has, for each of the three planar sets, points strictly
/// on both sides. Every such line can be perturbed off the data, so it is
/// enough to scan one representative of each strict line split of the union.
inline TransversalResult is_transversal_triple(const PointSet& s1, const PointSet& s2, const PointSet& s3) {
    if (s1.size() < 2 || s2.size() < 2 || s3.size() < 2) return {};
    std::vector<Vec> pts;
    std::vector<int> label;
    int which = 0;
    for (const auto* s : {&s1, &s2, &s3}) {
        for (const auto& p : *s) {
            require_dim(p, 2);
            pts.push_back(p);
            label.push_back(which);
        }
        ++which;
    }
    TransversalResult out;
    detail::for_each_line_separation(pts, [&](long pivot, const Vec& m, int sigma, std::span<const std::int8_t> s) {
        if (out.transversal) return;
        std::array<bool, 3> pos{}, neg{};
        for (std::size_t i = 0; i < s.size(); ++i) (s[i] > 0 ? pos : neg)[static_cast<std::size_t>(label[i])] = true;
        for (int k = 0; k < 3; ++k)
            if (!pos[static_cast<std::size_t>(k)] || !neg[static_cast<std::size_t>(k)]) return;
        out.transversal = true;
        out.witness = detail::separation_line(pts, pivot, m, sigma);
    });
    return out;
}

/// Three concurrent lines splitting a planar set into six sectors whose
/// sizes differ by at most one. Sector i is the closed cone between
/// directions ray[i] and ray[i+1] (counter-clockwise, ray[i+3] = -ray[i]).
struct SixSectorWitness {
    Point center;
    std::array<Hyperplane, 3> lines;
    std::array<Vec, 6> rays;
    std::vector<int> sector; // per point
    std::array<std::vector<std::size_t>, 3> triple; // sectors 0, 2, 4
};

namespace detail {

struct SectorMerge {
    std::vector<std::size_t> order; // indices into the data, by angle from v
    std::vector<Vec> vec;           // p - O (upper) or O - p (lower), aligned with order
    std::vector<std::size_t> up, low; // prefix counts, size m + 1
    std::vector<bool> gap_ok;         // a ray may pass between order[g-1] and order[g]
};

/// Cut positions in the merged order: each cut lies in the block [s, e)
/// and sends `up` of its uppers and `low` of its lowers to the earlier side.
struct Cuts {
    std::size_t s1, e1, up1, low1;
    std::size_t s2, e2, up2, low2;
};

class SixSectorSearch {
public:
    SixSectorSearch(const PointSet& xs, const Vec& v) : xs_(xs), v_(v), w_(perp(v)) {
        const std::size_t n = xs.size();
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<Scalar> h(n);
        for (std::size_t i = 0; i < n; ++i) h[i] = dot(w_, xs[i]);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
        const std::size_t u = n / 2;
        ok_ = u > 0 && u < n && h[idx[u - 1]] > h[idx[u]];
        if (!ok_) return;
        const Scalar c = (h[idx[u - 1]] + h[idx[u]]) / 2;
        upper_.assign(n, false);
        for (std::size_t t = 0; t < u; ++t) upper_[idx[t]] = true;
        U_ = u;
        L_ = n - u;
        base_ = Scalar(c / dot(w_, w_)) * w_;
        // the center lies on line x_i x_j at these positions; the angular
        // order changes only there
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const Vec e = xs[j] - xs[i];
                const Scalar den = cross2(v_, e);
                if (den != 0) events_.push_back({cross2(xs[i] - base_, e) / den, i, j});
            }
        std::sort(events_.begin(), events_.end(), [](const Event& a, const Event& b) { return a.lambda < b.lambda; });
    }

    bool usable() const { return ok_; }

    Point center(const Scalar& lambda) const { return base_ + lambda * v_; }

    SectorMerge merge(const Scalar& lambda) const {
        const Point o = center(lambda);
        SectorMerge m;
        const std::size_t n = xs_.size();
        std::vector<Vec> vec(n);
        for (std::size_t i = 0; i < n; ++i) vec[i] = direction(o, i);
        m.order.resize(n);
        std::iota(m.order.begin(), m.order.end(), 0);
        std::stable_sort(m.order.begin(), m.order.end(),
                         [&](std::size_t a, std::size_t b) { return cross2(vec[a], vec[b]) > 0; });
        m.up.assign(n + 1, 0);
        m.low.assign(n + 1, 0);
        m.gap_ok.assign(n + 1, true);
        for (std::size_t g = 0; g < n; ++g) {
            m.vec.push_back(vec[m.order[g]]);
            m.up[g + 1] = m.up[g] + (upper_[m.order[g]] ? 1 : 0);
            m.low[g + 1] = m.low[g] + (upper_[m.order[g]] ? 0 : 1);
            if (g > 0 && cross2(vec[m.order[g - 1]], vec[m.order[g]]) == 0) m.gap_ok[g] = false;
        }
        m.gap_ok[0] = m.gap_ok[n] = false;
        return m;
    }

    /// Two cuts giving six admissible sector sizes, if any. Items with a
    /// common direction form a block; a cut runs along a block direction and
    /// may send any of the block's uppers and lowers to either side.
    std::optional<Cuts> feasible(const SectorMerge& m) const {
        const std::size_t n = xs_.size(), q = n / 6;
        auto in = [&](std::size_t s) { return s == q || s == q + 1; };
        std::vector<std::size_t> start{0};
        for (std::size_t g = 1; g < n; ++g)
            if (m.gap_ok[g]) start.push_back(g);
        const std::size_t B = start.size();
        start.push_back(n);
        auto pick = [&](std::size_t lo, std::size_t hi, std::size_t total, std::size_t lo2, std::size_t hi2)
            -> std::optional<std::pair<std::size_t, std::size_t>> {
            // first part in [lo, hi], last part in [lo2, hi2], middle admissible
            for (std::size_t a : {q, q + 1})
                for (std::size_t c : {q, q + 1})
                    if (a >= lo && a <= hi && c >= lo2 && c <= hi2 && a + c <= total && in(total - a - c))
                        return std::make_pair(a, c);
            return std::nullopt;
        };
        for (std::size_t t1 = 0; t1 < B && m.up[start[t1]] <= q + 1; ++t1) {
            const std::size_t s1 = start[t1], e1 = start[t1 + 1];
            if (m.low[s1] > q + 1 || m.up[e1] < q || m.low[e1] < q) continue;
            for (std::size_t t2 = B - 1; t2 > t1 && U_ - m.up[start[t2 + 1]] <= q + 1; --t2) {
                const std::size_t s2 = start[t2], e2 = start[t2 + 1];
                auto up = pick(m.up[s1], m.up[e1], U_, U_ - m.up[e2], U_ - m.up[s2]);
                auto low = pick(m.low[s1], m.low[e1], L_, L_ - m.low[e2], L_ - m.low[s2]);
                if (up && low)
                    return Cuts{s1, e1, up->first - m.up[s1], low->first - m.low[s1],
                                s2, e2, U_ - up->second - m.up[s2], L_ - low->second - m.low[s2]};
            }
        }
        return std::nullopt;
    }

    /// Sweeps the center along the halving line, repairing the angular
    /// order locally at each event and testing every cell.
    std::optional<SixSectorWitness> run() const {
        const std::size_t n = xs_.size();
        auto finish = [&](const Scalar& lambda) {
            SectorMerge m = merge(lambda);
            auto cuts = feasible(m);
            require(cuts.has_value(), ErrorKind::verification, "six-sector: sweep state diverged");
            return build(lambda, m, *cuts);
        };
        Scalar lambda = events_.empty() ? Scalar(0) : Scalar(events_.front().lambda - 1);
        SectorMerge m = merge(lambda);
        if (feasible(m)) return finish(lambda);
        std::vector<std::size_t> pos(n);
        for (std::size_t g = 0; g < n; ++g) pos[m.order[g]] = g;
        std::vector<Vec> vec(n);
        for (std::size_t e = 0; e < events_.size();) {
            std::size_t lo = n, hi = 0, f = e;
            for (; f < events_.size() && events_[f].lambda == events_[e].lambda; ++f) {
                lo = std::min({lo, pos[events_[f].i], pos[events_[f].j]});
                hi = std::max({hi, pos[events_[f].i], pos[events_[f].j]});
            }
            lambda = f < events_.size() ? Scalar((events_[e].lambda + events_[f].lambda) / 2) : Scalar(events_[e].lambda + 1);
            e = f;
            const Point o = center(lambda);
            for (std::size_t g = lo; g <= hi; ++g) vec[m.order[g]] = direction(o, m.order[g]);
            std::stable_sort(m.order.begin() + static_cast<long>(lo), m.order.begin() + static_cast<long>(hi) + 1,
                             [&](std::size_t a, std::size_t b) { return cross2(vec[a], vec[b]) > 0; });
            for (std::size_t g = lo; g <= hi; ++g) {
                pos[m.order[g]] = g;
                m.up[g + 1] = m.up[g] + (upper_[m.order[g]] ? 1 : 0);
                m.low[g + 1] = m.low[g] + (upper_[m.order[g]] ? 0 : 1);
                if (g > 0) m.gap_ok[g] = xs_[m.order[g - 1]] != xs_[m.order[g]];
            }
            if (hi + 1 < n) m.gap_ok[hi + 1] = xs_[m.order[hi]] != xs_[m.order[hi + 1]];
            if (feasible(m)) return finish(lambda);
        }
        return std::nullopt;
    }

private:
    struct Event {
        Scalar lambda;
        std::size_t i, j;
    };

    Vec direction(const Point& o, std::size_t i) const { return upper_[i] ? xs_[i] - o : o - xs_[i]; }

    SixSectorWitness build(const Scalar& lambda, const SectorMerge& m, const Cuts& c) const {
        SixSectorWitness out;
        out.center = center(lambda);
        auto ray = [&](std::size_t s, std::size_t up, std::size_t low) {
            return up == 0 && low == 0 && s > 0 ? m.vec[s - 1] + m.vec[s] : m.vec[s];
        };
        const Vec r1 = ray(c.s1, c.up1, c.low1), r2 = ray(c.s2, c.up2, c.low2);
        out.rays = {v_, r1, r2, -v_, -r1, -r2};
        out.lines = {Hyperplane::through(out.center, w_), Hyperplane::through(out.center, perp(r1)),
                     Hyperplane::through(out.center, perp(r2))};
        out.sector.assign(xs_.size(), -1);
        std::size_t up1 = c.up1, low1 = c.low1, up2 = c.up2, low2 = c.low2;
        for (std::size_t g = 0; g < m.order.size(); ++g) {
            const std::size_t i = m.order[g];
            auto take = [&](std::size_t& budget) { return budget > 0 ? (--budget, true) : false; };
            int part;
            if (g < c.s1) part = 0;
            else if (g < c.e1) part = take(upper_[i] ? up1 : low1) ? 0 : 1;
            else if (g < c.s2) part = 1;
            else if (g < c.e2) part = take(upper_[i] ? up2 : low2) ? 1 : 2;
            else part = 2;
            out.sector[i] = upper_[i] ? part : part + 3;
        }
        for (std::size_t i = 0; i < xs_.size(); ++i)
            if (out.sector[i] % 2 == 0) out.triple[static_cast<std::size_t>(out.sector[i] / 2)].push_back(i);
        return out;
    }

    const PointSet& xs_;
    Vec v_, w_;
    bool ok_ = false;
    std::vector<bool> upper_;
    std::size_t U_ = 0, L_ = 0;
    Point base_;
    std::vector<Event> events_;
};

/// Independent audit: concurrency, closed-sector membership by orientation
/// tests, balanced sizes, nontransversal alternating triple.
inline void verify_six_sector(const SixSectorWitness& w, const PointSet& xs) {
    const std::size_t n = xs.size(), q = n / 6;
    for (const auto& l : w.lines)
        require(orient(l, w.center) == 0, ErrorKind::verification, "six-sector: lines are not concurrent");
    for (int i = 0; i < 3; ++i)
        require(cross2(w.rays[static_cast<std::size_t>(i)], w.rays[static_cast<std::size_t>(i + 1)]) > 0,
                ErrorKind::verification, "six-sector: rays out of order");
    std::array<std::size_t, 6> count{};
    for (std::size_t i = 0; i < n; ++i) {
        const int s = w.sector[i];
        require(s >= 0 && s < 6, ErrorKind::verification, "six-sector: unassigned point");
        const Vec x = xs[i] - w.center;
        const Vec& a = w.rays[static_cast<std::size_t>(s)];
        const Vec& b = w.rays[static_cast<std::size_t>((s + 1) % 6)];
        require(cross2(a, x) >= 0 && cross2(x, b) >= 0, ErrorKind::verification, "six-sector: point outside its sector");
        ++count[static_cast<std::size_t>(s)];
    }
    for (auto c : count) require(c == q || c == q + 1, ErrorKind::verification, "six-sector: unbalanced sector sizes");
    std::array<PointSet, 3> sets;
    for (std::size_t t = 0; t < 3; ++t)
        for (auto i : w.triple[t]) sets[t].push_back(xs[i]);
    require(!is_transversal_triple(sets[0], sets[1], sets[2]).transversal, ErrorKind::verification,
            "six-sector: alternating sectors are transversal");
}

} // namespace detail

/// Searches halving-line directions (between consecutive point-pair
/// directions, both orientations) and, for each, the position of the
/// common point along the halving line; the first balanced configuration
/// found is audited and returned.
inline SixSectorWitness six_sector_partition(const PointSet& xs, std::size_t budget = 1000000) {
    require(dataset_dim(xs) == 2, ErrorKind::unsupported, "six_sector_partition needs planar points");
    require(xs.size() >= 6, ErrorKind::invalid, "six_sector_partition needs at least 6 points");
    std::vector<Vec> dirs;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i] != xs[j]) dirs.push_back(detail::canonical_half(xs[j] - xs[i]));
    auto angle_less = [](const Vec& a, const Vec& b) { return cross2(a, b) > 0; };
    std::sort(dirs.begin(), dirs.end(), angle_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end(), [](const Vec& a, const Vec& b) { return cross2(a, b) == 0; }),
               dirs.end());
    std::vector<Vec> cand;
    if (dirs.empty()) cand.push_back(Vec(Scalar(1), Scalar(0)));
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        Vec between = i + 1 < dirs.size() ? dirs[i] + dirs[i + 1] : dirs[i] - dirs[0];
        if (dirs.size() == 1) between = detail::perp(dirs[0]);
        cand.push_back(between);
    }
    const std::size_t half = cand.size();
    for (std::size_t i = 0; i < half; ++i) cand.push_back(-cand[i]);

    // visit candidates spread around the circle first
    const std::size_t K = cand.size();
    std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(K) * 0.6180339887));
    while (std::gcd(stride, K) != 1) ++stride;
    std::size_t tried = 0;
    for (std::size_t t = 0, i = 0; t < K && tried < budget; ++t, i = (i + stride) % K) {
        detail::SixSectorSearch search(xs, cand[i]);
        if (!search.usable()) continue;
        ++tried;
        if (auto w = search.run()) {
            detail::verify_six_sector(*w, xs);
            return *w;
        }
    }
    fail(ErrorKind::budget, "six_sector_partition: no balanced configuration found among " + std::to_string(tried) +
                                " halving directions (degenerate input?)");
}

} // namespace regdepth
