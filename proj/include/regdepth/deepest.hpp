#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "bounds.hpp"
#include "constructions.hpp"
#include "depth.hpp"
#include "random.hpp"

namespace regdepth {

struct DeepestResult {
    AffineFlat flat;
    DepthCertificate certificate;
    std::size_t evaluated = 0;
};

namespace detail {

/// Range add, global minimum.
class MinAddTree {
public:
    explicit MinAddTree(const std::vector<long>& init) : n_(init.size()) {
        size_ = 1;
        while (size_ < n_) size_ *= 2;
        mn_.assign(2 * size_, std::numeric_limits<long>::max() / 4);
        lz_.assign(2 * size_, 0);
        for (std::size_t i = 0; i < n_; ++i) mn_[size_ + i] = init[i];
        for (std::size_t i = size_ - 1; i >= 1; --i) mn_[i] = std::min(mn_[2 * i], mn_[2 * i + 1]);
    }

    void add(std::size_t l, std::size_t r, long v) { // [l, r)
        if (l < r) add(1, 0, size_, l, r, v);
    }
    long min() const { return mn_[1]; }

private:
    void add(std::size_t node, std::size_t lo, std::size_t hi, std::size_t l, std::size_t r, long v) {
        if (r <= lo || hi <= l) return;
        if (l <= lo && hi <= r) {
            mn_[node] += v;
            lz_[node] += v;
            return;
        }
        const std::size_t mid = (lo + hi) / 2;
        add(2 * node, lo, mid, l, r, v);
        add(2 * node + 1, mid, hi, l, r, v);
        mn_[node] = std::min(mn_[2 * node], mn_[2 * node + 1]) + lz_[node];
    }

    std::size_t n_, size_;
    std::vector<long> mn_, lz_;
};

/// Per-gap wedge counts of a non-vertical flat against the slabs x = c.
/// Gap g separates x-groups below g (left) from the rest; gap 0 is the
/// hyperplane at infinity. A point of sign s contributes [s>=0] to `plus`
/// on gaps where it is right and [s<=0] where it is left; `minus` swaps.
class SlabCounter {
public:
    SlabCounter(std::vector<std::size_t> group, std::size_t groups, const std::vector<int>& s)
        : group_(std::move(group)), sign_(s), plus_(init(groups, true)), minus_(init(groups, false)) {}

    void set(std::size_t j, int s) {
        if (s == sign_[j]) return;
        const long da = long(s >= 0) - long(sign_[j] >= 0), db = long(s <= 0) - long(sign_[j] <= 0);
        const std::size_t g = group_[j], end = groups_ + 1;
        plus_.add(0, g + 1, da);
        plus_.add(g + 1, end, db);
        minus_.add(0, g + 1, db);
        minus_.add(g + 1, end, da);
        sign_[j] = s;
    }

    std::size_t depth() const { return static_cast<std::size_t>(std::min(plus_.min(), minus_.min())); }

private:
    std::vector<long> init(std::size_t groups, bool plus) {
        groups_ = groups;
        std::vector<long> right_a(groups + 2, 0), left_b(groups + 2, 0);
        for (std::size_t j = 0; j < sign_.size(); ++j) {
            const bool a = sign_[j] >= 0, b = sign_[j] <= 0;
            right_a[group_[j]] += plus ? a : b;
            left_b[group_[j] + 1] += plus ? b : a;
        }
        std::vector<long> out(groups + 1, 0);
        long right = 0, left = 0;
        for (std::size_t g = 0; g < groups; ++g) right += right_a[g];
        for (std::size_t g = 0; g <= groups; ++g) {
            left += left_b[g];
            out[g] = left + right;
            if (g < groups) right -= right_a[g];
        }
        return out;
    }

    std::vector<std::size_t> group_;
    std::size_t groups_ = 0;
    std::vector<int> sign_;
    MinAddTree plus_, minus_;
};

template <class T>
std::pair<std::vector<std::size_t>, std::size_t> rank_groups(const std::vector<T>& x) {
    std::vector<T> v = x;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<std::size_t> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        g[i] = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x[i]) - v.begin());
    return {g, v.size()};
}

/// Axis-wise integer images of rational points (a positive diagonal scaling
/// preserves every side relation used by regression depth).
struct IntImage {
    bool ok = false;
    std::array<Scalar, 3> factor;
    std::vector<std::array<long long, 3>> pts;
};

inline IntImage int_image(const PointSet& xs, int bits) {
    IntImage out;
    if (xs.empty()) return out;
    const int d = xs[0].dim;
    mpz_class limit;
    mpz_ui_pow_ui(limit.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    out.pts.assign(xs.size(), {0, 0, 0});
    for (int a = 0; a < d; ++a) {
        mpz_class l = 1;
        for (const auto& p : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p[a].get_den_mpz_t());
        out.factor[static_cast<std::size_t>(a)] = Scalar(l);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mpz_class v = xs[i][a].get_num() * (l / xs[i][a].get_den());
            if (abs(v) >= limit) return out;
            out.pts[i][static_cast<std::size_t>(a)] = v.get_si();
        }
    }
    out.ok = true;
    return out;
}

/// Best line through two points of distinct x, by a rotating sweep around
/// each pivot. Returns (depth, i, j).
template <class I, class Mul>
std::tuple<std::size_t, std::size_t, std::size_t> pivot_sweep(const std::vector<I>& X, const std::vector<I>& Y, Mul mul) {
    const std::size_t n = X.size();
    auto [group, groups] = rank_groups(X);
    std::size_t best = 0, bi = 0, bj = 0;
    bool have = false;
    auto sgn = [](const I& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    std::vector<std::size_t> ev;
    std::vector<I> dx(n), dy(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<int> s(n);
        ev.clear();
        for (std::size_t j = 0; j < n; ++j) {
            dx[j] = X[j] - X[i];
            dy[j] = Y[j] - Y[i];
            if (dx[j] == 0) {
                s[j] = sgn(dy[j]);
                continue;
            }
            s[j] = sgn(dx[j]); // slope -> -infinity
            if (dx[j] < 0) {
                dx[j] = -dx[j];
                dy[j] = -dy[j];
            }
            ev.push_back(j);
        }
        if (ev.empty()) continue;
        auto slope_less = [&](std::size_t a, std::size_t b) { return mul(dy[a], dx[b]) < mul(dy[b], dx[a]); };
        std::sort(ev.begin(), ev.end(), [&](std::size_t a, std::size_t b) {
            if (slope_less(a, b)) return true;
            if (slope_less(b, a)) return false;
            return a < b;
        });
        SlabCounter counter(group, groups, s);
        for (std::size_t e = 0; e < ev.size();) {
            std::size_t f = e;
            while (f < ev.size() && !slope_less(ev[e], ev[f])) ++f;
            for (std::size_t t = e; t < f; ++t) counter.set(ev[t], 0);
            const std::size_t depth = counter.depth();
            if (!have || depth > best) {
                have = true;
                best = depth;
                bi = i;
                bj = ev[e];
            }
            for (std::size_t t = e; t < f; ++t) counter.set(ev[t], -sgn(X[ev[t]] - X[i]));
            e = f;
        }
    }
    return {best, bi, bj};
}

/// Exact depth of the line through integer points A and B (non-vertical)
/// against integer data: project along the line onto x = 0 and sweep a
/// half-turn of the plane pencil. Needs coordinates below 2^29.
inline std::size_t int_line_depth_3d(const std::vector<std::array<long long, 3>>& pts, const std::vector<std::size_t>& group,
                                     std::size_t groups, const std::array<long long, 3>& A,
                                     const std::array<long long, 3>& B) {
    using i128 = __int128;
    const long long ux = B[0] - A[0], uy = B[1] - A[1], uz = B[2] - A[2];
    const std::size_t n = pts.size();
    std::vector<std::array<long long, 2>> r(n);
    std::vector<int> s(n, 0);
    std::vector<std::size_t> ev;
    for (std::size_t j = 0; j < n; ++j) {
        const long long wx = pts[j][0] - A[0], wy = pts[j][1] - A[1], wz = pts[j][2] - A[2];
        r[j] = {ux * wy - wx * uy, ux * wz - wx * uz};
        if (r[j][0] == 0 && r[j][1] == 0) continue;
        // canonical half: angle in [0, pi)
        const bool flip = r[j][1] < 0 || (r[j][1] == 0 && r[j][0] < 0);
        if (flip) r[j] = {-r[j][0], -r[j][1]};
        s[j] = flip ? -1 : 1;
        ev.push_back(j);
    }
    auto cross = [&](std::size_t a, std::size_t b) { return i128(r[a][0]) * r[b][1] - i128(r[a][1]) * r[b][0]; };
    std::sort(ev.begin(), ev.end(), [&](std::size_t a, std::size_t b) { return cross(a, b) > 0; });
    SlabCounter counter(group, groups, s);
    std::size_t best = counter.depth();
    for (std::size_t e = 0; e < ev.size();) {
        std::size_t f = e;
        while (f < ev.size() && cross(ev[e], ev[f]) == 0) ++f;
        for (std::size_t t = e; t < f; ++t) {
            s[ev[t]] = -s[ev[t]];
            counter.set(ev[t], s[ev[t]]);
        }
        best = std::min(best, counter.depth());
        e = f;
    }
    return best;
}

inline DepthCertificate certify_line(const AffineFlat& line, const PointSet& xs, std::size_t expected, const char* what) {
    auto cert = regression_depth(line, 1, xs);
    require(cert.depth == expected, ErrorKind::verification,
            std::string(what) + ": sweep depth " + std::to_string(expected) + " disagrees with the certificate " +
                std::to_string(cert.depth));
    return cert;
}

} // namespace detail

/// A deepest regression line of a planar set. Depth only grows when a line
/// moves onto a data point, so every cell of lines attains its best value on
/// a line through two points of distinct x; all of those are swept, around
/// each pivot in slope order, in O(n^2 log n).
inline DeepestResult deepest_line_2d(const PointSet& xs) {
    require(!xs.empty(), ErrorKind::invalid, "deepest_line_2d of an empty set");
    require(dataset_dim(xs) == 2, ErrorKind::unsupported, "deepest_line_2d needs planar points");
    const std::size_t n = xs.size();
    bool spread = false;
    for (const auto& p : xs) spread = spread || p[0] != xs[0][0];
    if (!spread) {
        DeepestResult out;
        bool have = false;
        for (const auto& p : xs) {
            auto line = make_flat(p, {Vec(Scalar(1), Scalar(0))});
            auto cert = regression_depth(line, 1, xs);
            ++out.evaluated;
            if (!have || cert.depth > out.certificate.depth) {
                out = {line, cert, out.evaluated};
                have = true;
            }
        }
        return out;
    }
    std::tuple<std::size_t, std::size_t, std::size_t> best;
    const auto img = detail::int_image(xs, 62);
    if (img.ok) {
        std::vector<long long> X(n), Y(n);
        for (std::size_t i = 0; i < n; ++i) {
            X[i] = img.pts[i][0];
            Y[i] = img.pts[i][1];
        }
        best = detail::pivot_sweep(X, Y, [](long long a, long long b) { return __int128(a) * b; });
    } else {
        std::vector<mpz_class> X(n), Y(n);
        mpz_class lx = 1, ly = 1;
        for (const auto& p : xs) {
            mpz_lcm(lx.get_mpz_t(), lx.get_mpz_t(), p[0].get_den_mpz_t());
            mpz_lcm(ly.get_mpz_t(), ly.get_mpz_t(), p[1].get_den_mpz_t());
        }
        for (std::size_t i = 0; i < n; ++i) {
            X[i] = xs[i][0].get_num() * (lx / xs[i][0].get_den());
            Y[i] = xs[i][1].get_num() * (ly / xs[i][1].get_den());
        }
        best = detail::pivot_sweep(X, Y, [](const mpz_class& a, const mpz_class& b) { return mpz_class(a * b); });
    }
    const auto [depth, i, j] = best;
    DeepestResult out;
    out.flat = line_through(xs[i], xs[j]);
    out.certificate = detail::certify_line(out.flat, xs, depth, "deepest_line_2d");
    out.evaluated = n * (n - 1);
    return out;
}

namespace detail {

class LineSearch3d {
public:
    explicit LineSearch3d(const PointSet& xs) : xs_(xs), img_(int_image(xs, 29)) {
        if (!img_.ok) return;
        std::vector<long long> x(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) x[i] = img_.pts[i][0];
        std::tie(group_, groups_) = rank_groups(x);
    }

    bool fast() const { return img_.ok; }
    const IntImage& image() const { return img_; }

    /// Depth of the line through two integer-image points.
    std::size_t depth(const std::array<long long, 3>& a, const std::array<long long, 3>& b) const {
        if (a[0] == b[0]) return 0;
        return int_line_depth_3d(img_.pts, group_, groups_, a, b);
    }

    Point point(const std::array<long long, 3>& a) const {
        return Vec(Scalar(static_cast<long>(a[0])) / img_.factor[0], Scalar(static_cast<long>(a[1])) / img_.factor[1],
                   Scalar(static_cast<long>(a[2])) / img_.factor[2]);
    }

private:
    const PointSet& xs_;
    IntImage img_;
    std::vector<std::size_t> group_;
    std::size_t groups_ = 0;
};

} // namespace detail

/// Best flat found within `budget` candidates: the deep-flat constructions,
/// flats through data tuples in seeded order, then seeded local
/// perturbations of the incumbent. The reported depth is an exact
/// certificate of the returned flat and a lower bound on the optimum.
inline DeepestResult deepest_flat_heuristic_3d(const PointSet& xs, int k, std::size_t budget, std::uint64_t seed) {
    require(budget >= 1, ErrorKind::invalid, "budget must be at least 1");
    require(dataset_dim(xs) == 3, ErrorKind::unsupported, "deepest_flat_heuristic_3d needs points in space");
    require(k == 1 || k == 2, ErrorKind::unsupported, "deepest_flat_heuristic_3d searches lines or planes");
    const std::size_t n = xs.size();
    Rng rng(seed);
    DeepestResult best;
    bool have = false;
    std::size_t used = 0;
    auto offer_cert = [&](const AffineFlat& f, const DepthCertificate& cert) {
        if (!have || cert.depth > best.certificate.depth) {
            best.flat = f;
            best.certificate = cert;
            have = true;
        }
    };
    auto offer = [&](const AffineFlat& f) {
        ++used;
        offer_cert(f, regression_depth(f, k, xs));
    };

    // constructions
    auto construct = [&](auto make) {
        if (used >= budget) return;
        ++used;
        try {
            auto c = make();
            offer_cert(c.flat, c.certificate);
        } catch (const Error&) {
        }
    };
    if (k == 1) {
        if (n >= 2) {
            construct([&] { return construct_deep_line_3d(xs, DeepLineStrategy::median); });
            construct([&] { return construct_deep_line_3d(xs, DeepLineStrategy::three_piece); });
        }
    } else if (n >= 6) {
        construct([&] { return construct_deep_plane_3d(xs, seed); });
    }
    auto random_offset = [&](long scale) { return std::array<long long, 3>{rng.between(-scale, scale), rng.between(-scale, scale), rng.between(-scale, scale)}; };

    if (k == 1) {
        detail::LineSearch3d search(xs);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (xs[i][0] != xs[j][0]) pairs.emplace_back(i, j);
        rng.shuffle(pairs);
        if (!search.fast()) {
            for (const auto& [i, j] : pairs) {
                if (used >= budget) break;
                offer(line_through(xs[i], xs[j]));
            }
            if (!have) best = {make_flat(xs[0], {Vec(Scalar(1), Scalar(0), Scalar(0))}), {}, 0};
            best.evaluated = used;
            if (!have) best.certificate = regression_depth(best.flat, 1, xs);
            return best;
        }
        const auto& P = search.image().pts;
        std::size_t fast_best = have ? best.certificate.depth : 0;
        std::optional<std::pair<std::array<long long, 3>, std::array<long long, 3>>> incumbent;
        auto try_line = [&](const std::array<long long, 3>& a, const std::array<long long, 3>& b) {
            ++used;
            const std::size_t d = search.depth(a, b);
            if (d > fast_best || !incumbent) {
                if (d > fast_best) fast_best = d;
                incumbent = std::make_pair(a, b);
            }
        };
        for (const auto& [i, j] : pairs) {
            if (used >= budget) break;
            try_line(P[i], P[j]);
        }
        long spread = 1;
        for (const auto& p : P)
            for (int a = 0; a < 3; ++a) spread = std::max<long>(spread, static_cast<long>(std::llabs(p[static_cast<std::size_t>(a)] - P[0][static_cast<std::size_t>(a)])));
        long scale = std::max<long>(1, spread / 8);
        std::size_t stale = 0;
        const long long cap = (1LL << 29) - 1;
        auto clamp = [&](std::array<long long, 3> v) {
            for (auto& c : v) c = std::clamp(c, -cap, cap);
            return v;
        };
        while (used < budget && incumbent) {
            auto [a, b] = *incumbent;
            auto oa = random_offset(scale), ob = random_offset(scale);
            std::array<long long, 3> a2, b2;
            for (std::size_t t = 0; t < 3; ++t) {
                a2[t] = a[t] + oa[t];
                b2[t] = b[t] + ob[t];
            }
            const std::size_t before = fast_best;
            try_line(clamp(a2), clamp(b2));
            if (fast_best > before) stale = 0;
            else if (++stale >= 64) {
                stale = 0;
                scale = scale > 1 ? scale / 2 : std::max<long>(1, spread / 8);
            }
        }
        if (incumbent && (!have || fast_best > best.certificate.depth)) {
            AffineFlat line = line_through(search.point(incumbent->first), search.point(incumbent->second));
            best.flat = line;
            best.certificate = detail::certify_line(line, xs, fast_best, "deepest_flat_heuristic_3d");
            have = true;
        }
        best.evaluated = used;
        return best;
    }

    // planes
    const std::size_t tuples = n >= 3 ? n * (n - 1) * (n - 2) / 6 : 0;
    std::size_t attempts = 0;
    while (used < budget && tuples > 0 && attempts < 4 * budget) {
        ++attempts;
        const std::size_t i = rng.below(n), j = rng.below(n), l = rng.below(n);
        if (cross(xs[j] - xs[i], xs[l] - xs[i]).is_zero()) continue;
        auto f = plane_through(xs[i], xs[j], xs[l]);
        if (is_vertical(f)) continue;
        offer(f);
    }
    while (used < budget && have) {
        const Scalar scale = rational(1, static_cast<long>(1 + rng.below(64)));
        std::vector<Point> corners{best.flat.anchor, best.flat.anchor + best.flat.span[0], best.flat.anchor + best.flat.span[1]};
        for (auto& c : corners)
            for (int t = 0; t < 3; ++t) c[t] += scale * rational(rng.between(-64, 64), 64);
        if (cross(corners[1] - corners[0], corners[2] - corners[0]).is_zero()) {
            ++used;
            continue;
        }
        auto f = plane_through(corners[0], corners[1], corners[2]);
        if (is_vertical(f)) {
            ++used;
            continue;
        }
        offer(f);
    }
    if (!have) {
        best.flat = make_flat(Vec(Scalar(0), Scalar(0), Scalar(0)), {Vec(Scalar(1), Scalar(0), Scalar(0)), Vec(Scalar(0), Scalar(1), Scalar(0))});
        best.certificate = regression_depth(best.flat, 2, xs);
    }
    best.evaluated = used;
    return best;
}

/// Parameters of the sampling approximation: epsilon = delta / (2 R(d,k))
/// with R the smallest proven upper value, and a uniform sample of
/// ceil(c epsilon^-2 ln(1/epsilon)) points, capped at n.
struct ApproxParams {
    Scalar delta;
    Scalar epsilon;
    std::size_t sample_size = 0;
    std::uint64_t seed = 1;
    double constant = 8;
    std::size_t budget = 2000; // candidates for the 3D sub-solver
};

inline ApproxParams make_approx_params(std::size_t n, int d, int k, const Scalar& delta, std::uint64_t seed,
                                       double constant = 8) {
    require(delta > 0 && delta < 1, ErrorKind::invalid, "delta must lie in (0,1)");
    require(constant > 0, ErrorKind::invalid, "sampling constant must be positive");
    ApproxParams p;
    p.delta = delta;
    p.epsilon = delta / (2 * r_upper(d, k));
    p.seed = seed;
    p.constant = constant;
    const double inv = 1 / p.epsilon.get_d();
    const double want = std::ceil(constant * inv * inv * std::log(inv));
    p.sample_size = want >= static_cast<double>(n) ? n : static_cast<std::size_t>(want);
    return p;
}

/// Uniform sample without replacement, in input order. With probability
/// 1 - exp(-Omega(c ln(1/eps))) it is an eps-approximation for double wedges
/// with one vertical boundary.
inline PointSet epsilon_sample(const PointSet& xs, const ApproxParams& params) {
    require(params.epsilon > 0 && params.epsilon < 1, ErrorKind::invalid, "epsilon must lie in (0,1)");
    if (params.sample_size >= xs.size()) return xs;
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(params.seed);
    for (std::size_t i = 0; i < params.sample_size; ++i)
        std::swap(idx[i], idx[i + rng.below(xs.size() - i)]);
    idx.resize(params.sample_size);
    std::sort(idx.begin(), idx.end());
    return gather(xs, idx);
}

struct ApproxResult {
    AffineFlat flat;
    DepthCertificate certificate; // against the full dataset
    std::size_t sample_depth = 0;
    std::size_t sample_size = 0;
    Scalar epsilon;
};

/// Deepest flat of an epsilon-sample, certified against the full set. The
/// (1 - delta) factor holds when the sub-solver is exact (d = 2, k = 1);
/// lines and planes in space use the heuristic, points the centerpoint.
inline ApproxResult approx_deepest(const PointSet& xs, int k, const ApproxParams& params) {
    require(!xs.empty(), ErrorKind::invalid, "approx_deepest of an empty set");
    const int d = dataset_dim(xs);
    require(d == 2 || d == 3, ErrorKind::unsupported, "only dimensions 2 and 3 are supported");
    require(k >= 0 && k < d, ErrorKind::invalid, "need 0 <= k < d");
    const PointSet sample = epsilon_sample(xs, params);
    ApproxResult out;
    out.sample_size = sample.size();
    out.epsilon = params.epsilon;
    if (k == 0) {
        out.flat = point_flat(centerpoint(sample));
        out.sample_depth = regression_depth(out.flat, 0, sample).depth;
    } else if (d == 2) {
        auto r = deepest_line_2d(sample);
        out.flat = r.flat;
        out.sample_depth = r.certificate.depth;
    } else {
        auto r = deepest_flat_heuristic_3d(sample, k, params.budget, params.seed);
        out.flat = r.flat;
        out.sample_depth = r.certificate.depth;
    }
    out.certificate = regression_depth(out.flat, k, xs);
    return out;
}

} // namespace regdepth
