#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "geometry.hpp"
#include "pencil.hpp"
#include "random.hpp"

namespace regdepth {

enum class Pairing { plus, minus };

/// Closed region between two hyperplanes. `plus` selects
/// (h1⁺∩h2⁺)∪(h1⁻∩h2⁻), `minus` selects (h1⁺∩h2⁻)∪(h1⁻∩h2⁺). With h2 the
/// sentinel at infinity the wedge is the closed halfspace h1⁺ (plus) or h1⁻.
struct DoubleWedge {
    Hyperplane h1, h2;
    Pairing pairing = Pairing::plus;

    bool contains(const Point& p) const {
        const int s = orient(h1, p) * orient(h2, p);
        return pairing == Pairing::plus ? s >= 0 : s <= 0;
    }
};

struct DepthCertificate {
    std::size_t depth = 0;
    std::optional<DoubleWedge> witness;
    std::vector<std::size_t> contained;
    /// Set for vertical flats, which are nonfits by convention and carry no wedge.
    bool vertical_nonfit = false;
};

inline std::vector<std::size_t> wedge_members(const DoubleWedge& w, const PointSet& xs) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (w.contains(xs[i])) out.push_back(i);
    return out;
}

namespace detail {

constexpr std::size_t no_count = std::numeric_limits<std::size_t>::max();

struct Best {
    std::size_t count = no_count;
    Pairing pairing = Pairing::plus;
    Hyperplane h1, h2;

    template <class Make1, class Make2>
    void offer(std::size_t c, Pairing p, Make1&& make1, Make2&& make2) {
        if (c >= count) return;
        count = c;
        pairing = p;
        h1 = make1();
        h2 = make2();
    }
};

inline std::pair<std::size_t, std::size_t> closed_sides(std::span<const std::int8_t> s) {
    std::size_t pos = 0, neg = 0;
    for (auto v : s) {
        if (v >= 0) ++pos;
        if (v <= 0) ++neg;
    }
    return {pos, neg};
}

inline std::pair<std::size_t, std::size_t> wedge_counts(std::span<const std::int8_t> s1, std::span<const std::int8_t> s2) {
    std::size_t plus = 0, minus = 0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        const int v = s1[i] * s2[i];
        if (v >= 0) ++plus;
        if (v <= 0) ++minus;
    }
    return {plus, minus};
}

inline std::vector<std::int8_t> signs_against(const Hyperplane& h, const PointSet& xs) {
    std::vector<std::int8_t> s;
    s.reserve(xs.size());
    for (const auto& p : xs) s.push_back(static_cast<std::int8_t>(orient(h, p)));
    return s;
}

/// Second-hyperplane family consisting of the hyperplane at infinity alone:
/// the wedge degenerates to a closed halfspace bounded by h1.
struct SentinelFamily {
    int d;
    template <class Offer>
    void scan(std::span<const std::int8_t> s1, Offer&& offer) const {
        auto [pos, neg] = closed_sides(s1);
        auto inf = [this] { return Hyperplane::infinity(d); };
        offer(pos, Pairing::plus, inf);
        offer(neg, Pairing::minus, inf);
    }
};

/// Vertical hyperplanes x = c (first coordinate) plus the sentinel. Data are
/// grouped by x; moving the split one group to the right updates both
/// pairings' counts in O(group size).
class SlabFamily {
public:
    SlabFamily(const PointSet& xs, int d) : xs_(&xs), d_(d) {
        order_.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            if (xs[a][0] != xs[b][0]) return xs[a][0] < xs[b][0];
            return a < b;
        });
        for (std::size_t t = 0; t < order_.size(); ++t)
            if (t == 0 || xs[order_[t - 1]][0] != xs[order_[t]][0]) start_.push_back(t);
        start_.push_back(order_.size());
    }

    std::size_t groups() const { return start_.size() - 1; }

    /// Split with the first `gap` x-groups on the negative side.
    Hyperplane hyperplane(std::size_t gap) const {
        if (gap == 0) return Hyperplane::infinity(d_);
        const auto& xs = *xs_;
        Vec e = Vec::zero(d_);
        e[0] = 1;
        const Scalar& left = xs[order_[start_[gap] - 1]][0];
        if (gap == groups()) return Hyperplane::make(e, left + 1);
        return Hyperplane::make(e, (left + xs[order_[start_[gap]]][0]) / 2);
    }

    template <class Offer>
    void scan(std::span<const std::int8_t> s1, Offer&& offer) const {
        auto [plus, minus] = closed_sides(s1);
        offer(plus, Pairing::plus, [this] { return hyperplane(0); });
        offer(minus, Pairing::minus, [this] { return hyperplane(0); });
        long p = static_cast<long>(plus), m = static_cast<long>(minus);
        for (std::size_t g = 1; g <= groups(); ++g) {
            for (std::size_t t = start_[g - 1]; t < start_[g]; ++t) {
                const int v = s1[order_[t]];
                const int le = v <= 0, ge = v >= 0;
                p += le - ge;
                m += ge - le;
            }
            offer(static_cast<std::size_t>(p), Pairing::plus, [this, g] { return hyperplane(g); });
            offer(static_cast<std::size_t>(m), Pairing::minus, [this, g] { return hyperplane(g); });
        }
    }

private:
    const PointSet* xs_;
    int d_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> start_;
};

/// Vertical planes in space (normal with zero last coordinate): every split
/// of the (x, y) projections by a line, plus the sentinel.
class SeparationFamily {
public:
    explicit SeparationFamily(const PointSet& xs) {
        for (const auto& p : xs) proj_.push_back(projection_xy(p));
    }

    template <class Offer>
    void scan(std::span<const std::int8_t> s1, Offer&& offer) const {
        for_each_line_separation(proj_, [&](long pivot, const Vec& m, int sigma, std::span<const std::int8_t> s2) {
            auto [plus, minus] = wedge_counts(s1, s2);
            auto make = [&] { return lift_vertical(separation_line(proj_, pivot, m, sigma)); };
            offer(plus, Pairing::plus, make);
            offer(minus, Pairing::minus, make);
        });
    }

private:
    std::vector<Vec> proj_;
};

/// Explicit list of hyperplanes with precomputed signs.
struct MemberList {
    std::vector<Hyperplane> members;
    std::vector<std::vector<std::int8_t>> signs;

    template <class Offer>
    void scan(std::span<const std::int8_t> s1, Offer&& offer) const {
        for (std::size_t i = 0; i < members.size(); ++i) {
            auto [plus, minus] = wedge_counts(s1, signs[i]);
            auto make = [&] { return members[i]; };
            offer(plus, Pairing::plus, make);
            offer(minus, Pairing::minus, make);
        }
    }
};

/// Pencil of hyperplanes containing an affine flat whose pencil has
/// projective dimension at most one. Visits every generic member
/// (between-member, or the flat's own hyperplane) with its sign vector.
template <class Visit>
void for_each_generic_member(const AffineFlat& f, const PointSet& xs, Visit&& visit) {
    const int d = f.dim();
    if (f.k() == d - 1) {
        const Hyperplane h = containing_hyperplane(f);
        const auto s = signs_against(h, xs);
        visit([h] { return h; }, std::span<const std::int8_t>(s));
        return;
    }
    require(d == 2 || f.k() == 1, ErrorKind::unsupported, "pencil of a point in space has dimension two");
    const auto frame = d == 2 ? PencilFrame::around_point(f.anchor) : PencilFrame::around_line(f.anchor, f.span[0]);
    sweep_pencil(frame.residuals(xs), false, [&](bool, const Vec& m, std::span<const std::int8_t> s) {
        visit([&frame, &m] { return frame.member(m); }, s);
    });
}

template <class Family>
Best minimize(const AffineFlat& f, const PointSet& xs, const Family& family) {
    Best best;
    for_each_generic_member(f, xs, [&](auto&& make1, std::span<const std::int8_t> s1) {
        family.scan(s1, [&](std::size_t c, Pairing p, auto&& make2) { best.offer(c, p, make1, make2); });
    });
    return best;
}

/// Closed halfspaces bounded by a plane through a point in space. Planes
/// through p and one further data point q cover every position; each is
/// perturbed by a tilt about the axis pq that sends one of the two axis rays
/// to each side, which can only shrink the halfspace's count.
inline Best point_halfspaces_3d(const Point& p, const PointSet& xs) {
    Best best;
    std::size_t coincident = 0;
    std::vector<Vec> axes;
    for (const auto& q : xs) {
        if (q == p)
            ++coincident;
        else
            axes.push_back(canonical_direction(q - p));
    }
    std::sort(axes.begin(), axes.end(), lex_less);
    axes.erase(std::unique(axes.begin(), axes.end()), axes.end());
    auto inf = [] { return Hyperplane::infinity(3); };
    if (axes.empty()) {
        auto h = [&p] { return Hyperplane::through(p, Vec(Scalar(1), Scalar(0), Scalar(0))); };
        best.offer(coincident, Pairing::plus, h, inf);
        return best;
    }
    for (const auto& u : axes) {
        const auto frame = PencilFrame::around_line(p, u);
        const auto res = frame.residuals(xs);
        std::size_t ray_pos = 0, ray_neg = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!res[i].is_zero() || xs[i] == p) continue;
            if (dot(xs[i] - p, u) > 0)
                ++ray_pos;
            else
                ++ray_neg;
        }
        sweep_pencil(res, false, [&](bool, const Vec& m, std::span<const std::int8_t> s) {
            std::size_t pos = 0, neg = 0;
            for (auto v : s) {
                if (v > 0) ++pos;
                if (v < 0) ++neg;
            }
            for (int sigma : {1, -1}) {
                auto make = [&] { return tilted_plane(p, u, frame.normal(m), sigma, xs); };
                const std::size_t on_pos = sigma > 0 ? ray_pos : ray_neg;
                const std::size_t on_neg = sigma > 0 ? ray_neg : ray_pos;
                best.offer(coincident + pos + on_pos, Pairing::plus, make, inf);
                best.offer(coincident + neg + on_neg, Pairing::minus, make, inf);
            }
        });
    }
    return best;
}

inline Best halfspace_minimum(const AffineFlat& f, const PointSet& xs) {
    if (f.dim() == 3 && f.k() == 0) return point_halfspaces_3d(f.anchor, xs);
    return minimize(f, xs, SentinelFamily{f.dim()});
}

inline DepthCertificate certify(const Best& best, const PointSet& xs) {
    DepthCertificate cert;
    cert.witness = DoubleWedge{best.h1, best.h2, best.pairing};
    cert.contained = wedge_members(*cert.witness, xs);
    cert.depth = cert.contained.size();
    require(cert.depth == best.count, ErrorKind::verification,
            "witness recount disagrees with sweep count (" + std::to_string(cert.depth) + " vs " +
                std::to_string(best.count) + ")");
    return cert;
}

inline void check_dataset(const PointSet& xs, int d) {
    for (const auto& p : xs) require_dim(p, d);
}

inline DepthCertificate swap_roles(DepthCertificate c) {
    if (c.witness) std::swap(c.witness->h1, c.witness->h2);
    return c;
}

inline int pencil_dimension(const AffineFlat& f) { return f.dim() - 1 - f.k(); }

} // namespace detail

/// Regression depth of an affine k-flat: its crossing distance from the flat
/// at vertical infinity. Vertical flats are nonfits and report depth 0.
inline DepthCertificate regression_depth(const AffineFlat& f, int k, const PointSet& xs) {
    const int d = f.dim();
    require(d == 2 || d == 3, ErrorKind::unsupported, "only dimensions 2 and 3 are supported");
    require(k == f.k(), ErrorKind::invalid,
            "k = " + std::to_string(k) + " does not match the flat's dimension " + std::to_string(f.k()));
    detail::check_dataset(xs, d);
    if (is_vertical(f)) {
        DepthCertificate c;
        c.vertical_nonfit = true;
        return c;
    }
    if (k == 0) return detail::certify(detail::halfspace_minimum(f, xs), xs);
    if (k == 1) return detail::certify(detail::minimize(f, xs, detail::SlabFamily(xs, d)), xs);
    return detail::certify(detail::minimize(f, xs, detail::SeparationFamily(xs)), xs);
}

inline DepthCertificate tukey_depth(const Point& p, const PointSet& xs) {
    return regression_depth(point_flat(p), 0, xs);
}

/// Minimum over double wedges bounded by a hyperplane through f and one
/// through g. Supported: any affine flat against the matching flat at
/// vertical infinity, and pairs of affine flats whose pencils are
/// one-parameter (points and lines in the plane, lines and planes in space).
inline DepthCertificate crossing_distance(const Flat& f, const Flat& g, const PointSet& xs) {
    const int d = flat_dim(f);
    require(d == flat_dim(g), ErrorKind::invalid, "flats live in different dimensions");
    require(d == 2 || d == 3, ErrorKind::unsupported, "only dimensions 2 and 3 are supported");
    const auto* fa = std::get_if<AffineFlat>(&f);
    const auto* ga = std::get_if<AffineFlat>(&g);
    require(fa || ga, ErrorKind::unsupported, "both flats at vertical infinity");
    if (!fa || !ga) {
        const AffineFlat& a = fa ? *fa : *ga;
        const auto& vi = std::get<VerticalInfinity>(fa ? g : f);
        require(vi.j == d - a.k() - 1, ErrorKind::unsupported,
                "flat at vertical infinity must have dimension d-k-1 = " + std::to_string(d - a.k() - 1));
        auto cert = regression_depth(a, a.k(), xs);
        return fa ? cert : detail::swap_roles(std::move(cert));
    }
    require(detail::pencil_dimension(*fa) <= 1 && detail::pencil_dimension(*ga) <= 1, ErrorKind::unsupported,
            "crossing distance involving a point in space is not supported");
    detail::check_dataset(xs, d);
    detail::MemberList second;
    detail::for_each_generic_member(*ga, xs, [&](auto&& make, std::span<const std::int8_t> s) {
        second.members.push_back(make());
        second.signs.emplace_back(s.begin(), s.end());
    });
    return detail::certify(detail::minimize(*fa, xs, second), xs);
}

/// Minimum number of points of `subset` in a closed halfspace containing f.
inline std::size_t flat_halfspace_depth(const AffineFlat& f, const PointSet& subset) {
    if (subset.empty()) return 0;
    detail::check_dataset(subset, f.dim());
    return detail::halfspace_minimum(f, subset).count;
}

/// Randomized audit: samples `trials` double wedges bounded by a random
/// hyperplane through f and a random member of the vertical family, and
/// reports whether none holds fewer than cert.depth points.
inline bool certify_not_deeper(const DepthCertificate& cert, const AffineFlat& f, int k, const PointSet& xs,
                               std::size_t trials, std::uint64_t seed) {
    const int d = f.dim();
    require(k == f.k(), ErrorKind::invalid, "k does not match the flat");
    if (trials == 0 || xs.empty()) return true;
    if (is_vertical(f)) return cert.depth == 0;
    Rng rng(seed);
    auto small = [&] { return Scalar(rng.between(-50, 50)); };
    auto random_through_f = [&]() -> Hyperplane {
        if (k == d - 1) return containing_hyperplane(f);
        for (;;) {
            Vec n = d == 2 ? Vec(small(), small()) : Vec(small(), small(), small());
            if (k == 1) n = cross(f.span[0], cross(n, f.span[0]));
            if (!n.is_zero()) return Hyperplane::through(f.anchor, n);
        }
    };
    auto jitter = [&] { return rational(rng.between(-64, 64), 64); };
    auto random_vertical = [&]() -> Hyperplane {
        const int j = d - k - 1;
        if (j == d - 1 || rng.below(8) == 0) return Hyperplane::infinity(d);
        const Point& p = xs[rng.below(xs.size())];
        if (k == 1) {
            Vec e = Vec::zero(d);
            e[0] = 1;
            return Hyperplane::make(e, p[0] + jitter());
        }
        for (;;) {
            Vec n(small(), small(), Scalar(0));
            if (!n.is_zero()) return Hyperplane::make(n, dot(n, p) + jitter());
        }
    };
    for (std::size_t t = 0; t < trials; ++t) {
        const Hyperplane h1 = random_through_f();
        const Hyperplane h2 = random_vertical();
        std::size_t plus = 0, minus = 0;
        for (const auto& p : xs) {
            const int s = orient(h1, p) * orient(h2, p);
            if (s >= 0) ++plus;
            if (s <= 0) ++minus;
        }
        if (plus < cert.depth || minus < cert.depth) return false;
    }
    return true;
}

} // namespace regdepth
