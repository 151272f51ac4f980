#pragma once

#include <regdepth/geometry.hpp>
#include <regdepth/random.hpp>

namespace testing_support {

using namespace regdepth;

inline Point random_point(Rng& rng, int d, long lo, long hi) {
    if (d == 2) return Point(Scalar(rng.between(lo, hi)), Scalar(rng.between(lo, hi)));
    return Point(Scalar(rng.between(lo, hi)), Scalar(rng.between(lo, hi)), Scalar(rng.between(lo, hi)));
}

inline PointSet random_points(Rng& rng, int d, std::size_t n, long lo, long hi) {
    PointSet xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(random_point(rng, d, lo, hi));
    return xs;
}

inline Vec random_direction(Rng& rng, int d, long r) {
    for (;;) {
        Vec v = random_point(rng, d, -r, r);
        if (!v.is_zero()) return v;
    }
}

/// Random affine k-flat, anchored at a data point half of the time so that
/// incidences occur.
inline AffineFlat random_flat(Rng& rng, const PointSet& xs, int d, int k) {
    Point anchor = (!xs.empty() && rng.below(2) == 0) ? xs[rng.below(xs.size())] : random_point(rng, d, -6, 6);
    for (;;) {
        std::vector<Vec> span;
        for (int i = 0; i < k; ++i) {
            if (!xs.empty() && rng.below(3) == 0) {
                Vec v = xs[rng.below(xs.size())] - anchor;
                span.push_back(v.is_zero() ? random_direction(rng, d, 4) : v);
            } else {
                span.push_back(random_direction(rng, d, 4));
            }
        }
        if (independent(span)) return AffineFlat{anchor, span};
    }
}

} // namespace testing_support
