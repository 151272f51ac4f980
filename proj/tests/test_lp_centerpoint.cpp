#include <gtest/gtest.h>

#include <regdepth/centerpoint.hpp>
#include <regdepth/lp.hpp>

#include "oracle.hpp"
#include "support.hpp"

using namespace regdepth;
using testing_support::random_points;

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

/// Best vertex of {A x <= b, x >= 0} in two variables, by enumerating all
/// pairwise intersections of constraint lines.
std::optional<Scalar> vertex_optimum(const Matrix& A, const std::vector<Scalar>& b, const std::vector<Scalar>& c) {
    Matrix rows = A;
    std::vector<Scalar> rhs = b;
    rows.push_back({Scalar(-1), Scalar(0)});
    rhs.push_back(0);
    rows.push_back({Scalar(0), Scalar(-1)});
    rhs.push_back(0);
    std::optional<Scalar> best;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const Scalar det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
            if (det == 0) continue;
            const Scalar x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det;
            const Scalar y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det;
            bool feasible = true;
            for (std::size_t r = 0; r < rows.size(); ++r) feasible = feasible && rows[r][0] * x + rows[r][1] * y <= rhs[r];
            if (!feasible) continue;
            const Scalar v = c[0] * x + c[1] * y;
            if (!best || v > *best) best = v;
        }
    return best;
}

} // namespace

TEST(Lp, TextbookOptimum) {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18
    const Matrix A{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(2)}, {Scalar(3), Scalar(2)}};
    const auto r = lp_maximize(A, {Scalar(4), Scalar(12), Scalar(18)}, {Scalar(3), Scalar(5)});
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(r.value, 36);
    EXPECT_EQ(r.x[0], 2);
    EXPECT_EQ(r.x[1], 6);
}

TEST(Lp, InfeasibleAndUnbounded) {
    const Matrix A{{Scalar(1), Scalar(1)}, {Scalar(-1), Scalar(-1)}};
    EXPECT_EQ(lp_maximize(A, {Scalar(1), Scalar(-2)}, {Scalar(1), Scalar(0)}).status, LpStatus::infeasible);
    const Matrix B{{Scalar(1), Scalar(-1)}};
    EXPECT_EQ(lp_maximize(B, {Scalar(1)}, {Scalar(1), Scalar(1)}).status, LpStatus::unbounded);
}

TEST(Lp, MatchesVertexEnumeration) {
    Rng rng(17);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Matrix A;
        std::vector<Scalar> b;
        const std::size_t m = 2 + rng.below(5);
        for (std::size_t i = 0; i < m; ++i) {
            A.push_back({Scalar(rng.between(-5, 5)), Scalar(rng.between(-5, 5))});
            b.push_back(Scalar(rng.between(-3, 10)));
        }
        // keep the region bounded so the oracle sees every optimum
        A.push_back({Scalar(1), Scalar(1)});
        b.push_back(20);
        const std::vector<Scalar> c{Scalar(rng.between(-4, 4)), Scalar(rng.between(-4, 4))};
        const auto r = lp_maximize(A, b, c);
        const auto oracle = vertex_optimum(A, b, c);
        if (!oracle) {
            EXPECT_EQ(r.status, LpStatus::infeasible);
            continue;
        }
        ASSERT_EQ(r.status, LpStatus::optimal);
        EXPECT_EQ(r.value, *oracle);
        for (std::size_t i = 0; i < A.size(); ++i) EXPECT_LE(A[i][0] * r.x[0] + A[i][1] * r.x[1], b[i]);
        ++checked;
    }
    EXPECT_GT(checked, 50);
}

TEST(Centerpoint, GuaranteeOnRandomSets) {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        const std::size_t n = 3 + rng.below(d == 2 ? 40 : 16);
        const auto xs = random_points(rng, d, n, -20, 20);
        const Point c = centerpoint(xs);
        const std::size_t need = (n + static_cast<std::size_t>(d)) / static_cast<std::size_t>(d + 1);
        EXPECT_GE(tukey_depth(c, xs).depth, need) << "n=" << n << " d=" << d;
        if (n <= 12) {
            EXPECT_EQ(tukey_depth(c, xs).depth, oracle::halfspace_depth(point_flat(c), xs));
        }
    }
}

TEST(Centerpoint, DegenerateInputs) {
    const PointSet same(7, Point(Scalar(2), Scalar(3)));
    EXPECT_EQ(tukey_depth(centerpoint(same), same).depth, 7u);
    PointSet line;
    for (long i = 0; i < 9; ++i) line.push_back(Point(Scalar(i), Scalar(2 * i)));
    EXPECT_GE(tukey_depth(centerpoint(line), line).depth, 3u);
    EXPECT_THROW(centerpoint({}), Error);
}
