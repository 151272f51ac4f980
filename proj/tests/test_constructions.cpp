#include <gtest/gtest.h>

#include <regdepth/constructions.hpp>
#include <regdepth/datagen.hpp>

#include "oracle.hpp"
#include "support.hpp"

using namespace regdepth;
using testing_support::random_points;

namespace {

Point p2(long x, long y) { return Point(Scalar(x), Scalar(y)); }
Point p3(long x, long y, long z) { return Point(Scalar(x), Scalar(y), Scalar(z)); }

PointSet with_distinct_x(Rng& rng, int d, std::size_t n) {
    for (;;) {
        auto xs = random_points(rng, d, n, -1000, 1000);
        std::vector<Scalar> x;
        for (const auto& p : xs) x.push_back(p[0]);
        std::sort(x.begin(), x.end());
        if (std::adjacent_find(x.begin(), x.end()) == x.end()) return xs;
    }
}

void expect_partition_sane(const Construction& c, std::size_t n) {
    EXPECT_NO_THROW(check_partition(c.family, n));
    EXPECT_GE(c.certificate.depth, c.guarantee);
}

} // namespace

TEST(Centerpoint, ThreeClustersAtTriangle) {
    PointSet xs;
    for (int i = 0; i < 10; ++i) {
        xs.push_back(p2(0, 0));
        xs.push_back(p2(10, 0));
        xs.push_back(p2(0, 10));
    }
    EXPECT_GE(tukey_depth(centerpoint(xs), xs).depth, 10u);
}

TEST(Centerpoint, SinglePointAndCube) {
    const PointSet one{p2(3, 4)};
    EXPECT_EQ(centerpoint(one), p2(3, 4));
    PointSet cube;
    for (int a : {0, 2})
        for (int b : {0, 2})
            for (int c : {0, 2}) cube.push_back(p3(a, b, c));
    EXPECT_GE(tukey_depth(centerpoint(cube), cube).depth, 2u);
}

TEST(HamSandwich, PlanarExamples) {
    const PointSet a{p2(0, 0), p2(0, 2)}, b{p2(5, 1), p2(5, 3)};
    const auto h = ham_sandwich_2d(a, b);
    EXPECT_TRUE(bisects_all(h, {&a, &b}));
    const auto same = ham_sandwich_2d(a, a);
    EXPECT_TRUE(bisects_all(same, {&a}));

    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_points(rng, 2, 20, -50, 50), t = random_points(rng, 2, 20, -50, 50);
        const auto g = ham_sandwich_2d(s, t);
        EXPECT_LE(max_open_side(g, s), 10u);
        EXPECT_LE(max_open_side(g, t), 10u);
    }
}

TEST(HamSandwich, SpatialExamples) {
    const PointSet a{p3(1, 0, 0), p3(-1, 0, 0)}, b{p3(0, 1, 0), p3(0, -1, 0)}, c{p3(0, 0, 1), p3(0, 0, -1)};
    const auto h = ham_sandwich_3d(a, b, c);
    EXPECT_TRUE(bisects_all(h, {&a, &b, &c}));

    Rng rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        const auto s = random_points(rng, 3, 10, -30, 30), t = random_points(rng, 3, 10, -30, 30),
                   u = random_points(rng, 3, 10, -30, 30);
        HamSandwichOptions opt;
        opt.seed = static_cast<std::uint64_t>(trial);
        EXPECT_TRUE(bisects_all(ham_sandwich_3d(s, t, u, opt), {&s, &t, &u}));
    }

    PointSet flat;
    for (long i = 0; i < 9; ++i) flat.push_back(p3(i, i * i % 7, 0));
    const PointSet f1(flat.begin(), flat.begin() + 3), f2(flat.begin() + 3, flat.begin() + 6),
        f3(flat.begin() + 6, flat.end());
    EXPECT_TRUE(bisects_all(ham_sandwich_3d(f1, f2, f3), {&f1, &f2, &f3}));
}

TEST(Transversal, Examples) {
    const PointSet s1{p2(0, 1), p2(0, -1)}, s2{p2(5, 2), p2(5, -2)}, s3{p2(-4, 1), p2(-4, -3)};
    const auto r = is_transversal_triple(s1, s2, s3);
    EXPECT_TRUE(r.transversal);
    ASSERT_TRUE(r.witness.has_value());
    for (const auto* s : {&s1, &s2, &s3}) {
        int pos = 0, neg = 0;
        for (const auto& p : *s) (orient(*r.witness, p) > 0 ? pos : neg) += orient(*r.witness, p) != 0;
        EXPECT_GT(pos, 0);
        EXPECT_GT(neg, 0);
    }
    EXPECT_FALSE(is_transversal_triple({p2(0, 0)}, {p2(1, 0)}, {p2(0, 1)}).transversal);
}

TEST(SixSector, CircleOfTwelve) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::circle_equispaced;
    spec.n = 12;
    const auto xs = generate(spec).points;
    const auto w = six_sector_partition(xs);
    EXPECT_NO_THROW(detail::verify_six_sector(w, xs));
    std::array<int, 6> count{};
    for (int s : w.sector) ++count[static_cast<std::size_t>(s)];
    for (int c : count) EXPECT_EQ(c, 2);
    EXPECT_LT(abs_value(w.center[0]) + abs_value(w.center[1]), Scalar(1, 2));
}

TEST(SixSector, SmallConfigurations) {
    const PointSet triangles{p2(0, 10), p2(-9, -5), p2(9, -5), p2(0, -2), p2(2, 1), p2(-2, 1)};
    const PointSet hexagon{p2(4, 0), p2(2, 3), p2(-2, 3), p2(-4, 0), p2(-2, -3), p2(2, -3)};
    for (const auto* xs : {&triangles, &hexagon}) {
        const auto w = six_sector_partition(*xs);
        EXPECT_NO_THROW(detail::verify_six_sector(w, *xs));
        std::array<int, 6> count{};
        for (int s : w.sector) ++count[static_cast<std::size_t>(s)];
        for (int c : count) EXPECT_EQ(c, 1);
        EXPECT_FALSE(is_transversal_triple(gather(*xs, w.triple[0]), gather(*xs, w.triple[1]), gather(*xs, w.triple[2]))
                         .transversal);
    }
}

TEST(SixSector, RandomSetsBalancedAndConcurrent) {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 6 + rng.below(40);
        const auto xs = random_points(rng, 2, n, -100, 100);
        const auto w = six_sector_partition(xs);
        EXPECT_NO_THROW(detail::verify_six_sector(w, xs));
        for (const auto& h : w.lines) EXPECT_EQ(orient(h, w.center), 0);
        std::array<std::size_t, 6> count{};
        for (int s : w.sector) ++count[static_cast<std::size_t>(s)];
        EXPECT_LE(*std::max_element(count.begin(), count.end()) - *std::min_element(count.begin(), count.end()), 1u);
    }
}

TEST(Catline, Examples) {
    const PointSet grid{p2(0, 0), p2(0, 1), p2(1, 0), p2(1, 1), p2(2, 0), p2(2, 1)};
    EXPECT_GE(catline(grid).certificate.depth, 2u);

    PointSet line;
    for (long i = 0; i < 7; ++i) line.push_back(p2(i, 3 * i - 2));
    EXPECT_EQ(catline(line).certificate.depth, 7u);

    Rng rng(30);
    const auto xs = random_points(rng, 2, 30, -100, 100);
    EXPECT_GE(catline(xs).certificate.depth, 10u);
}

TEST(Catline, OuterThirdsAloneCanBeShallow) {
    // the line through points 6 and 9 bisects the five leftmost and the five
    // rightmost points, yet has depth 4 < ceil(13/3)
    const PointSet xs{p2(44, 10), p2(22, 5),  p2(51, 95), p2(98, 34), p2(43, 18), p2(1, 75), p2(74, 96),
                      p2(32, 23), p2(16, 68), p2(9, 62),  p2(24, 20), p2(54, 98), p2(19, 40)};
    const auto order = detail::x_order(xs);
    const PointSet L = gather(xs, detail::slice(order, 0, 5)), R = gather(xs, detail::slice(order, 8, 13));
    const auto h = Hyperplane::through(xs[6], detail::perp(xs[9] - xs[6]));
    ASSERT_TRUE(bisects_all(h, {&L, &R}));
    EXPECT_EQ(regression_depth(hyperplane_flat(h), 1, xs).depth, 4u);
    EXPECT_GE(catline(xs).certificate.depth, 5u);
}

TEST(Catline, GuaranteeOnRandomInstances) {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(60);
        const auto xs = random_points(rng, 2, n, -30, 30);
        const auto c = catline(xs);
        expect_partition_sane(c, n);
        EXPECT_GE(c.certificate.depth, (n + 2) / 3);
        if (n <= 8) {
            EXPECT_EQ(c.certificate.depth, oracle::regression_depth(c.flat, 1, xs));
        }
    }
}

TEST(DeepLine3d, Examples) {
    Rng rng(40);
    const auto xs = with_distinct_x(rng, 3, 16);
    EXPECT_GE(construct_deep_line_3d(xs).certificate.depth, 2u);

    PointSet circles;
    for (auto [y, z] : {std::pair{5, 0}, {-5, 0}, {0, 5}, {0, -5}, {3, 4}, {-3, -4}, {4, -3}, {-4, 3}})
        for (long x : {0, 1}) circles.push_back(p3(x, y, z));
    EXPECT_GE(construct_deep_line_3d(circles).certificate.depth, 2u);

    PointSet line;
    for (long i = 0; i < 9; ++i) line.push_back(p3(i, 2 * i + 1, 1 - i));
    const auto c = construct_deep_line_3d(line);
    EXPECT_EQ(c.certificate.depth, 9u);
}

TEST(DeepLine3d, GuaranteesOnRandomInstances) {
    Rng rng(41);
    for (int trial = 0; trial < 24; ++trial) {
        const std::size_t n = 8 + rng.below(40);
        const auto xs = with_distinct_x(rng, 3, n);
        const auto med = construct_deep_line_3d(xs, DeepLineStrategy::median);
        expect_partition_sane(med, n);
        EXPECT_GE(med.certificate.depth, (n / 2 + 3) / 4);
        const auto three = construct_deep_line_3d(xs, DeepLineStrategy::three_piece);
        expect_partition_sane(three, n);
    }
}

TEST(DeepPlane3d, Examples) {
    Rng rng(50);
    const auto xs = random_points(rng, 3, 24, -100, 100);
    EXPECT_GE(construct_deep_plane_3d(xs).certificate.depth, 2u);

    PointSet flat;
    for (long i = 0; i < 14; ++i) flat.push_back(p3(i, (i * i) % 11, 0));
    const auto c = construct_deep_plane_3d(flat);
    EXPECT_GE(c.certificate.depth, c.guarantee);
    EXPECT_EQ(regression_depth(make_flat(p3(0, 0, 0), {Vec(Scalar(1), Scalar(0), Scalar(0)), Vec(Scalar(0), Scalar(1), Scalar(0))}), 2, flat).depth,
              14u);

    GeneratorSpec spec;
    spec.kind = GeneratorKind::circle_equispaced;
    spec.n = 12;
    PointSet lifted;
    long z = 0;
    for (const auto& p : generate(spec).points) lifted.push_back(Point(p[0], p[1], Scalar(z++ % 5)));
    const auto r = construct_deep_plane_3d(lifted);
    EXPECT_EQ(r.guarantee, 1u);
    EXPECT_GE(r.certificate.depth, 1u);
}

TEST(DeepPlane3d, GuaranteeOnRandomInstances) {
    Rng rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 6 + rng.below(30);
        const auto xs = random_points(rng, 3, n, -100, 100);
        const auto c = construct_deep_plane_3d(xs, static_cast<std::uint64_t>(trial));
        expect_partition_sane(c, n);
        EXPECT_GE(c.certificate.depth, (n / 6 + 1) / 2);
    }
}

TEST(Constructions, RejectWrongDimension) {
    const PointSet planar{p2(0, 0), p2(1, 1), p2(2, 0)};
    const PointSet spatial{p3(0, 0, 0), p3(1, 1, 1)};
    EXPECT_THROW(catline(spatial), Error);
    EXPECT_THROW(construct_deep_line_3d(planar), Error);
    EXPECT_THROW(construct_deep_plane_3d(planar), Error);
}
