#include <gtest/gtest.h>

#include <functional>

#include <regdepth/constructions.hpp>
#include <regdepth/datagen.hpp>
#include <regdepth/io.hpp>
#include <regdepth/svg.hpp>

#include "support.hpp"

using namespace regdepth;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t c = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
    return c;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::invalid;
}

} // namespace

TEST(Csv, ParsesHeaderCommentsAndPragma) {
    const auto ds = parse_csv("# sample\n# k=1\nx,y,z\n1,2,3\n\n-0.5, 1/3 ,2e2\n");
    EXPECT_EQ(ds.dim, 3);
    ASSERT_TRUE(ds.k.has_value());
    EXPECT_EQ(*ds.k, 1);
    ASSERT_EQ(ds.points.size(), 2u);
    EXPECT_EQ(ds.points[1][0], rational(-1, 2));
    EXPECT_EQ(ds.points[1][1], rational(1, 3));
    EXPECT_EQ(ds.points[1][2], 200);
}

TEST(Csv, ErrorsNameTheLine) {
    EXPECT_EQ(kind_of([] { parse_csv("x,y\n1,2\n3\n"); }), ErrorKind::parse);
    try {
        parse_csv("x,y\n1,2\n3,4,5\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_EQ(kind_of([] { parse_csv("a,b\n1,2\n"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { parse_csv("x,y\n1,abc\n"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { parse_csv("# only a comment\n"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { parse_csv("# k=7\nx,y\n"); }), ErrorKind::parse);
}

TEST(Csv, RoundTripIsIdentity) {
    Rng rng(100);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + static_cast<int>(rng.below(2));
        PointSet xs;
        for (std::size_t i = 0; i < 1 + rng.below(20); ++i) {
            std::vector<Scalar> c;
            for (int j = 0; j < d; ++j) c.push_back(rational(rng.between(-1000, 1000), rng.between(1, 64)));
            xs.push_back(d == 2 ? Vec(c[0], c[1]) : Vec(c[0], c[1], c[2]));
        }
        const std::optional<int> k = trial % 3 == 0 ? std::optional<int>(1) : std::nullopt;
        const std::string text = write_csv(xs, d, k);
        const auto ds = parse_csv(text);
        EXPECT_EQ(ds.points, xs);
        EXPECT_EQ(ds.k, k);
        EXPECT_EQ(write_csv(ds.points, ds.dim, ds.k), text);
    }
}

TEST(Csv, ExactText) {
    EXPECT_EQ(exact_text(rational(1, 4)), "0.25");
    EXPECT_EQ(exact_text(rational(-3, 1)), "-3");
    EXPECT_EQ(exact_text(rational(1, 3)), "1/3");
    EXPECT_EQ(exact_text(rational(7, 40)), "0.175");
}

TEST(FlatText, RoundTrip) {
    const auto f = parse_flat("0,0,0;1,0,0");
    EXPECT_EQ(f.k(), 1);
    EXPECT_EQ(parse_flat(flat_text(f)).anchor, f.anchor);
    const auto g = parse_flat("1/2,0,3;1,0,2;0,1,-1/3");
    EXPECT_EQ(g.k(), 2);
    const auto back = parse_flat(flat_text(g));
    EXPECT_EQ(back.anchor, g.anchor);
    EXPECT_EQ(back.span, g.span);
    EXPECT_EQ(parse_flat("3,4").k(), 0);
    EXPECT_EQ(kind_of([] { parse_flat("1,2;1,2,3"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { parse_flat(""); }), ErrorKind::parse);

    const auto h = parse_hyperplane("1,-2;1/2");
    EXPECT_EQ(parse_hyperplane(hyperplane_text(h)).offset, h.offset);
    EXPECT_EQ(parse_hyperplane(hyperplane_text(h)).normal, h.normal);
}

TEST(FlatText, Parts) {
    EXPECT_EQ(parse_parts("0,1,2;3,4"), (std::vector<std::vector<std::size_t>>{{0, 1, 2}, {3, 4}}));
    EXPECT_EQ(kind_of([] { parse_parts("0,-1"); }), ErrorKind::parse);
}

TEST(Digest, KnownFnvValues) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(fnv1a_hex("foobar"), "85944171f73967e8");
}

TEST(Svg, EmptyDatasetHasAxesOnly) {
    const std::string svg = render_svg({});
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_EQ(count(svg, "</svg>"), 1u);
    EXPECT_EQ(count(svg, "class=\"axis\""), 2u);
    EXPECT_EQ(count(svg, "class=\"point\""), 0u);
    EXPECT_EQ(count(svg, "viewBox=\"0 0 800 800\""), 1u);
}

TEST(Svg, SixSectorFigure) {
    GeneratorSpec spec;
    spec.kind = GeneratorKind::circle_equispaced;
    spec.n = 12;
    const auto xs = generate(spec).points;
    SvgOverlay ov;
    ov.sectors = six_sector_partition(xs);
    ov.part = ov.sectors->sector;
    const std::string svg = render_svg(xs, ov);
    EXPECT_EQ(count(svg, "class=\"sector-line\""), 3u);
    EXPECT_EQ(count(svg, "class=\"sector\""), 6u);
    EXPECT_EQ(count(svg, "class=\"point\""), 12u);
    EXPECT_EQ(render_svg(xs, ov), svg);
}

TEST(Svg, CatlineWithWedge) {
    Rng rng(101);
    const auto xs = testing_support::random_points(rng, 2, 20, -50, 50);
    const auto c = catline(xs);
    SvgOverlay ov;
    ov.flats.push_back(c.flat);
    ASSERT_TRUE(c.certificate.witness.has_value());
    ov.wedges.push_back(*c.certificate.witness);
    const std::string svg = render_svg(xs, ov);
    EXPECT_EQ(count(svg, "class=\"flat\""), 1u);
    EXPECT_GE(count(svg, "class=\"wedge\""), 1u);
    EXPECT_LE(count(svg, "class=\"wedge\""), 2u);
}

TEST(Svg, SpatialInputIsAnnotated) {
    const PointSet xs{Vec(Scalar(0), Scalar(0), Scalar(1)), Vec(Scalar(1), Scalar(2), Scalar(3))};
    const std::string svg = render_svg(xs);
    EXPECT_NE(svg.find("projection onto x, y"), std::string::npos);
    EXPECT_EQ(count(svg, "class=\"point\""), 2u);
}
