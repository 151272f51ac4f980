#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace regdepth;
using regdepth::cli::json;

namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out, err;
    json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() / ("regdepth_cli_" + std::to_string(::getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string file(const std::string& name, const std::string& text) {
        const auto path = (dir / name).string();
        std::ofstream(path) << text;
        return path;
    }

    std::string cube() {
        std::string text = "x,y,z\n";
        for (int a : {0, 1})
            for (int b : {0, 1})
                for (int c : {0, 1}) text += std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "\n";
        return file("cube.csv", text);
    }

    std::string planar() {
        return file("planar.csv", "x,y\n0,0\n1,3\n2,1\n3,4\n4,2\n5,5\n6,1\n7,3\n8,0\n9,4\n10,2\n11,6\n");
    }
};

json strip_timing(json j) {
    j.erase("timing_ms");
    return j;
}

} // namespace

TEST_F(CliTest, DepthOnCubeMatchesLibrary) {
    const auto path = cube();
    const auto r = run({"depth", "--input", path, "--k", "1", "--flat", "0,0,0;1,0,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = r.report();
    EXPECT_EQ(rep["schema"], 1);
    EXPECT_EQ(rep["command"], "depth");
    EXPECT_EQ(rep["inputs"][0]["n"], 8);
    const auto expected = regression_depth(parse_flat("0,0,0;1,0,0"), 1, load_csv(path).points).depth;
    EXPECT_EQ(rep["result"]["certificate"]["depth"], expected);
    EXPECT_EQ(rep["parameters"]["flat"]["anchor"][0]["exact"], "0");
    EXPECT_EQ(rep["parameters"]["flat"]["span"][0][0]["decimal"], "1");
}

TEST_F(CliTest, VerticalLineHasDepthZero) {
    const auto r = run({"depth", "--input", planar(), "--k", "1", "--flat", "3,0;0,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.report()["result"]["certificate"]["depth"], 0);
}

TEST_F(CliTest, BoundsTable) {
    const auto r = run({"bounds", "--d", "3", "--k", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    bool found = false;
    const auto rep = r.report();
    for (const auto& row : rep["result"]["bounds"])
        if (row["statement"] == "R(3,1) = 5") {
            found = true;
            EXPECT_EQ(row["status"], "proven-exact");
            EXPECT_EQ(row["value"]["exact"], "5");
        }
    EXPECT_TRUE(found);
    const auto all = run({"bounds"});
    ASSERT_EQ(all.code, 0);
    EXPECT_EQ(all.report()["result"]["bounds"].size(), bounds_table().size());
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"depth", "--k", "banana"}).code, 2);
    const auto bad = file("bad.csv", "x,y\n1,2\n3\n");
    const auto parse = run({"depth", "--input", bad, "--flat", "0,0;1,0"});
    EXPECT_EQ(parse.code, 2);
    EXPECT_NE(parse.err.find("line 3"), std::string::npos);
    EXPECT_EQ(run({"depth", "--input", cube(), "--flat", "0,0;1,0"}).code, 3);
    EXPECT_EQ(run({"catline", "--input", cube()}).code, 3);
    EXPECT_EQ(run({"tverberg2d", "--input", planar(), "--k", "2"}).code, 3);
    EXPECT_EQ(run({"depth", "--input", (dir / "missing.csv").string(), "--flat", "0,0;1,0"}).code, 1);
    EXPECT_EQ(cli::exit_code(ErrorKind::verification), 4);
    EXPECT_EQ(cli::exit_code(ErrorKind::parse), 2);
    EXPECT_EQ(cli::exit_code(ErrorKind::unsupported), 3);
}

TEST_F(CliTest, ReportsAreReproducible) {
    const auto path = planar();
    for (std::vector<std::string> args :
         {std::vector<std::string>{"catline", "--input", path}, {"deepest-line2d", "--input", path},
          {"sixsector", "--input", path}, {"tverberg2d", "--input", path}, {"approx-deepest", "--input", path, "--delta", "1/2"}}) {
        const auto a = run(args), b = run(args);
        ASSERT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(strip_timing(a.report()).dump(), strip_timing(b.report()).dump()) << args[0];
    }
}

TEST_F(CliTest, SeedComesFromEnvironment) {
    const auto path = file("space.csv", "x,y,z\n0,0,1\n1,2,0\n2,1,3\n3,0,2\n4,3,1\n5,1,0\n6,2,2\n7,0,3\n");
    ::setenv("REGDEPTH_SEED", "42", 1);
    const auto env = run({"heuristic3d", "--input", path, "--budget", "50"});
    ::unsetenv("REGDEPTH_SEED");
    ASSERT_EQ(env.code, 0) << env.err;
    EXPECT_EQ(env.report()["parameters"]["seed"], 42);
    EXPECT_EQ(run({"heuristic3d", "--input", path, "--budget", "50"}).report()["parameters"]["seed"], 1);
    EXPECT_EQ(run({"heuristic3d", "--input", path, "--budget", "50", "--seed", "5"}).report()["parameters"]["seed"], 5);
}

TEST_F(CliTest, EveryCommandRuns) {
    const auto p2 = planar();
    const auto p3 = file("space.csv", "x,y,z\n0,0,1\n1,2,0\n2,1,3\n3,0,2\n4,3,1\n5,1,0\n6,2,2\n7,0,3\n8,3,3\n9,1,1\n10,2,0\n11,0,0\n");
    const auto a = file("a.csv", "x,y\n0,0\n0,2\n1,1\n"), b = file("b.csv", "x,y\n5,1\n5,3\n6,0\n");
    const auto s1 = file("s1.csv", "x,y,z\n1,0,0\n-1,0,0\n"), s2 = file("s2.csv", "x,y,z\n0,1,0\n0,-1,0\n"),
               s3 = file("s3.csv", "x,y,z\n0,0,1\n0,0,-1\n");
    const std::vector<std::vector<std::string>> cases{
        {"depth", "--input", p2, "--flat", "0,2;1,0"},
        {"tukey", "--input", p2, "--flat", "5,2"},
        {"crossing-distance", "--input", p2, "--flat", "0,2;1,0", "--flat", "vertical"},
        {"crossing-distance", "--input", p2, "--flat", "0,2;1,0", "--flat", "0,0;1,1"},
        {"catline", "--input", p2},
        {"centerpoint", "--input", p3},
        {"hamsandwich2d", "--input", a, "--input", b},
        {"hamsandwich3d", "--input", s1, "--input", s2, "--input", s3},
        {"sixsector", "--input", p2},
        {"deep-line3d", "--input", p3},
        {"deep-line3d", "--input", p3, "--strategy", "three-piece"},
        {"deep-plane3d", "--input", p3},
        {"deepest-line2d", "--input", p2},
        {"heuristic3d", "--input", p3, "--k", "2", "--budget", "40"},
        {"approx-deepest", "--input", p2},
        {"tverberg2d", "--input", p2},
        {"tverberg2d", "--input", p2, "--k", "1"},
        {"verify-tverberg", "--input", p2, "--flat", "0,2;1,0", "--parts", "0,1,2;3,4,5"},
        {"generate", "--kind", "circle-equispaced", "--n", "12", "--format", "json"},
        {"bounds"},
    };
    for (const auto& args : cases) {
        const auto r = run(args);
        EXPECT_EQ(r.code, 0) << args[0] << ": " << r.err;
        if (r.code == 0) {
            EXPECT_NO_THROW(r.report()) << args[0];
        }
    }
    const auto hs = run({"hamsandwich2d", "--input", a, "--input", b}).report();
    EXPECT_TRUE(hs["result"]["bisects"].get<bool>());
    const auto tv = run({"tverberg2d", "--input", p2}).report();
    EXPECT_EQ(tv["result"]["parts"]["parts"].size(), 4u);
    EXPECT_GE(tv["result"]["tukey_depth"].get<int>(), 4);
}

TEST_F(CliTest, GenerateEmitsCsv) {
    const auto r = run({"generate", "--kind", "r31-lower-bound", "--n", "20", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ds = parse_csv(r.out);
    EXPECT_EQ(ds.dim, 3);
    EXPECT_EQ(ds.points.size(), 20u);
    EXPECT_EQ(run({"generate", "--kind", "spiral", "--n", "5"}).code, 2);
}

TEST_F(CliTest, SvgOutput) {
    const auto out = (dir / "fig.svg").string();
    const auto r = run({"catline", "--input", planar(), "--format", "svg", "--output", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    const std::string svg = read_file(out);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("class=\"flat\""), std::string::npos);
    EXPECT_NE(svg.find("class=\"wedge\""), std::string::npos);

    const auto empty = run({"render"});
    ASSERT_EQ(empty.code, 0) << empty.err;
    EXPECT_NE(empty.out.find("class=\"axis\""), std::string::npos);

    const auto sectors = run({"sixsector", "--input", planar(), "--format", "svg"});
    EXPECT_NE(sectors.out.find("class=\"sector-line\""), std::string::npos);
}
