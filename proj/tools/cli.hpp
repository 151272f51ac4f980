#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace regdepth::cli {

using report::json;

enum Exit { ok = 0, other = 1, parse_error = 2, unsupported = 3, verification = 4 };

inline int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::parse: return parse_error;
    case ErrorKind::unsupported: return unsupported;
    case ErrorKind::verification: return verification;
    default: return other;
    }
}

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{
        "depth",         "tukey",          "crossing-distance", "catline",    "centerpoint",   "hamsandwich2d",
        "hamsandwich3d", "sixsector",      "deep-line3d",       "deep-plane3d", "deepest-line2d", "heuristic3d",
        "approx-deepest", "tverberg2d",    "verify-tverberg",   "generate",   "bounds",        "render"};
    return names;
}

struct Options {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::string> flats;
    std::optional<int> k, d;
    std::optional<std::size_t> n;
    std::string delta = "1/4";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::string strategy;
    std::string format = "json";
    std::string output;
    std::string kind = "uniform-box";
    std::string parts;
};

/// Seed from --seed, else REGDEPTH_SEED, else 1.
inline std::uint64_t seed_of(const Options& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("REGDEPTH_SEED")) {
        const Scalar v = parse_scalar(env);
        require(v.get_den() == 1 && v >= 0, ErrorKind::parse, "REGDEPTH_SEED must be a nonnegative integer");
        return v.get_num().get_ui();
    }
    return 1;
}

struct Input {
    std::string path, digest;
    Dataset data;
};

inline Input load(const std::string& path) {
    Input in;
    in.path = path;
    const std::string text = read_file(path);
    in.digest = fnv1a_hex(text);
    in.data = parse_csv(text);
    return in;
}

class Runner {
public:
    Runner(Options o, std::ostream& out) : o_(std::move(o)), out_(out) {}

    int run() {
        const auto start = std::chrono::steady_clock::now();
        report_ = {{"schema", 1}, {"command", o_.command}};
        for (const auto& path : o_.inputs) inputs_.push_back(load(path));
        json in = json::array();
        for (const auto& i : inputs_)
            in.push_back({{"path", i.path}, {"digest", i.digest}, {"n", i.data.points.size()}, {"d", i.data.dim}});
        report_["inputs"] = in;
        dispatch();
        if (!svg_.empty() || o_.format == "svg") return emit(svg_.empty() ? render_svg(first().points) : svg_);
        if (!raw_.empty()) return emit(raw_);
        report_["parameters"] = params_;
        report_["result"] = result_;
        report_["timing_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return emit(report_.dump(2) + "\n");
    }

private:
    Options o_;
    std::ostream& out_;
    std::vector<Input> inputs_;
    json report_, params_ = json::object(), result_;
    std::string svg_, raw_;

    int emit(const std::string& text) {
        if (o_.output.empty()) {
            out_ << text;
        } else {
            std::ofstream f(o_.output, std::ios::binary);
            require(f.good(), ErrorKind::invalid, "cannot write '" + o_.output + "'");
            f << text;
        }
        return ok;
    }

    const Dataset& first() {
        require(!inputs_.empty(), ErrorKind::invalid, o_.command + " needs --input");
        return inputs_.front().data;
    }
    const PointSet& points() { return first().points; }
    int dim() { return first().dim; }

    AffineFlat flat_arg(std::size_t i = 0) {
        require(o_.flats.size() > i, ErrorKind::invalid, o_.command + " needs --flat");
        auto f = parse_flat(o_.flats[i]);
        require(f.dim() == dim(), ErrorKind::unsupported, "flat and dataset dimensions differ");
        return f;
    }

    int k_or(int fallback) {
        if (o_.k) return *o_.k;
        if (!inputs_.empty() && first().k) return *first().k;
        return fallback;
    }

    bool wants_svg() const { return o_.format == "svg"; }

    void figure(SvgOverlay ov) {
        if (!wants_svg()) return;
        ov.title = o_.command;
        svg_ = render_svg(points(), ov);
    }

    static std::vector<int> part_labels(std::size_t n, const PartitionFamily& fam) {
        std::vector<int> label(n, -1);
        for (std::size_t p = 0; p < fam.parts.size(); ++p)
            for (auto i : fam.parts[p]) label[i] = static_cast<int>(p);
        return label;
    }

    void dispatch() {
        const std::string& c = o_.command;
        if (c == "depth") return depth();
        if (c == "tukey") return tukey();
        if (c == "crossing-distance") return crossing();
        if (c == "catline") return constructed(catline(points()));
        if (c == "centerpoint") return center();
        if (c == "hamsandwich2d") return ham2();
        if (c == "hamsandwich3d") return ham3();
        if (c == "sixsector") return sectors();
        if (c == "deep-line3d") return deep_line();
        if (c == "deep-plane3d") return deep_plane();
        if (c == "deepest-line2d") return deepest2();
        if (c == "heuristic3d") return heuristic();
        if (c == "approx-deepest") return approx();
        if (c == "tverberg2d") return tverberg();
        if (c == "verify-tverberg") return verify_tverberg();
        if (c == "generate") return gen();
        if (c == "bounds") return bounds();
        if (c == "render") return render();
        fail(ErrorKind::parse, "unknown command '" + c + "'");
    }

    void depth() {
        const AffineFlat f = flat_arg();
        const int k = k_or(f.k());
        require(k == f.k(), ErrorKind::unsupported, "--k " + std::to_string(k) + " does not match the flat");
        params_["k"] = k;
        params_["flat"] = report::flat(f);
        const auto cert = regression_depth(f, k, points());
        result_ = {{"certificate", report::certificate(cert)}};
        SvgOverlay ov;
        ov.flats.push_back(f);
        if (cert.witness) ov.wedges.push_back(*cert.witness);
        figure(std::move(ov));
    }

    void tukey() {
        const AffineFlat f = flat_arg();
        require(f.k() == 0, ErrorKind::unsupported, "tukey needs a point");
        params_["point"] = report::vec(f.anchor);
        const auto cert = tukey_depth(f.anchor, points());
        result_ = {{"certificate", report::certificate(cert)}};
        SvgOverlay ov;
        ov.flats.push_back(f);
        if (cert.witness) ov.wedges.push_back(*cert.witness);
        figure(std::move(ov));
    }

    void crossing() {
        require(o_.flats.size() == 2, ErrorKind::invalid, "crossing-distance needs two --flat values");
        std::vector<Flat> flats;
        std::vector<AffineFlat> affine;
        json p = json::array();
        for (std::size_t i = 0; i < 2; ++i) {
            if (o_.flats[i] == "vertical") {
                const std::size_t other = 1 - i;
                require(o_.flats[other] != "vertical", ErrorKind::unsupported, "both flats at vertical infinity");
                const AffineFlat g = flat_arg(other);
                flats.push_back(VerticalInfinity{dim(), dim() - g.k() - 1});
                p.push_back("vertical");
            } else {
                affine.push_back(flat_arg(i));
                flats.push_back(affine.back());
                p.push_back(report::flat(affine.back()));
            }
        }
        params_["flats"] = p;
        const auto cert = crossing_distance(flats[0], flats[1], points());
        result_ = {{"certificate", report::certificate(cert)}};
        SvgOverlay ov;
        ov.flats = affine;
        if (cert.witness) ov.wedges.push_back(*cert.witness);
        figure(std::move(ov));
    }

    void constructed(const Construction& con) {
        result_ = report::construction(con);
        if (dim() == 2 && wants_svg()) {
            SvgOverlay ov;
            ov.flats.push_back(con.flat);
            if (con.certificate.witness) ov.wedges.push_back(*con.certificate.witness);
            ov.part = part_labels(points().size(), con.family);
            figure(std::move(ov));
        } else if (wants_svg()) {
            SvgOverlay ov;
            ov.part = part_labels(points().size(), con.family);
            figure(std::move(ov));
        }
    }

    void center() {
        const Point c = centerpoint(points());
        const auto cert = tukey_depth(c, points());
        const std::size_t n = points().size(), d = static_cast<std::size_t>(dim());
        result_ = {{"point", report::vec(c)}, {"guarantee", (n + d) / (d + 1)}, {"certificate", report::certificate(cert)}};
        SvgOverlay ov;
        ov.flats.push_back(point_flat(c));
        figure(std::move(ov));
    }

    PointSet input_points(std::size_t i) {
        require(inputs_.size() > i, ErrorKind::invalid, o_.command + " needs " + std::to_string(i + 1) + " --input files");
        return inputs_[i].data.points;
    }

    void ham2() {
        const PointSet a = input_points(0), b = input_points(1);
        const Hyperplane h = ham_sandwich_2d(a, b);
        result_ = {{"hyperplane", report::hyperplane(h)},
                   {"max_open_side", {max_open_side(h, a), max_open_side(h, b)}},
                   {"bisects", bisects_all(h, {&a, &b})}};
        if (wants_svg()) {
            PointSet all = a;
            all.insert(all.end(), b.begin(), b.end());
            SvgOverlay ov;
            ov.flats.push_back(hyperplane_flat(h));
            ov.part.assign(a.size(), 0);
            ov.part.resize(all.size(), 1);
            ov.title = o_.command;
            svg_ = render_svg(all, ov);
        }
    }

    void ham3() {
        const PointSet a = input_points(0), b = input_points(1), c = input_points(2);
        HamSandwichOptions opt;
        opt.seed = seed_of(o_);
        if (o_.budget) opt.budget = *o_.budget;
        params_ = {{"seed", opt.seed}, {"budget", opt.budget}};
        const Hyperplane h = ham_sandwich_3d(a, b, c, opt);
        result_ = {{"hyperplane", report::hyperplane(h)},
                   {"max_open_side", {max_open_side(h, a), max_open_side(h, b), max_open_side(h, c)}},
                   {"bisects", bisects_all(h, {&a, &b, &c})}};
    }

    void sectors() {
        const std::size_t budget = o_.budget.value_or(1000000);
        params_["budget"] = budget;
        const auto w = six_sector_partition(points(), budget);
        std::vector<PointSet> triple;
        for (const auto& t : w.triple) triple.push_back(gather(points(), t));
        const auto transversal = is_transversal_triple(triple[0], triple[1], triple[2]);
        result_ = report::six_sector(w);
        result_["alternating_triple_transversal"] = transversal.transversal;
        SvgOverlay ov;
        ov.sectors = w;
        ov.part = w.sector;
        figure(std::move(ov));
    }

    void deep_line() {
        const std::string s = o_.strategy.empty() ? "median" : o_.strategy;
        require(s == "median" || s == "three-piece", ErrorKind::parse, "--strategy must be median or three-piece");
        params_["strategy"] = s;
        constructed(construct_deep_line_3d(points(), s == "median" ? DeepLineStrategy::median : DeepLineStrategy::three_piece));
    }

    void deep_plane() {
        const std::uint64_t seed = seed_of(o_);
        const std::size_t budget = o_.budget.value_or(1000000);
        params_ = {{"seed", seed}, {"budget", budget}};
        constructed(construct_deep_plane_3d(points(), seed, budget));
    }

    void deepest_result(const DeepestResult& r) {
        result_ = {{"flat", report::flat(r.flat)}, {"certificate", report::certificate(r.certificate)}, {"evaluated", r.evaluated}};
        SvgOverlay ov;
        ov.flats.push_back(r.flat);
        if (r.certificate.witness) ov.wedges.push_back(*r.certificate.witness);
        figure(std::move(ov));
    }

    void deepest2() { deepest_result(deepest_line_2d(points())); }

    void heuristic() {
        const int k = k_or(1);
        const std::uint64_t seed = seed_of(o_);
        const std::size_t budget = o_.budget.value_or(100000);
        params_ = {{"k", k}, {"seed", seed}, {"budget", budget}};
        deepest_result(deepest_flat_heuristic_3d(points(), k, budget, seed));
    }

    void approx() {
        const int k = k_or(dim() - 1);
        const Scalar delta = parse_scalar(o_.delta);
        auto params = make_approx_params(points().size(), dim(), k, delta, seed_of(o_));
        if (o_.budget) params.budget = *o_.budget;
        params_ = {{"k", k},
                   {"delta", report::scalar(delta)},
                   {"epsilon", report::scalar(params.epsilon)},
                   {"sample_size", params.sample_size},
                   {"seed", params.seed},
                   {"budget", params.budget}};
        const auto r = approx_deepest(points(), k, params);
        result_ = {{"flat", report::flat(r.flat)},
                   {"certificate", report::certificate(r.certificate)},
                   {"sample_depth", r.sample_depth},
                   {"sample_size", r.sample_size}};
        SvgOverlay ov;
        ov.flats.push_back(r.flat);
        figure(std::move(ov));
    }

    void tverberg() {
        const int k = k_or(0);
        require(k == 0 || k == 1, ErrorKind::unsupported, "tverberg2d supports k = 0 (point) or k = 1 (catline)");
        params_["k"] = k;
        const auto t = k == 0 ? tverberg_partition_2d(points(), o_.budget.value_or(2000000)) : catline_tverberg(points());
        result_ = report::tverberg(t);
        if (k == 0) result_["tukey_depth"] = tukey_depth(t.flat.anchor, points()).depth;
        SvgOverlay ov;
        ov.flats.push_back(t.flat);
        ov.part = part_labels(points().size(), t.parts);
        figure(std::move(ov));
    }

    void verify_tverberg() {
        const AffineFlat f = flat_arg();
        const int k = k_or(f.k());
        require(k == f.k(), ErrorKind::unsupported, "--k does not match the flat");
        require(!o_.parts.empty(), ErrorKind::invalid, "verify-tverberg needs --parts");
        PartitionFamily fam{PartitionKind::tverberg, parse_parts(o_.parts)};
        const auto depths = verify_flat_tverberg(f, k, fam, points());
        bool all = true;
        for (auto d : depths) all = all && d >= 1;
        params_ = {{"k", k}, {"flat", report::flat(f)}, {"parts", fam.parts}};
        result_ = {{"per_part_depth", depths}, {"all_nonzero", all}};
        SvgOverlay ov;
        ov.flats.push_back(f);
        ov.part = part_labels(points().size(), fam);
        figure(std::move(ov));
    }

    void gen() {
        GeneratorSpec spec;
        spec.kind = parse_generator_kind(o_.kind);
        require(o_.n.has_value(), ErrorKind::invalid, "generate needs --n");
        spec.n = *o_.n;
        spec.d = o_.d.value_or(spec.kind == GeneratorKind::r31_lower_bound ? 3 : 2);
        spec.seed = seed_of(o_);
        if (o_.k) spec.planted_k = *o_.k;
        const auto data = generate(spec);
        if (o_.format == "json") {
            params_ = {{"kind", o_.kind}, {"n", spec.n}, {"d", spec.d}, {"seed", spec.seed}};
            result_ = {{"points", report::points(data.points)},
                       {"distinct_x", data.distinct_x},
                       {"general_position", data.general_position},
                       {"exact_on_circle", data.exact_on_circle}};
            return;
        }
        raw_ = write_csv(data.points, spec.d);
    }

    void bounds() {
        json rows = json::array();
        if (o_.d || o_.k) {
            require(o_.d && o_.k, ErrorKind::invalid, "bounds needs both --d and --k or neither");
            params_ = {{"d", *o_.d}, {"k", *o_.k}};
            for (const auto& e : bounds_for(*o_.d, *o_.k)) rows.push_back(report::bound(e));
        } else {
            for (const auto& e : bounds_table()) rows.push_back(report::bound(e));
        }
        result_ = {{"bounds", rows}};
    }

    void render() {
        SvgOverlay ov;
        for (std::size_t i = 0; i < o_.flats.size(); ++i) ov.flats.push_back(flat_arg(i));
        ov.title = inputs_.empty() ? "" : inputs_.front().path;
        svg_ = render_svg(inputs_.empty() ? PointSet{} : points(), ov);
    }
};

/// Runs one command; returns the process exit code.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact regression depth toolkit"};
    Options o;
    app.add_option("command", o.command, "one of: depth, tukey, crossing-distance, catline, centerpoint, hamsandwich2d, "
                                         "hamsandwich3d, sixsector, deep-line3d, deep-plane3d, deepest-line2d, "
                                         "heuristic3d, approx-deepest, tverberg2d, verify-tverberg, generate, bounds, render")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("--input", o.inputs, "CSV dataset (repeat for ham sandwich sets)");
    app.add_option("--flat", o.flats, "flat 'anchor;span[;span]', or 'vertical' for crossing-distance");
    app.add_option("--k", o.k, "flat dimension");
    app.add_option("--d", o.d, "dimension (bounds, generate)");
    app.add_option("--n", o.n, "number of points (generate)");
    app.add_option("--delta", o.delta, "approximation parameter");
    app.add_option("--seed", o.seed, "seed (default: REGDEPTH_SEED or 1)");
    app.add_option("--budget", o.budget, "search budget");
    app.add_option("--strategy", o.strategy, "deep-line3d strategy: median or three-piece");
    app.add_option("--format", o.format, "json, svg, or csv (generate)")->check(CLI::IsMember({"json", "svg", "csv"}));
    app.add_option("--output", o.output, "write to a file instead of stdout");
    app.add_option("--kind", o.kind, "generator kind");
    app.add_option("--parts", o.parts, "index lists '0,1,2;3,4,5'");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return parse_error;
    }
    if (o.command == "generate" && !app.get_option("--format")->count()) o.format = "csv";
    try {
        return Runner(o, out).run();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return other;
    }
}

} // namespace regdepth::cli
