#pragma once

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "depth.hpp"
#include "sixsector.hpp"

namespace regdepth {

struct SvgOverlay {
    std::vector<AffineFlat> flats;
    std::vector<DoubleWedge> wedges;
    std::optional<SixSectorWitness> sectors;
    /// Part index per point (-1 for none); empty leaves every point plain.
    std::vector<int> part;
    std::string title;
};

namespace detail {

struct Pt {
    double x, y;
};

/// a x + b y >= c
struct HalfPlane {
    double a, b, c;
};

inline std::vector<Pt> clip_polygon(const std::vector<Pt>& poly, const HalfPlane& h) {
    std::vector<Pt> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Pt p = poly[i], q = poly[(i + 1) % poly.size()];
        const double fp = h.a * p.x + h.b * p.y - h.c, fq = h.a * q.x + h.b * q.y - h.c;
        if (fp >= 0) out.push_back(p);
        if ((fp >= 0) != (fq >= 0)) {
            const double t = fp / (fp - fq);
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    return out;
}

inline HalfPlane half_of(const Hyperplane& h, int side) {
    const double a = h.normal[0].get_d(), b = h.normal[1].get_d(), c = h.offset.get_d();
    return side > 0 ? HalfPlane{a, b, c} : HalfPlane{-a, -b, -c};
}

inline const char* palette(int i) {
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                   "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors[static_cast<std::size_t>(i) % 10];
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace detail

/// Planar figure of a dataset with overlays on an 800x800 canvas. Points in
/// space are drawn by their (x, y) projection.
inline std::string render_svg(const PointSet& xs, const SvgOverlay& ov = {}) {
    using detail::Pt;
    constexpr double size = 800, margin = 40;
    const bool projected = !xs.empty() && xs[0].dim == 3;

    std::vector<Pt> pts;
    for (const auto& p : xs) pts.push_back({p[0].get_d(), p[1].get_d()});
    std::vector<Pt> extent = pts;
    for (const auto& f : ov.flats) extent.push_back({f.anchor[0].get_d(), f.anchor[1].get_d()});
    if (ov.sectors) extent.push_back({ov.sectors->center[0].get_d(), ov.sectors->center[1].get_d()});
    double lx = -1, hx = 1, ly = -1, hy = 1;
    if (!extent.empty()) {
        lx = hx = extent[0].x;
        ly = hy = extent[0].y;
        for (const auto& p : extent) {
            lx = std::min(lx, p.x);
            hx = std::max(hx, p.x);
            ly = std::min(ly, p.y);
            hy = std::max(hy, p.y);
        }
    }
    const double span = std::max({hx - lx, hy - ly, 1e-9});
    const double scale = (size - 2 * margin) / span;
    const double cx = (lx + hx) / 2, cy = (ly + hy) / 2;
    auto sx = [&](double x) { return size / 2 + (x - cx) * scale; };
    auto sy = [&](double y) { return size / 2 - (y - cy) * scale; };
    // data-space rectangle covered by the canvas
    const double half = size / 2 / scale;
    const std::vector<Pt> frame{{cx - half, cy - half}, {cx + half, cy - half}, {cx + half, cy + half}, {cx - half, cy + half}};

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
    if (!ov.title.empty() || projected) {
        std::string text = ov.title;
        if (projected) text += (text.empty() ? "" : " ") + std::string("(projection onto x, y)");
        out += "<text x=\"12\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\">" + text + "</text>\n";
    }
    out += "<line class=\"axis\" x1=\"0\" y1=\"" + detail::num(sy(0)) + "\" x2=\"800\" y2=\"" + detail::num(sy(0)) +
           "\" stroke=\"#bbb\"/>\n";
    out += "<line class=\"axis\" x1=\"" + detail::num(sx(0)) + "\" y1=\"0\" x2=\"" + detail::num(sx(0)) +
           "\" y2=\"800\" stroke=\"#bbb\"/>\n";

    auto polygon = [&](const std::vector<Pt>& poly, const std::string& cls, const std::string& fill) {
        if (poly.size() < 3) return;
        out += "<polygon class=\"" + cls + "\" points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i)
            out += (i ? " " : "") + detail::num(sx(poly[i].x)) + "," + detail::num(sy(poly[i].y));
        out += "\" fill=\"" + fill + "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
    };
    auto segment = [&](Pt a, Pt dir, const std::string& cls, const std::string& stroke) {
        // clip the full line a + t dir to the frame
        double lo = -1e300, hi = 1e300;
        const double bounds[2][2] = {{frame[0].x, frame[2].x}, {frame[0].y, frame[2].y}};
        const double origin[2] = {a.x, a.y}, d[2] = {dir.x, dir.y};
        for (int i = 0; i < 2; ++i) {
            if (d[i] == 0) {
                if (origin[i] < bounds[i][0] || origin[i] > bounds[i][1]) return;
                continue;
            }
            double t1 = (bounds[i][0] - origin[i]) / d[i], t2 = (bounds[i][1] - origin[i]) / d[i];
            if (t1 > t2) std::swap(t1, t2);
            lo = std::max(lo, t1);
            hi = std::min(hi, t2);
        }
        if (lo > hi) return;
        out += "<line class=\"" + cls + "\" x1=\"" + detail::num(sx(a.x + lo * dir.x)) + "\" y1=\"" +
               detail::num(sy(a.y + lo * dir.y)) + "\" x2=\"" + detail::num(sx(a.x + hi * dir.x)) + "\" y2=\"" +
               detail::num(sy(a.y + hi * dir.y)) + "\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"/>\n";
    };

    for (const auto& w : ov.wedges) {
        if (w.h1.dim() != 2) continue;
        for (int s : {1, -1}) {
            std::vector<Pt> piece = detail::clip_polygon(frame, detail::half_of(w.h1, s));
            if (!w.h2.at_infinity) piece = detail::clip_polygon(piece, detail::half_of(w.h2, w.pairing == Pairing::plus ? s : -s));
            else if ((s > 0) != (w.pairing == Pairing::plus)) continue;
            polygon(piece, "wedge", "#d62728");
        }
    }
    if (ov.sectors) {
        const auto& sw = *ov.sectors;
        const Pt c{sw.center[0].get_d(), sw.center[1].get_d()};
        for (int i = 0; i < 6; ++i) {
            const Vec &r0 = sw.rays[static_cast<std::size_t>(i)], &r1 = sw.rays[static_cast<std::size_t>((i + 1) % 6)];
            // closed cone between consecutive rays: cross(r0, p - c) >= 0 and cross(p - c, r1) >= 0
            const double ax = r0[0].get_d(), ay = r0[1].get_d(), bx = r1[0].get_d(), by = r1[1].get_d();
            auto piece = detail::clip_polygon(frame, {-ay, ax, -ay * c.x + ax * c.y});
            piece = detail::clip_polygon(piece, {by, -bx, by * c.x - bx * c.y});
            polygon(piece, "sector", detail::palette(i));
        }
        for (int i = 0; i < 3; ++i) {
            const Vec& r = sw.rays[static_cast<std::size_t>(i)];
            segment(c, {r[0].get_d(), r[1].get_d()}, "sector-line", "#333");
        }
    }
    for (const auto& f : ov.flats) {
        const Pt a{f.anchor[0].get_d(), f.anchor[1].get_d()};
        if (f.k() == 1) segment(a, {f.span[0][0].get_d(), f.span[0][1].get_d()}, "flat", "#1f4e9c");
        else if (f.k() == 0)
            out += "<circle class=\"flat\" cx=\"" + detail::num(sx(a.x)) + "\" cy=\"" + detail::num(sy(a.y)) +
                   "\" r=\"6\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n";
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int part = i < ov.part.size() ? ov.part[i] : -1;
        out += "<circle class=\"point\" cx=\"" + detail::num(sx(pts[i].x)) + "\" cy=\"" + detail::num(sy(pts[i].y)) +
               "\" r=\"3\" fill=\"" + (part >= 0 ? detail::palette(part) : "black") + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace regdepth
