#pragma once

#include <json.hpp>

#include <regdepth/regdepth.hpp>

namespace regdepth::report {

using json = nlohmann::json;

inline json scalar(const Scalar& v) { return {{"exact", to_string(v)}, {"decimal", to_decimal(v)}}; }

inline json vec(const Vec& v) {
    json a = json::array();
    for (int i = 0; i < v.dim; ++i) a.push_back(scalar(v[i]));
    return a;
}

inline json points(const PointSet& xs) {
    json a = json::array();
    for (const auto& p : xs) a.push_back(vec(p));
    return a;
}

inline json flat(const AffineFlat& f) {
    json span = json::array();
    for (const auto& v : f.span) span.push_back(vec(v));
    return {{"k", f.k()}, {"anchor", vec(f.anchor)}, {"span", span}, {"text", flat_text(f)}};
}

inline json hyperplane(const Hyperplane& h) {
    if (h.at_infinity) return {{"at_infinity", true}, {"text", "infinity"}};
    return {{"normal", vec(h.normal)}, {"offset", scalar(h.offset)}, {"text", hyperplane_text(h)}};
}

inline json certificate(const DepthCertificate& c) {
    json out = {{"depth", c.depth}, {"vertical_nonfit", c.vertical_nonfit}, {"contained", c.contained}};
    if (c.witness)
        out["witness"] = {{"h1", hyperplane(c.witness->h1)},
                          {"h2", hyperplane(c.witness->h2)},
                          {"pairing", c.witness->pairing == Pairing::plus ? "plus" : "minus"}};
    else
        out["witness"] = nullptr;
    return out;
}

inline json family(const PartitionFamily& f) { return {{"kind", to_string(f.kind)}, {"parts", f.parts}}; }

inline json construction(const Construction& c) {
    return {{"flat", flat(c.flat)}, {"guarantee", c.guarantee}, {"certificate", certificate(c.certificate)},
            {"family", family(c.family)}};
}

inline json six_sector(const SixSectorWitness& w) {
    json lines = json::array(), rays = json::array(), triple = json::array();
    for (const auto& h : w.lines) lines.push_back(hyperplane(h));
    for (const auto& r : w.rays) rays.push_back(vec(r));
    for (const auto& t : w.triple) triple.push_back(t);
    return {{"center", vec(w.center)}, {"lines", lines}, {"rays", rays}, {"sector", w.sector}, {"triple", triple}};
}

inline json tverberg(const TverbergResult& t) {
    return {{"flat", flat(t.flat)}, {"k", t.k}, {"parts", family(t.parts)}, {"per_part_depth", t.per_part_depth}};
}

inline json bound(const BoundEntry& e) {
    json out = {{"quantity", e.quantity}, {"d", e.d},           {"k", e.k},
                {"relation", e.relation}, {"expression", e.expression}, {"status", to_string(e.status)},
                {"statement", e.statement()}};
    out["value"] = e.value ? scalar(*e.value) : json(nullptr);
    if (e.enclosure) out["enclosure"] = {{"lo", scalar(e.enclosure->lo)}, {"hi", scalar(e.enclosure->hi)}};
    return out;
}

} // namespace regdepth::report
