#include "magnus/measures.hpp"

#include <cmath>
#include <json.hpp>

#include "magnus/errors.hpp"
#include "magnus/matrix_log.hpp"

namespace magnus {

Segment Segment::constant(const Mat2& m, double length) {
    Segment s;
    s.kind = SegmentKind::Constant;
    s.matrix = m;
    s.length = length;
    return s;
}

Segment Segment::rotating(const Mat2& frame, double frequency, double phase, double length, double drift_id,
                          double drift_i) {
    Segment s;
    s.kind = SegmentKind::Rotating;
    s.frame = frame;
    s.frequency = frequency;
    s.phase = phase;
    s.length = length;
    s.drift_id = drift_id;
    s.drift_i = drift_i;
    return s;
}

Mat2 Segment::generator() const {
    if (kind == SegmentKind::Constant) return matrix;
    return frame + drift_id * Mat2::identity() + drift_i * Mat2::i_tilde();
}

Mat2 Segment::density(double local) const {
    if (kind == SegmentKind::Constant) return matrix;
    const double ang = frequency * local + phase;
    return Mat2::rotation(ang) * frame * Mat2::rotation(-ang) + drift_id * Mat2::identity() +
           drift_i * Mat2::i_tilde();
}

double Segment::density_norm() const {
    // Conjugation by a rotation only turns the (J~, K~) part, so the norm is the generator's.
    return op_norm(generator());
}

double Segment::density_trace() const { return generator().trace(); }

double MeasureSpec::length() const {
    double s = 0.0;
    for (const Segment& seg : segments) s += seg.length;
    return s;
}

MeasureSpec MeasureSpec::scaled(double t) const {
    MeasureSpec out = *this;
    for (Segment& seg : out.segments) {
        seg.matrix = t * seg.matrix;
        seg.frame = t * seg.frame;
        seg.drift_id *= t;
        seg.drift_i *= t;
    }
    return out;
}

MeasureSpec MeasureSpec::then(const MeasureSpec& later) const {
    MeasureSpec out = *this;
    out.segments.insert(out.segments.end(), later.segments.begin(), later.segments.end());
    return out;
}

double total_variation(const MeasureSpec& phi) {
    double s = 0.0;
    for (const Segment& seg : phi.segments) s += seg.length * seg.density_norm();
    return s;
}

double total_trace(const MeasureSpec& phi) {
    double s = 0.0;
    for (const Segment& seg : phi.segments) s += seg.length * seg.density_trace();
    return s;
}

Mat2 lexp(const Segment& seg) {
    const double len = seg.length;
    if (seg.kind == SegmentKind::Constant) return exp2(len * seg.matrix);
    const Mat2 inner = len * (seg.generator() - seg.frequency * Mat2::i_tilde());
    return Mat2::rotation(seg.frequency * len + seg.phase) * exp2(inner) * Mat2::rotation(-seg.phase);
}

Mat2 lexp(const MeasureSpec& phi) {
    Mat2 acc = Mat2::identity();
    for (const Segment& seg : phi.segments) acc = lexp(seg) * acc;
    return acc;
}

Mat2 lexp_numeric(const MeasureSpec& phi, int steps) {
    if (steps < 1) throw OutOfDomain("lexp_numeric: steps must be positive");
    Mat2 acc = Mat2::identity();
    for (const Segment& seg : phi.segments) {
        const double h = seg.length / steps;
        for (int k = 0; k < steps; ++k) acc = exp2(h * seg.density((k + 0.5) * h)) * acc;
    }
    return acc;
}

MeasureSpec slice(const MeasureSpec& phi, double x1, double x2) {
    const double total = phi.length();
    const double slack = 1e-12 * (1.0 + total);
    if (x1 < -slack || x2 > total + slack || x1 > x2 + slack) {
        throw OutOfDomain("restrict: split point outside the measure's interval");
    }
    MeasureSpec out;
    double start = 0.0;
    for (const Segment& seg : phi.segments) {
        const double lo = std::max(start, x1);
        const double hi = std::min(start + seg.length, x2);
        if (hi > lo) {
            Segment piece = seg;
            const double offset = lo - start;
            piece.length = hi - lo;
            if (seg.kind == SegmentKind::Rotating) piece.phase = seg.phase + seg.frequency * offset;
            out.segments.push_back(piece);
        }
        start += seg.length;
    }
    return out;
}

MeasureSpec restrict(const MeasureSpec& phi, double x) { return slice(phi, 0.0, x); }

MeasureSpec reverse(const MeasureSpec& phi) {
    MeasureSpec out;
    for (auto it = phi.segments.rbegin(); it != phi.segments.rend(); ++it) {
        Segment seg = *it;
        if (seg.kind == SegmentKind::Rotating) {
            seg.phase = it->phase + it->frequency * it->length;
            seg.frequency = -it->frequency;
        }
        out.segments.push_back(seg);
    }
    return out;
}

namespace {

using nlohmann::json;

Mat2 matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
        j[1].size() != 2) {
        throw OutOfDomain("measure file: matrices must be [[m11,m12],[m21,m22]]");
    }
    return {j[0][0].get<double>(), j[0][1].get<double>(), j[1][0].get<double>(), j[1][1].get<double>()};
}

json matrix_to_json(const Mat2& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

}  // namespace

MeasureSpec measure_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw OutOfDomain(std::string("measure file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("segments") || !doc["segments"].is_array()) {
        throw OutOfDomain("measure file: expected an object with a 'segments' array");
    }
    MeasureSpec phi;
    try {
        for (const json& s : doc["segments"]) {
            const std::string kind = s.at("kind").get<std::string>();
            const double len = s.at("length").get<double>();
            if (!(len > 0)) throw OutOfDomain("measure file: segment length must be positive");
            if (kind == "constant") {
                phi.segments.push_back(Segment::constant(matrix_from_json(s.at("matrix")), len));
            } else if (kind == "rotating") {
                double cid = 0.0;
                double ci = 0.0;
                if (s.contains("drift")) {
                    const json& dr = s.at("drift");
                    if (!dr.is_array() || dr.size() != 2) throw OutOfDomain("measure file: drift must be [cid, cI]");
                    cid = dr[0].get<double>();
                    ci = dr[1].get<double>();
                }
                phi.segments.push_back(Segment::rotating(matrix_from_json(s.at("frame")),
                                                         s.at("frequency").get<double>(),
                                                         s.value("phase", 0.0), len, cid, ci));
            } else {
                throw OutOfDomain("measure file: unknown segment kind '" + kind + "'");
            }
        }
    } catch (const json::exception& e) {
        throw OutOfDomain(std::string("measure file: ") + e.what());
    }
    return phi;
}

std::string measure_to_json(const MeasureSpec& phi) {
    json segs = json::array();
    for (const Segment& seg : phi.segments) {
        if (seg.kind == SegmentKind::Constant) {
            segs.push_back({{"kind", "constant"}, {"matrix", matrix_to_json(seg.matrix)}, {"length", seg.length}});
        } else {
            segs.push_back({{"kind", "rotating"},
                            {"frame", matrix_to_json(seg.frame)},
                            {"frequency", seg.frequency},
                            {"phase", seg.phase},
                            {"drift", json::array({seg.drift_id, seg.drift_i})},
                            {"length", seg.length}});
        }
    }
    return json{{"segments", segs}}.dump();
}

namespace gallery {

namespace {

double sign_of(double x) { return x < 0 ? -1.0 : 1.0; }

}  // namespace

MeasureSpec critical(double p) { return development(p, 1.0); }

MeasureSpec development(double p, double s) {
    MeasureSpec phi;
    if (p > 0) phi.segments.push_back(Segment::rotating(Mat2::k_tilde(), s, 0.0, p));
    return phi;
}

MeasureSpec elliptic(double h, double p) {
    MeasureSpec phi;
    if (p > 0) phi.segments.push_back(Segment::rotating(h * Mat2::k_tilde(), 1.0, 0.0, p, 0.0, 1.0 - h));
    return phi;
}

MeasureSpec skew_loxodromic(double alpha, double beta) {
    MeasureSpec phi;
    if (alpha != 0) phi.segments.push_back(Segment::constant(sign_of(alpha) * Mat2::j_tilde(), std::abs(alpha)));
    if (beta != 0) phi.segments.push_back(Segment::constant(sign_of(beta) * Mat2::i_tilde(), std::abs(beta)));
    return phi;
}

MeasureSpec skew_elliptic(double alpha, double beta) {
    const Mat2 shear{0.0, -1.0, 0.0, 0.0};
    MeasureSpec phi;
    if (alpha != 0) phi.segments.push_back(Segment::constant(sign_of(alpha) * shear, std::abs(alpha)));
    if (beta != 0) phi.segments.push_back(Segment::constant(sign_of(beta) * Mat2::i_tilde(), std::abs(beta)));
    return phi;
}

std::vector<NamedMeasure> subcritical() {
    MeasureSpec mixed = critical(0.8).then(MeasureSpec{{Segment::constant(Mat2{0.2, -0.5, 0.3, -0.1}, 1.2)}});
    return {
        {"critical[0,1]", critical(1.0)},
        {"critical[0,2]", critical(2.0)},
        {"critical[0,3]", critical(3.0)},
        {"skew-loxodromic(0.5,0.5)", skew_loxodromic(0.5, 0.5)},
        {"skew-loxodromic(1.0,1.5)", skew_loxodromic(1.0, 1.5)},
        {"skew-elliptic(0.7,1.0)", skew_elliptic(0.7, 1.0)},
        {"elliptic(0.5)[0,2]", elliptic(0.5, 2.0)},
        {"development(2,0.3)", development(2.0, 0.3)},
        {"development(2.5,-0.6)", development(2.5, -0.6)},
        {"critical-then-constant", mixed},
    };
}

}  // namespace gallery

}  // namespace magnus
