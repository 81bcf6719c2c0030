#pragma once

#include <string>
#include <vector>

#include "magnus/mat2.hpp"

namespace magnus {

enum class SegmentKind { Constant, Rotating };

// Density on [0, length]. Constant: matrix. Rotating:
// R(f t + phase) frame R(-(f t + phase)) + drift_id Id + drift_i I~.
struct Segment {
    SegmentKind kind = SegmentKind::Constant;
    double length = 0.0;
    Mat2 matrix;
    Mat2 frame;
    double frequency = 0.0;
    double phase = 0.0;
    double drift_id = 0.0;
    double drift_i = 0.0;

    static Segment constant(const Mat2& m, double length);
    static Segment rotating(const Mat2& frame, double frequency, double phase, double length, double drift_id = 0.0,
                            double drift_i = 0.0);

    Mat2 density(double local) const;
    double density_norm() const;
    double density_trace() const;
    // The density with the rotation stopped: frame + drift.
    Mat2 generator() const;
};

struct MeasureSpec {
    std::vector<Segment> segments;

    double length() const;
    MeasureSpec scaled(double t) const;
    MeasureSpec then(const MeasureSpec& later) const;
};

double total_variation(const MeasureSpec& phi);
// Integral of the trace of the density.
double total_trace(const MeasureSpec& phi);

// Left-ordered exponential: the solution of A' = phi A, A(0) = Id; later segments act on the left.
Mat2 lexp(const MeasureSpec& phi);
Mat2 lexp(const Segment& seg);
// Product of midpoint exponentials, `steps` per segment.
Mat2 lexp_numeric(const MeasureSpec& phi, int steps);

// Prefix on [0, x] of the parameter interval.
MeasureSpec restrict(const MeasureSpec& phi, double x);
// Part on [x1, x2].
MeasureSpec slice(const MeasureSpec& phi, double x1, double x2);
// Time reversal: reversed segment order, each segment run backwards.
MeasureSpec reverse(const MeasureSpec& phi);

MeasureSpec measure_from_json(const std::string& text);
std::string measure_to_json(const MeasureSpec& phi);

namespace gallery {

// Rotating K~ frame at unit speed, [0, p]; lexp = W(p, p).
MeasureSpec critical(double p);
// Rotating K~ frame at speed s (|s| <= 1) on [0, p]; lexp = W(p, p s).
MeasureSpec development(double p, double s);
// (1-h) I~ + h critical density on [0, p]; lexp = E(p, p h).
MeasureSpec elliptic(double h, double p);
// alpha J~ then beta I~ as unit-norm constant segments.
MeasureSpec skew_loxodromic(double alpha, double beta);
// alpha P~ then beta I~ with P~ = [[0,-1],[0,0]].
MeasureSpec skew_elliptic(double alpha, double beta);

struct NamedMeasure {
    std::string name;
    MeasureSpec measure;
};
// Fixed sample of measures with total variation below pi.
std::vector<NamedMeasure> subcritical();

}  // namespace gallery

}  // namespace magnus
