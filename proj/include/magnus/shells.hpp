#pragma once

#include <functional>
#include <string>
#include <vector>

#include "magnus/mat2.hpp"

namespace magnus {

struct Disk {
    Complex center;
    double radius = 0.0;
    // Sheet index on the universal cover of C \ {0}; 0 for ordinary disks.
    int lift_winding = 0;
};

// The two boundary circles of CR(A) for real A; they are mirror images under conjugation.
struct ConformalRangeReal {
    Disk circle_plus;
    Disk circle_minus;
};

Disk pd(const Mat2& m);
Disk cd(const Mat2& m);
ConformalRangeReal cr_real(const Mat2& m);
bool disk_contains(const Disk& outer, const Disk& inner);

// Distance from z to the circle boundary of the disk.
double distance_to_circle(const Disk& disk, Complex z);

using ScalarFn = std::function<double(double)>;

// Envelope of the circles |w - lambda|^2 = N(lambda), where N(lambda) is the squared
// (co)norm of A - lambda Id: (lambda - N'/2) + i sqrt(N - (N'/2)^2).
Complex envelope_point(const ScalarFn& n, const ScalarFn& dn, double lambda);

enum class NormBranch { Norm, Conorm };

// Squared norm (or co-norm) of A - lambda Id and its derivative, for real and complex A.
struct ShiftedNormSquare {
    ScalarFn value;
    ScalarFn derivative;
    // Envelope point evaluated without the N - (N'/2)^2 cancellation; empty means use envelope_point.
    std::function<Complex(double)> point;
};
ShiftedNormSquare shifted_norm_square(const Mat2& m, NormBranch branch);
ShiftedNormSquare shifted_norm_square(const CMat2& m, NormBranch branch);

struct EnvelopeSample {
    double lambda = 0.0;
    Complex point;
    std::string branch;  // "norm", "conorm" or "hseg"
};

// Samples both envelope branches over lambda in R (tangent parametrization), and bridges
// jumps and the branch joins at lambda = +-inf with hyperbolic segments.
std::vector<EnvelopeSample> envelope_polyline(const ShiftedNormSquare& norm_branch,
                                              const ShiftedNormSquare& conorm_branch, double center,
                                              double scale, int samples);

// Points of the hyperbolic geodesic in the upper half plane from z1 to z2 (endpoints excluded).
std::vector<Complex> h_segment(Complex z1, Complex z2, int points);

// Upper half plane to unit disk: (2u1/(1+|u|^2), -(1-|u|^2)/(1+|u|^2)).
Complex ckb_map(Complex u);

}  // namespace magnus
