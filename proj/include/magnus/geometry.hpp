#pragma once

#include <string>
#include <vector>

#include "magnus/mat2.hpp"
#include "magnus/measures.hpp"
#include "magnus/shells.hpp"

namespace magnus {

// Disk tangent to the boundary of exp D(0, p) at exp(p e^(it)) and exp(-p e^(-it)).
// Requires p in (0, pi) and t in [-pi/2, pi/2].
Disk maximal_disk(double p, double t);

// -sin(beta) J~ + cos(beta) K~ = R(beta) K~
Mat2 frame_from_angle(double beta);
double frame_angle(const Mat2& frame);

struct NormalForm {
    double p1 = 0.0;
    double p2 = 0.0;
    double t = 0.0;
    Mat2 F = Mat2::k_tilde();
    // Set when t and pi - t give the same matrix (p1 = 0); t is then the cos t >= 0 representative.
    bool mirror = false;
    // Set when the hyperbolic part is too small to determine F, which then defaults to K~.
    bool quasicomplex = false;

    Complex ellip() const;
    double hyper() const { return p2; }
};

// e^(p1 c)[R(p s)(cosh(p2 c) Id - sigma s I~) + sigma F], sigma = sinh(p2 c)/c, p = p1 + p2.
Mat2 nw_compose(const NormalForm& nf);
// Unit-speed rotating segment of length p1 + p2 whose left exponential is nw_compose(nf).
MeasureSpec nw_measure(const NormalForm& nf);

enum class MagnusKind { Identity, Quasicomplex, Elliptic, Parabolic, Hyperbolic, Loxodromic };
std::string kind_name(MagnusKind kind);

struct MagnusClass {
    MagnusKind kind = MagnusKind::Identity;
    double mp = 0.0;
    // Arguments of log z at the points z of CD(A) where |log z| = mp; two for hyperbolic mirror pairs.
    std::vector<double> directions;
};

// Log z with the argument continued from the center direction of the disk.
Complex lifted_log(const Disk& disk, Complex z);

struct BoundarySup {
    double value = 0.0;
    std::vector<Complex> maximizers;  // lifted logs of the maximizing points
};
// sup |log z| over the disk, attained on its boundary circle. Requires 0 outside the disk.
BoundarySup boundary_sup(const Disk& disk);

MagnusClass classify(const Mat2& a);
double mp(const Mat2& a);
NormalForm nw_decompose(const Mat2& a);

// |MP^2 - (2a - a^2/3 + (3/2) b^2/a)| for CD(W(p, p sin t)) = D((1 + a) + ib, r).
double mp_small_asymptotic_check(double p, double t);

struct AdditivityGaps {
    double mp_gap = 0.0;
    double ellip_gap = 0.0;
};
// Splits nw_measure(nf) at arc length x and compares MP and ellip of the parts with the whole.
AdditivityGaps additivity_check(const NormalForm& nf, double x);

// Root of tan z = z in (pi, 3pi/2).
double tan_fixed_point();
// diag(-sqrt(1 + z^2) - z, -sqrt(1 + z^2) + z) at z = tan_fixed_point().
Mat2 tan_fixed_point_matrix();

}  // namespace magnus
