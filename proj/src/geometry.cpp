#include "magnus/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magnus/developments.hpp"
#include "magnus/errors.hpp"
#include "magnus/kernels.hpp"

namespace magnus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kScanPoints = 256;

void require_zero_outside(const Disk& d) {
    if (!(std::abs(d.center) > d.radius * (1 + 1e-12))) throw OutOfDomain("CD(A) contains 0");
}

struct CircleLog {
    const Disk& disk;

    Complex point(double theta) const { return disk.center + disk.radius * std::polar(1.0, theta); }
    double value(double theta) const { return std::norm(lifted_log(disk, point(theta))); }
    // d/dtheta |Log z|^2 = 2 Re(conj(Log z) i r e^(i theta) / z)
    double slope(double theta) const {
        const Complex z = point(theta);
        const Complex dz = Complex(0.0, disk.radius) * std::polar(1.0, theta);
        return 2 * std::real(std::conj(lifted_log(disk, z)) * dz / z);
    }

    double golden(double lo, double hi) const {
        const double g = (std::sqrt(5.0) - 1) / 2;
        double x1 = hi - g * (hi - lo);
        double x2 = lo + g * (hi - lo);
        double f1 = value(x1);
        double f2 = value(x2);
        while (hi - lo > 1e-11) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = value(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = value(x1);
            }
        }
        return (lo + hi) / 2;
    }

    // Local maximizer near theta0, bracketed by the neighbouring scan points.
    double refine(double theta0, double step) const {
        double lo = theta0 - step;
        double hi = theta0 + step;
        const double best = golden(lo, hi);
        // Finish on the slope, which has a simple zero at an ordinary maximum; the value itself
        // is too flat there to locate the point beyond about sqrt(eps).
        lo = best - 1e-6;
        hi = best + 1e-6;
        if (slope(lo) > 0 && slope(hi) < 0) {
            for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(best)); ++i) {
                const double mid = (lo + hi) / 2;
                if (slope(mid) > 0)
                    lo = mid;
                else
                    hi = mid;
            }
            return (lo + hi) / 2;
        }
        return best;
    }
};

}  // namespace

Disk maximal_disk(double p, double t) {
    if (!(p > 0.0 && p < kPi)) throw OutOfDomain("maximal disk needs p in (0, pi)");
    if (!(std::abs(t) <= kPi / 2 + 1e-12)) throw OutOfDomain("maximal disk needs t in [-pi/2, pi/2]");
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double omega = p * kernels::sinhc(p * c);
    const Complex center = std::polar(1.0, p * s) * Complex(std::cosh(p * c), -omega * s);
    return {center, omega, 0};
}

Mat2 frame_from_angle(double beta) { return -std::sin(beta) * Mat2::j_tilde() + std::cos(beta) * Mat2::k_tilde(); }

double frame_angle(const Mat2& frame) {
    const QuatCoords q = frame.quat();
    return std::atan2(-q.j, q.k);
}

Complex NormalForm::ellip() const { return std::polar(p1, t); }

Mat2 nw_compose(const NormalForm& nf) {
    const double c = std::cos(nf.t);
    const double s = std::sin(nf.t);
    const double p = nf.p1 + nf.p2;
    const double sigma = nf.p2 * kernels::sinhc(nf.p2 * c);
    const Mat2 quasi = std::cosh(nf.p2 * c) * Mat2::identity() - sigma * s * Mat2::i_tilde();
    return std::exp(nf.p1 * c) * (Mat2::rotation(p * s) * quasi + sigma * nf.F);
}

MeasureSpec nw_measure(const NormalForm& nf) {
    const double p = nf.p1 + nf.p2;
    MeasureSpec out;
    if (p == 0.0) return out;
    const double c = std::cos(nf.t);
    const double s = std::sin(nf.t);
    out.segments.push_back(
        Segment::rotating((nf.p2 / p) * nf.F, s, -p * s / 2, p, nf.p1 * c / p, nf.p1 * s / p));
    return out;
}

std::string kind_name(MagnusKind kind) {
    switch (kind) {
        case MagnusKind::Identity: return "identity";
        case MagnusKind::Quasicomplex: return "quasicomplex";
        case MagnusKind::Elliptic: return "elliptic";
        case MagnusKind::Parabolic: return "parabolic";
        case MagnusKind::Hyperbolic: return "hyperbolic";
        case MagnusKind::Loxodromic: return "loxodromic";
    }
    return "";
}

Complex lifted_log(const Disk& disk, Complex z) {
    const double arg = std::arg(disk.center) + std::arg(z / disk.center) + 2 * kPi * disk.lift_winding;
    return {std::log(std::abs(z)), arg};
}

BoundarySup boundary_sup(const Disk& disk) {
    require_zero_outside(disk);
    BoundarySup out;
    if (disk.radius == 0.0) {
        const Complex l = lifted_log(disk, disk.center);
        out.value = std::abs(l);
        out.maximizers.push_back(l);
        return out;
    }
    const CircleLog f{disk};
    const double step = 2 * kPi / kScanPoints;
    std::vector<double> scan(kScanPoints);
    for (int k = 0; k < kScanPoints; ++k) scan[static_cast<std::size_t>(k)] = f.value(k * step);
    const double top = *std::max_element(scan.begin(), scan.end());

    struct Peak {
        double theta;
        double value;
    };
    std::vector<Peak> peaks;
    for (int k = 0; k < kScanPoints; ++k) {
        const double v = scan[static_cast<std::size_t>(k)];
        const double prev = scan[static_cast<std::size_t>((k + kScanPoints - 1) % kScanPoints)];
        const double next = scan[static_cast<std::size_t>((k + 1) % kScanPoints)];
        if (v < prev || v < next || v < 0.25 * top) continue;
        const double theta = f.refine(k * step, step);
        peaks.push_back({theta, f.value(theta)});
    }
    if (peaks.empty()) peaks.push_back({0.0, scan[0]});
    double best = 0.0;
    for (const Peak& pk : peaks) best = std::max(best, pk.value);
    out.value = std::sqrt(best);
    // Peaks of equal height at distinct points (the mirror pair of a maximal disk).
    const double tol = 1e-9 * std::max(1.0, best);
    for (const Peak& pk : peaks) {
        if (pk.value < best - tol) continue;
        const Complex l = lifted_log(disk, f.point(pk.theta));
        bool seen = false;
        for (const Complex& m : out.maximizers) seen = seen || std::abs(m - l) < 1e-6 * std::max(1.0, out.value);
        if (!seen) out.maximizers.push_back(l);
    }
    return out;
}

MagnusClass classify(const Mat2& a) {
    const Disk d = cd(a);
    require_zero_outside(d);
    MagnusClass out;
    if (max_abs(a - Mat2::identity()) <= 1e-14) return out;
    const double centre_abs = std::abs(d.center);
    if (d.radius <= 1e-13 * centre_abs) {
        const Complex l = lifted_log(d, d.center);
        out.kind = MagnusKind::Quasicomplex;
        out.mp = std::abs(l);
        out.directions = {std::arg(l)};
        return out;
    }
    auto from_sup = [&](MagnusKind kind) {
        const BoundarySup sup = boundary_sup(d);
        out.kind = kind;
        out.mp = sup.value;
        for (const Complex& m : sup.maximizers) out.directions.push_back(std::arg(m));
        return out;
    };
    if (std::abs(a.det() - 1.0) > 1e-10) return from_sup(MagnusKind::Loxodromic);
    // Lifted arguments of the two points where the boundary circle meets the unit circle.
    const double phase = std::arg(d.center);
    const double spread = std::acos(std::clamp(1.0 / centre_abs, -1.0, 1.0));
    const double hi = phase + spread;
    const double lo = phase - spread;
    const double widest = std::max(std::abs(hi), std::abs(lo));
    const double tol = 1e-9 * std::max(1.0, d.radius);
    if (widest < d.radius - tol) return from_sup(MagnusKind::Hyperbolic);
    out.kind = widest > d.radius + tol ? MagnusKind::Elliptic : MagnusKind::Parabolic;
    out.mp = widest;
    const double at = std::abs(hi) >= std::abs(lo) ? hi : lo;
    out.directions = {at >= 0 ? kPi / 2 : -kPi / 2};
    return out;
}

double mp(const Mat2& a) { return classify(a).mp; }

NormalForm nw_decompose(const Mat2& a) {
    const Disk d = cd(a);
    require_zero_outside(d);
    NormalForm nf;
    if (max_abs(a - Mat2::identity()) <= 1e-14) {
        nf.quasicomplex = true;
        return nf;
    }
    const BoundarySup sup = boundary_sup(d);
    const double p = sup.value;
    if (!(p < kPi)) throw OutOfDomain("normal form needs CD(A) inside exp D(0, pi)");
    Complex top = sup.maximizers.front();
    if (sup.maximizers.size() >= 2) {
        nf.mirror = true;
        for (const Complex& m : sup.maximizers) {
            if (m.real() >= 0) top = m;
        }
    }
    nf.t = std::arg(top);
    if (d.radius <= 1e-13 * std::abs(d.center)) {
        nf.p1 = p;
        nf.quasicomplex = true;
        return nf;
    }
    const double c = std::cos(nf.t);
    // radius = e^(p c)(1 - e^(-2 p2 c))/(2c), solved for p2
    double p2 = d.radius;
    if (c != 0.0) p2 = -std::log1p(-2 * c * d.radius * std::exp(-p * c)) / (2 * c);
    if (!std::isfinite(p2)) p2 = p;
    nf.p2 = std::clamp(p2, 0.0, p);
    nf.p1 = p - nf.p2;
    const QuatCoords q = a.quat();
    if (d.radius < 1e-10) {
        nf.quasicomplex = true;
    } else {
        nf.F = (q.j * Mat2::j_tilde() + q.k * Mat2::k_tilde()) / d.radius;
    }
    return nf;
}

double mp_small_asymptotic_check(double p, double t) {
    if (!(p > 0.0 && p <= 0.3)) throw OutOfDomain("small asymptotic check needs 0 < p <= 0.3");
    const Mat2 dev = W(p, p * std::sin(t));
    const Disk d = cd(dev);
    const double a = d.center.real() - 1;
    const double b = d.center.imag();
    const double m = mp(dev);
    return std::abs(m * m - (2 * a - a * a / 3 + 1.5 * b * b / a));
}

AdditivityGaps additivity_check(const NormalForm& nf, double x) {
    const double p = nf.p1 + nf.p2;
    if (!(x >= 0.0 && x <= p)) throw OutOfDomain("split point must lie in [0, p1 + p2]");
    const MeasureSpec phi = nw_measure(nf);
    auto parts = [](const MeasureSpec& piece) -> std::pair<double, Complex> {
        if (piece.length() <= 0.0) return {0.0, Complex{}};
        const NormalForm f = nw_decompose(lexp(piece));
        return {f.p1 + f.p2, f.ellip()};
    };
    const auto [mp_l, el_l] = parts(restrict(phi, x));
    const auto [mp_r, el_r] = parts(slice(phi, x, p));
    const auto [mp_t, el_t] = parts(phi);
    return {std::abs(mp_l + mp_r - mp_t), std::abs(el_l + el_r - el_t)};
}

double tan_fixed_point() {
    // sin z - z cos z changes sign on [pi, 3pi/2] and has no poles there.
    double lo = kPi;
    double hi = 1.5 * kPi;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = (lo + hi) / 2;
        if (std::sin(mid) - mid * std::cos(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2;
}

Mat2 tan_fixed_point_matrix() {
    const double z = tan_fixed_point();
    const double root = std::sqrt(1 + z * z);
    return Mat2::diag(-root - z, -root + z);
}

}  // namespace magnus
