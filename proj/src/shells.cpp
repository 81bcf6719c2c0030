#include "magnus/shells.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "magnus/errors.hpp"

namespace magnus {

Disk pd(const Mat2& m) {
    const QuatCoords q = m.quat();
    return {{q.id, std::abs(q.i)}, std::hypot(q.j, q.k), 0};
}

Disk cd(const Mat2& m) {
    const QuatCoords q = m.quat();
    return {{q.id, q.i}, std::hypot(q.j, q.k), 0};
}

ConformalRangeReal cr_real(const Mat2& m) {
    const Disk d = cd(m);
    return {d, {std::conj(d.center), d.radius, d.lift_winding}};
}

bool disk_contains(const Disk& outer, const Disk& inner) {
    return std::abs(outer.center - inner.center) <= outer.radius - inner.radius + 1e-12;
}

double distance_to_circle(const Disk& disk, Complex z) {
    return std::abs(std::abs(z - disk.center) - disk.radius);
}

Complex envelope_point(const ScalarFn& n, const ScalarFn& dn, double lambda) {
    const double nv = n(lambda);
    const double half = dn(lambda) / 2;
    const double rad = nv - half * half;
    // The subtraction cancels for large |lambda|, so the slack scales with N.
    if (rad < -1e-9 * std::max(1.0, std::abs(nv))) throw OutOfDomain("envelope: negative radicand (sampled across a discontinuity)");
    return {lambda - half, std::sqrt(std::max(rad, 0.0))};
}

ShiftedNormSquare shifted_norm_square(const Mat2& m, NormBranch branch) {
    const QuatCoords q = m.quat();
    const double rho = std::hypot(q.j, q.k);
    const double sign = branch == NormBranch::Norm ? 1.0 : -1.0;
    auto value = [q, rho, sign](double lambda) {
        const double v = std::hypot(q.id - lambda, q.i) + sign * rho;
        return v * v;
    };
    auto derivative = [q, rho, sign](double lambda) {
        const double s = std::hypot(q.id - lambda, q.i);
        // Symmetric derivative at the kink s = 0.
        if (s == 0.0) return 0.0;
        return -2.0 * (s + sign * rho) * (q.id - lambda) / s;
    };
    // N - (N'/2)^2 = (s +- rho)^2 q.i^2 / s^2.
    auto point = [q, rho, sign](double lambda) {
        const double s = std::hypot(q.id - lambda, q.i);
        if (s == 0.0) return Complex(lambda, std::abs(sign * rho));
        const double w = s + sign * rho;
        return Complex(lambda - w * (lambda - q.id) / s, std::abs(w * q.i / s));
    };
    return {value, derivative, point};
}

ShiftedNormSquare shifted_norm_square(const CMat2& m, NormBranch branch) {
    const double sign = branch == NormBranch::Norm ? 1.0 : -1.0;
    struct Parts {
        double t, dt, absdet, dabsdet;
    };
    auto parts = [m](double lambda) {
        const CMat2 s = m.shifted(lambda);
        const double t = std::norm(s.a) + std::norm(s.b) + std::norm(s.c) + std::norm(s.d);
        const double dt = -2.0 * (s.a.real() + s.d.real());
        const Complex det = s.det();
        const Complex ddet = -(s.a + s.d);
        const double absdet = std::abs(det);
        const double dabsdet = absdet == 0.0 ? 0.0 : std::real(std::conj(det) * ddet) / absdet;
        return Parts{t, dt, absdet, dabsdet};
    };
    auto value = [parts, sign](double lambda) {
        const Parts p = parts(lambda);
        const double disc = std::sqrt(std::max(p.t * p.t - 4 * p.absdet * p.absdet, 0.0));
        return (p.t + sign * disc) / 2;
    };
    auto derivative = [parts, sign](double lambda) {
        const Parts p = parts(lambda);
        const double disc = std::sqrt(std::max(p.t * p.t - 4 * p.absdet * p.absdet, 0.0));
        if (disc == 0.0) return p.dt / 2;
        return (p.dt + sign * (p.t * p.dt - 4 * p.absdet * p.dabsdet) / disc) / 2;
    };
    // With u the right singular vector of A - lambda and w = <u, A u>, the envelope point is
    // Re w + i sqrt(Im^2 w + |A u - w u|^2); lambda drops out except through u.
    auto point = [m, sign](double lambda) {
        const CMat2 s = m.shifted(lambda);
        const double h11 = std::norm(s.a) + std::norm(s.c);
        const double h22 = std::norm(s.b) + std::norm(s.d);
        const Complex h12 = std::conj(s.a) * s.b + std::conj(s.c) * s.d;
        const double delta = (h11 - h22) / 2;
        const double g = std::hypot(delta, std::abs(h12));
        Complex u1 = 1.0, u2 = 0.0;
        if (g > 0.0) {
            if (sign > 0) {
                if (delta >= 0) u1 = delta + g, u2 = std::conj(h12);
                else u1 = h12, u2 = g - delta;
            } else {
                if (delta >= 0) u1 = h12, u2 = -(delta + g);
                else u1 = g - delta, u2 = -std::conj(h12);
            }
            const double n = std::sqrt(std::norm(u1) + std::norm(u2));
            u1 /= n;
            u2 /= n;
        }
        const Complex v1 = m.a * u1 + m.b * u2;
        const Complex v2 = m.c * u1 + m.d * u2;
        const Complex w = std::conj(u1) * v1 + std::conj(u2) * v2;
        const double off = std::norm(v1 - w * u1) + std::norm(v2 - w * u2);
        return Complex(w.real(), std::sqrt(w.imag() * w.imag() + off));
    };
    return {value, derivative, point};
}

std::vector<Complex> h_segment(Complex z1, Complex z2, int points) {
    std::vector<Complex> out;
    if (points <= 0) return out;
    out.reserve(static_cast<std::size_t>(points));
    const double dx = z1.real() - z2.real();
    const double span = std::max({std::abs(z1), std::abs(z2), 1.0});
    if (std::abs(dx) <= 1e-12 * span) {
        for (int k = 1; k <= points; ++k) {
            const double s = static_cast<double>(k) / (points + 1);
            out.emplace_back(z1.real(), (1 - s) * z1.imag() + s * z2.imag());
        }
        return out;
    }
    const double c = (std::norm(z1) - std::norm(z2)) / (2 * dx);
    const double r = std::abs(z1 - c);
    const double a1 = std::arg(z1 - c);
    const double a2 = std::arg(z2 - c);
    for (int k = 1; k <= points; ++k) {
        const double s = static_cast<double>(k) / (points + 1);
        const double ang = (1 - s) * a1 + s * a2;
        out.emplace_back(c + r * std::cos(ang), r * std::sin(ang));
    }
    return out;
}

namespace {

constexpr int kBridgePoints = 16;

void append_branch(std::vector<EnvelopeSample>& out, const std::vector<double>& lambdas,
                   const std::vector<Complex>& pts, const char* name, double scale) {
    const std::size_t n = pts.size();
    std::vector<double> gaps(n > 0 ? n - 1 : 0);
    for (std::size_t k = 0; k + 1 < n; ++k) gaps[k] = std::abs(pts[k + 1] - pts[k]);
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back({lambdas[k], pts[k], name});
        if (k + 1 == n) break;
        const double before = k > 0 ? gaps[k - 1] : 0.0;
        const double after = k + 2 < n ? gaps[k + 1] : 0.0;
        const double local = std::max(before, after);
        if (gaps[k] > 10.0 * local && gaps[k] > 1e-9 * scale) {
            const double lam = (lambdas[k] + lambdas[k + 1]) / 2;
            for (const Complex& z : h_segment(pts[k], pts[k + 1], kBridgePoints)) out.push_back({lam, z, "hseg"});
        }
    }
}

}  // namespace

std::vector<EnvelopeSample> envelope_polyline(const ShiftedNormSquare& norm_branch,
                                              const ShiftedNormSquare& conorm_branch, double center,
                                              double scale, int samples) {
    if (samples < 2) throw OutOfDomain("envelope polyline needs at least 2 samples");
    if (!(scale > 0)) scale = 1.0;
    std::vector<double> lambdas(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double theta = -std::numbers::pi / 2 + std::numbers::pi * (k + 0.5) / samples;
        lambdas[static_cast<std::size_t>(k)] = center + scale * std::tan(theta);
    }
    auto trace = [&lambdas](const ShiftedNormSquare& f) {
        std::vector<Complex> pts;
        pts.reserve(lambdas.size());
        for (double lam : lambdas) pts.push_back(f.point ? f.point(lam) : envelope_point(f.value, f.derivative, lam));
        return pts;
    };
    const std::vector<Complex> upper = trace(norm_branch);
    const std::vector<Complex> lower = trace(conorm_branch);

    std::vector<EnvelopeSample> out;
    const double inf = std::numeric_limits<double>::infinity();
    append_branch(out, lambdas, upper, "norm", scale);
    // lambda = +inf on the norm branch meets lambda = -inf on the co-norm branch.
    if (std::abs(upper.back() - lower.front()) > 1e-9 * scale) {
        for (const Complex& z : h_segment(upper.back(), lower.front(), kBridgePoints)) out.push_back({inf, z, "hseg"});
    }
    append_branch(out, lambdas, lower, "conorm", scale);
    if (std::abs(lower.back() - upper.front()) > 1e-9 * scale) {
        for (const Complex& z : h_segment(lower.back(), upper.front(), kBridgePoints)) out.push_back({inf, z, "hseg"});
    }
    return out;
}

Complex ckb_map(Complex u) {
    const double n2 = std::norm(u);
    const double den = 1.0 + n2;
    return {2 * u.real() / den, -(1.0 - n2) / den};
}

}  // namespace magnus
