#include "magnus/matrix_log.hpp"

#include <cmath>

#include "magnus/errors.hpp"
#include "magnus/kernels.hpp"

namespace magnus {

namespace {

constexpr double kCutTolerance = 1e-12;
constexpr double kDetFloor = 1e-300;
constexpr double kFiniteStep = 1e-5;

}  // namespace

bool is_logable(const Mat2& m) {
    const double dt = m.det();
    if (!(dt > kDetFloor)) return false;
    return m.trace() / (2 * std::sqrt(dt)) > -1.0 + kCutTolerance;
}

namespace {

// ((a - d)/2)^2 + bc = (tr/2)^2 - det, formed without the cancellation of the second form.
double discriminant(const Mat2& m) {
    const double half_gap = (m.a - m.d) / 2;
    const double w = m.b * m.c;
    const double err = std::fma(m.b, m.c, -w);
    return std::fma(half_gap, half_gap, w) + err;
}

}  // namespace

Mat2 log2(const Mat2& m) {
    const double dt = m.det();
    if (!(dt > kDetFloor)) {
        throw LogabilityError(LogabilityKind::NonPositiveDet, "not log-able: determinant is not positive");
    }
    const double sq = std::sqrt(dt);
    const double half = m.trace() / 2;
    if (!(half / sq > -1.0 + kCutTolerance)) {
        throw LogabilityError(LogabilityKind::SpectrumOnCut, "not log-able: spectrum meets (-inf,0]");
    }
    // AC(x)/sqrt(det) with x = half/sq, written through the eigenvalue discriminant so that
    // nothing depends on 1 - x^2 near the cut.
    const double disc = discriminant(m);
    double k = 1.0 / half;
    if (disc < 0) {
        const double nu = std::sqrt(-disc);
        k = std::atan2(nu, half) / nu;
    } else if (disc > 0) {
        const double mu = std::sqrt(disc);
        k = std::asinh(mu / sq) / mu;
    }
    const Mat2 traceless = m - half * Mat2::identity();
    return (std::log(dt) / 2) * Mat2::identity() + k * traceless;
}

Mat2 exp2(const Mat2& m) {
    const double half = m.trace() / 2;
    const Mat2 traceless = m - half * Mat2::identity();
    const double delta = discriminant(m);
    return std::exp(half) * (kernels::cosh_sqrt(delta) * Mat2::identity() + kernels::sinh_sqrt_ratio(delta) * traceless);
}

LogNormParts log_norm_parts(double a, double b, double r) {
    const double dsq = a * a + b * b - r * r;
    if (!(dsq > 0)) throw OutOfDomain("log norm: disk must satisfy a^2 + b^2 - r^2 > 0");
    const double s = std::sqrt(dsq);
    const double x = a / s;
    if (!(x > -1.0)) throw OutOfDomain("log norm: disk meets the branch cut");
    const double k = kernels::ac(x) / s;
    return {std::hypot(std::log(s), b * k), r * k};
}

LogNorms log_norm_from_disk(double a, double b, double r) {
    const LogNormParts p = log_norm_parts(a, b, r);
    return {p.chiral + p.radial, p.chiral - p.radial};
}

double conical_identity_residual(double a, double b, double r) {
    // The identity degenerates at b = 0; keep the stencil clear of it.
    if (!(b > 10 * kFiniteStep)) throw OutOfDomain("conical identity: requires b well above the finite-difference step");
    auto f = [](double x, double y, double z) {
        const LogNormParts p = log_norm_parts(x, y, z);
        return p.chiral + p.radial;
    };
    // Five-point central stencil: the left side is a difference of large squares near the
    // boundary of the domain, where the second-order stencil's truncation error shows.
    const double h = kFiniteStep;
    auto central = [h](const auto& g) { return (g(-2 * h) - 8 * g(-h) + 8 * g(h) - g(2 * h)) / (12 * h); };
    const double fr = central([&](double e) { return f(a, b, r + e); });
    const double fa = central([&](double e) { return f(a + e, b, r); });
    const double fb = central([&](double e) { return f(a, b + e, r); });
    const LogNormParts p = log_norm_parts(a, b, r);
    const double dsq = a * a + b * b - r * r;
    const double rhs = (p.chiral + p.radial) / p.chiral * b * kernels::as(a / std::sqrt(dsq)) / dsq;
    return std::abs(fr * fr - fa * fa - fb * fb - rhs * rhs);
}

}  // namespace magnus
