#include "magnus/growth_bound.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "magnus/errors.hpp"
#include "magnus/kernels.hpp"

namespace magnus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;

void require_subcritical(double p) {
    if (!(p >= 0.0 && p < kPi)) throw OutOfDomain("growth bound needs 0 <= p < pi");
}

// (sin y - y cos y)/y^3
double cubic_factor(double y, double sin_y, double cos_y) {
    if (std::abs(y) < 0.5) {
        // sum_{k>=1} (-1)^(k+1) 2k y^(2k-2)/(2k+1)!
        const double y2 = y * y;
        double term = 1.0 / 6.0;  // 1/3!
        double power = 1.0;
        double sum = 0.0;
        for (int k = 1; k <= 12; ++k) {
            sum += (k % 2 == 1 ? 1.0 : -1.0) * 2.0 * k * power * term;
            power *= y2;
            term /= (2.0 * k + 2.0) * (2.0 * k + 3.0);
        }
        return sum;
    }
    return (sin_y - y * cos_y) / (y * y * y);
}

// Factored integrand; p may equal pi here (then it is singular at t = pi/2 only).
double hh_factored(double p, double t) {
    if (p == 0.0) return 0.0;
    t = std::clamp(t, 0.0, kPi);
    if (t > kHalfPi) t = kPi - t;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double x = p * c;
    const double y = p * s;
    double sin_y;
    double cos_y;
    if (y > kHalfPi) {
        // pi - y without cancellation: (pi - p) + p (1 - sin t)
        const double h = std::sin((kHalfPi - t) / 2);
        const double gap = (kPi - p) + p * 2 * h * h;
        sin_y = std::sin(gap);
        cos_y = -std::cos(gap);
    } else {
        sin_y = std::sin(y);
        cos_y = std::cos(y);
    }
    const double sh = std::sinh(x / 2);
    const double sn = std::sin(y / 2);
    const double f1 = cubic_factor(y, sin_y, cos_y);
    const double f2 = 2 * (sh * sh + sn * sn) / (p * p);
    const double f3 = y == 0.0 ? 1.0 : sin_y / y;
    const double f4 = (2 * sn * sn - 2 * sh * sh * cos_y) / (p * p) + c * std::sinh(x) / p * f3;
    return p * p * s * f1 * f2 / (f3 * f4);
}

double boundary_terms(double p) {
    if (p == 0.0) return 0.0;
    // 2 log(p / (p - 1 + e^-p (p + 1)))
    const double denom = (p + 1) * std::expm1(-p) + 2 * p;
    return 2 * std::log(p / denom);
}

struct Simpson {
    const std::function<double(double)>& f;
    double error = 0.0;

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
        const double m = (a + b) / 2;
        const double lm = (a + m) / 2;
        const double rm = (m + b) / 2;
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6 * (fa + 4 * flm + fm);
        const double right = (b - m) / 6 * (fm + 4 * frm + fb);
        const double delta = left + right - whole;
        const bool narrow = (b - a) < std::ldexp(1.0, -40);
        if (narrow || depth > 60 || std::abs(delta) <= 15 * tol) {
            error += std::abs(delta) / 15;
            return left + right + delta / 15;
        }
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth + 1) +
               recurse(m, b, fm, frm, fb, right, tol / 2, depth + 1);
    }

    double integrate(double a, double b, double tol) {
        const double fa = f(a);
        const double fb = f(b);
        const double fm = f((a + b) / 2);
        const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
        return recurse(a, b, fa, fm, fb, whole, tol, 0);
    }
};

// Adaptive Simpson over consecutive panels; returns (value, error estimate).
std::pair<double, double> integrate_panels(const std::function<double(double)>& f, const std::vector<double>& edges,
                                           double tol) {
    Simpson rule{f};
    double total = 0.0;
    const double panel_tol = tol / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) total += rule.integrate(edges[i], edges[i + 1], panel_tol);
    return {total, rule.error};
}

}  // namespace

double quadrature_tolerance() {
    if (const char* env = std::getenv("MAGNUS_QUAD_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0 && std::isfinite(v)) return v;
    }
    return 1e-10;
}

double hh(double p, double t) {
    require_subcritical(p);
    return hh_factored(p, t);
}

HBoundReport h_bound(double p) {
    require_subcritical(p);
    HBoundReport rep;
    rep.p = p;
    if (p == 0.0) return rep;
    rep.boundary_terms = boundary_terms(p);
    // Peak at pi/2 has width about sqrt(pi - p); bracket it with extra panel edges.
    const double gap = kPi - p;
    std::vector<double> edges{0.0, kHalfPi};
    for (double e : {0.25, 0.5, 0.75}) {
        const double at = kHalfPi - std::pow(gap, e);
        if (at > 0.0 && at < kHalfPi) edges.push_back(at);
    }
    std::sort(edges.begin(), edges.end());
    const std::function<double(double)> f = [p](double t) { return hh_factored(p, t); };
    // The integrand is symmetric under t -> pi - t.
    auto [half, err] = integrate_panels(f, edges, quadrature_tolerance() / 2);
    rep.integral = 2 * half;
    rep.quadrature_error_estimate = 2 * err;
    rep.H = rep.boundary_terms + rep.integral;
    return rep;
}

double h_pi_integrand(double t) {
    t = std::clamp(t, 0.0, kPi);
    if (t > kHalfPi) t = kPi - t;
    const double u = kHalfPi - t;
    auto direct = [](double v) {
        const double cv = std::sin(v);  // cos(pi/2 - v)
        return hh_factored(kPi, kHalfPi - v) - 2 / (cv * cv);
    };
    constexpr double kNear = 1e-3;
    if (u >= kNear) return direct(u);
    // Even in u: g0 + g2 u^2 from samples at kNear and 2 kNear.
    const double g1 = direct(kNear);
    const double g2 = direct(2 * kNear);
    const double quad = (g2 - g1) / (3 * kNear * kNear);
    return g1 - quad * kNear * kNear + quad * u * u;
}

double h_pi() {
    const std::function<double(double)> f = h_pi_integrand;
    const std::vector<double> edges{0.0, 1.0, kHalfPi - 0.1, kHalfPi};
    auto [half, err] = integrate_panels(f, edges, quadrature_tolerance() / 2);
    (void)err;
    return boundary_terms(kPi) + 2 * half;
}

double support_parameter(double p, double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double y = p * s;
    const double sc = p * kernels::sinc(y);
    const double num = 1 + std::exp(p * c) * (c * sc - std::cos(y));
    const double den = 1 + std::exp(-p * c) * (-c * sc - std::cos(y));
    return -num / den;
}

double support_parameter_at_zero(double p) {
    return -(1 - std::exp(p) * (1 - p)) / (1 - std::exp(-p) * (1 + p));
}

double support_parameter_at_pi(double p) {
    return -(1 - std::exp(-p) * (1 + p)) / (1 - std::exp(p) * (1 - p));
}

}  // namespace magnus
