#include "magnus/developments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magnus/errors.hpp"
#include "magnus/kernels.hpp"

namespace magnus {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// AC at a log-able argument.
double ac_checked(double x) {
    if (!(x > -1.0)) throw LogabilityError(LogabilityKind::SpectrumOnCut, "not log-able: spectrum meets (-inf,0]");
    return kernels::ac(x);
}

void require_nonnegative(double v, const char* what) {
    if (!(v >= 0.0)) throw OutOfDomain(std::string(what) + " must be nonnegative");
}

double hyperbolic_norm(double p, double s, double c) {
    // sinh(p c)/c, with the c -> 0 limit p
    const double sigma = p * kernels::sinhc(p * c);
    const double ch = std::cosh(p * c);
    const double arg = ch * std::cos(p * s) + sigma * std::sin(p * s) * s;
    return ac_checked(arg) * (std::abs(ch * std::sin(p * s) - sigma * std::cos(p * s) * s) + sigma);
}

double critical_norm_from_gap(double u) {
    // t = 1 - u, 1 - t^2 = u (2 - u)
    if (!(u > 0.0)) throw LogabilityError(LogabilityKind::SpectrumOnCut, "not log-able: spectrum meets (-inf,0]");
    return kPi * (1 / std::sqrt(u * (2 - u)) - 1) * (2 - u);
}

const double kSqrtTwoPiThreeHalves = std::sqrt(2.0) * std::pow(kPi, 1.5);

}  // namespace

Mat2 W(double p, double w) {
    const double x = (p - w) * (p + w);
    const double cc = kernels::cosh_sqrt(x);
    const double ss = kernels::sinh_sqrt_ratio(x);
    const Mat2 inner{cc, (p + w) * ss, (p - w) * ss, cc};
    return Mat2::rotation(w) * inner;
}

Mat2 E(double p, double w) {
    const Mat2 rot = std::cos(p) * Mat2::identity() + std::sin(p) * Mat2::i_tilde();
    return rot * (Mat2::identity() - w * Mat2::i_tilde() + w * Mat2::k_tilde());
}

std::string development_name(const DevelopmentId& id) {
    return std::visit(Overloaded{[](const dev::SkewLoxodromic&) { return std::string("skew-loxodromic"); },
                                 [](const dev::SkewElliptic&) { return std::string("skew-elliptic"); },
                                 [](const dev::Critical&) { return std::string("critical"); },
                                 [](const dev::Parabolic&) { return std::string("parabolic"); },
                                 [](const dev::Elliptic&) { return std::string("elliptic"); },
                                 [](const dev::Hyperbolic&) { return std::string("hyperbolic"); }},
                      id);
}

MeasureSpec development_measure(const DevelopmentId& id) {
    return std::visit(
        Overloaded{[](const dev::SkewLoxodromic& d) { return gallery::skew_loxodromic(d.alpha, d.beta); },
                   [](const dev::SkewElliptic& d) { return gallery::skew_elliptic(d.alpha, d.beta); },
                   [](const dev::Critical& d) { return gallery::critical(kPi).scaled(d.t); },
                   [](const dev::Parabolic& d) { return gallery::critical(d.p); },
                   [](const dev::Elliptic& d) { return gallery::elliptic(d.h, d.p); },
                   [](const dev::Hyperbolic& d) { return gallery::development(d.p, std::sin(d.t)); }},
        id);
}

Mat2 development_matrix(const DevelopmentId& id) {
    return std::visit(
        Overloaded{[](const dev::SkewLoxodromic& d) {
                       return Mat2{std::exp(d.alpha) * std::cos(d.beta), -std::exp(-d.alpha) * std::sin(d.beta),
                                   std::exp(d.alpha) * std::sin(d.beta), std::exp(-d.alpha) * std::cos(d.beta)};
                   },
                   [](const dev::SkewElliptic& d) {
                       const double c = std::cos(d.beta);
                       const double s = std::sin(d.beta);
                       return Mat2{c, -d.alpha * c - s, s, -d.alpha * s + c};
                   },
                   [](const dev::Critical& d) { return W(kPi * d.t, kPi); },
                   [](const dev::Parabolic& d) { return W(d.p, d.p); },
                   [](const dev::Elliptic& d) { return E(d.p, d.p * d.h); },
                   [](const dev::Hyperbolic& d) { return W(d.p, d.p * std::sin(d.t)); }},
        id);
}

double mu_norm(const DevelopmentId& id) {
    return std::visit(
        Overloaded{[](const dev::SkewLoxodromic& d) {
                       require_nonnegative(d.alpha, "alpha");
                       require_nonnegative(d.beta, "beta");
                       const double ch = std::cosh(d.alpha);
                       return ac_checked(ch * std::cos(d.beta)) * (std::sinh(d.alpha) + ch * std::sin(d.beta));
                   },
                   [](const dev::SkewElliptic& d) {
                       require_nonnegative(d.alpha, "alpha");
                       require_nonnegative(d.beta, "beta");
                       const double c = std::cos(d.beta);
                       const double s = std::sin(d.beta);
                       return ac_checked(c - d.alpha / 2 * s) * (s + d.alpha / 2 * c + d.alpha / 2);
                   },
                   [](const dev::Critical& d) { return critical_norm_from_gap(1 - std::abs(d.t)); },
                   [](const dev::Parabolic& d) {
                       require_nonnegative(d.p, "p");
                       const double c = std::cos(d.p);
                       const double s = std::sin(d.p);
                       return ac_checked(c + d.p * s) * (s - d.p * c + d.p);
                   },
                   [](const dev::Elliptic& d) {
                       require_nonnegative(d.p, "p");
                       const double c = std::cos(d.p);
                       const double s = std::sin(d.p);
                       const double w = d.h * d.p;
                       return ac_checked(c + w * s) * (s - w * c + w);
                   },
                   [](const dev::Hyperbolic& d) {
                       require_nonnegative(d.p, "p");
                       return hyperbolic_norm(d.p, std::sin(d.t), std::cos(d.t));
                   }},
        id);
}

Mat2 skew_loxodromic_log(double alpha, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    const double k = ac_checked(std::cosh(alpha) * c);
    return k * Mat2{std::sinh(alpha) * c, -std::exp(-alpha) * s, std::exp(alpha) * s, -std::sinh(alpha) * c};
}

Mat2 skew_elliptic_log(double alpha, double beta) {
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    const double k = ac_checked(c - alpha / 2 * s);
    return k * Mat2{alpha / 2 * s, -alpha * c - s, s, -alpha / 2 * s};
}

Mat2 critical_log(double t) {
    if (!(std::abs(t) < 1.0)) throw LogabilityError(LogabilityKind::SpectrumOnCut, "not log-able: spectrum meets (-inf,0]");
    const double k = kPi * (1 / std::sqrt((1 - t) * (1 + t)) - 1);
    return k * Mat2{0.0, -t - 1, -t + 1, 0.0};
}

double critical_magnus_term_norm(int n) {
    if (n < 1) throw OutOfDomain("term index starts at 1");
    if (n == 1) return 0.0;
    // (2m)!/(4^m (m!)^2) as a running product
    const int m = n / 2;
    double c = 1.0;
    for (int j = 1; j <= m; ++j) c *= (2.0 * j - 1) / (2.0 * j);
    return kPi * c;
}

Mat2 critical_magnus_term(int n) {
    const double v = critical_magnus_term_norm(n);
    return n % 2 == 0 ? v * Mat2::i_tilde() : v * (-Mat2::k_tilde());
}

std::pair<double, double> ridge(RidgeFamily family, double x) {
    if (!(x > -1.0 && x <= 1.0)) throw OutOfDomain("ridge parameter must lie in (-1, 1]");
    if (family == RidgeFamily::SkewLoxodromic) {
        const double ac = kernels::ac(x);
        const double as = kernels::as(x);
        const double q = 1 - x * as;
        const double d = std::sqrt(std::max(ac * ac - 4 * x * q * as, 0.0));
        const double alpha = std::acosh(std::max((ac + d) / (2 * q), 1.0));
        const double beta = std::acos(std::clamp((ac - d) / (2 * as), -1.0, 1.0));
        return {alpha, beta};
    }
    if (x == 1.0) return {0.0, 0.0};
    const double at = kernels::at(x);
    const double y = x + at;
    // 1 - y^2 = (1 - x - AT)(1 + x + AT)
    const double alpha = 2 * at / std::sqrt((1 - x - at) * (1 + y));
    const double beta = std::acos(std::clamp(y, -1.0, 1.0));
    return {alpha, beta};
}

std::string blowup_name(BlowupFamily family) {
    switch (family) {
        case BlowupFamily::LoxodromicNaive: return "skew-loxodromic-naive";
        case BlowupFamily::LoxodromicRidge: return "skew-loxodromic-ridge";
        case BlowupFamily::EllipticRidge: return "skew-elliptic-ridge";
        case BlowupFamily::Critical: return "critical";
        case BlowupFamily::Parabolic: return "parabolic";
        case BlowupFamily::HyperbolicTuned: return "hyperbolic-tuned";
    }
    return "";
}

BlowupSample blowup_sample(BlowupFamily family, double distance) {
    if (!(distance > 0.0)) throw OutOfDomain("boundary distance must be positive");
    switch (family) {
        case BlowupFamily::LoxodromicNaive: {
            const double cr = std::cbrt(kPi * kPi * distance);
            return {distance, mu_norm(dev::SkewLoxodromic{cr - distance, kPi - cr})};
        }
        case BlowupFamily::LoxodromicRidge: {
            auto [a, b] = ridge(RidgeFamily::SkewLoxodromic, -1 + distance);
            return {kPi - a - b, mu_norm(dev::SkewLoxodromic{a, b})};
        }
        case BlowupFamily::EllipticRidge: {
            auto [a, b] = ridge(RidgeFamily::SkewElliptic, -1 + distance);
            return {kPi - a - b, mu_norm(dev::SkewElliptic{a, b})};
        }
        case BlowupFamily::Critical:
            return {distance, critical_norm_from_gap(distance / kPi)};
        case BlowupFamily::Parabolic:
            return {distance, mu_norm(dev::Parabolic{kPi - distance})};
        case BlowupFamily::HyperbolicTuned: {
            // sin t = p / pi, cos t = sqrt(u (2 - u)) with u = gap / pi
            const double u = distance / kPi;
            return {distance, hyperbolic_norm(kPi - distance, 1 - u, std::sqrt(u * (2 - u)))};
        }
    }
    throw OutOfDomain("unknown family");
}

double blowup_exponent(BlowupFamily family) {
    switch (family) {
        case BlowupFamily::LoxodromicNaive:
        case BlowupFamily::LoxodromicRidge:
        case BlowupFamily::EllipticRidge: return -1.0 / 3.0;
        default: return -0.5;
    }
}

std::optional<double> asymptotic_constant(BlowupFamily family) {
    switch (family) {
        case BlowupFamily::LoxodromicNaive: return std::sqrt(12 * std::pow(kPi, 8.0 / 3.0) / (kPi * kPi + 6));
        case BlowupFamily::LoxodromicRidge: return 2 * kPi * std::pow(3.0, -1.0 / 3.0);
        case BlowupFamily::EllipticRidge: return std::nullopt;
        default: return kSqrtTwoPiThreeHalves;
    }
}

std::optional<double> half_order_coefficient(BlowupFamily family) {
    const double r = std::sqrt(2 * kPi);
    switch (family) {
        case BlowupFamily::Critical: return -std::sqrt(2.0) / 4 * std::sqrt(kPi);
        case BlowupFamily::Parabolic: return r * (kPi * kPi - 1) / 4;
        case BlowupFamily::HyperbolicTuned: return r * (4 * kPi * kPi - 3) / 12;
        default: return std::nullopt;
    }
}

double richardson_limit(double gap1, double g1, double gap2, double g2, double gamma) {
    const double w1 = std::pow(gap1, gamma);
    const double w2 = std::pow(gap2, gamma);
    return (g2 * w1 - g1 * w2) / (w1 - w2);
}

double fit_leading_constant(BlowupFamily family, double distance) {
    const double e = blowup_exponent(family);
    const BlowupSample s1 = blowup_sample(family, distance);
    const BlowupSample s2 = blowup_sample(family, distance / 10);
    const double g1 = s1.norm * std::pow(s1.gap, -e);
    const double g2 = s2.norm * std::pow(s2.gap, -e);
    // next correction is gap^(2/3) for the -1/3 laws and gap^(1/2) for the -1/2 laws
    const double gamma = e < -0.4 ? 0.5 : 2.0 / 3.0;
    return richardson_limit(s1.gap, g1, s2.gap, g2, gamma);
}

double constant_term(BlowupFamily family, double distance) {
    if (blowup_exponent(family) != -0.5) throw OutOfDomain("constant term applies to the -1/2 families");
    const BlowupSample s = blowup_sample(family, distance);
    return s.norm - kSqrtTwoPiThreeHalves / std::sqrt(s.gap);
}

double fit_half_order_coefficient(BlowupFamily family, double distance) {
    if (blowup_exponent(family) != -0.5) throw OutOfDomain("half-order coefficient applies to the -1/2 families");
    auto g = [family](double d) {
        const BlowupSample s = blowup_sample(family, d);
        return std::pair{s.gap, (s.norm - kSqrtTwoPiThreeHalves / std::sqrt(s.gap) + 2 * kPi) / std::sqrt(s.gap)};
    };
    auto [d1, g1] = g(distance);
    auto [d2, g2] = g(distance / 10);
    return richardson_limit(d1, g1, d2, g2, 0.5);
}

}  // namespace magnus
