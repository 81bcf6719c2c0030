#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "magnus/mat2.hpp"
#include "magnus/measures.hpp"

namespace magnus {

// exp(w I~)(CCC(p^2 - w^2) Id + SSS(p^2 - w^2)(-w I~ + p K~))
Mat2 W(double p, double w);
// (cos p Id + sin p I~)(Id - w I~ + w K~)
Mat2 E(double p, double w);

namespace dev {

struct SkewLoxodromic {
    double alpha = 0.0;
    double beta = 0.0;
};
struct SkewElliptic {
    double alpha = 0.0;
    double beta = 0.0;
};
// t times the unit-speed critical measure on [0, pi].
struct Critical {
    double t = 0.0;
};
// Unit-speed critical measure on [0, p].
struct Parabolic {
    double p = 0.0;
};
struct Elliptic {
    double h = 0.0;
    double p = 0.0;
};
// Development at speed sin t on [0, p].
struct Hyperbolic {
    double t = 0.0;
    double p = 0.0;
};

}  // namespace dev

using DevelopmentId =
    std::variant<dev::SkewLoxodromic, dev::SkewElliptic, dev::Critical, dev::Parabolic, dev::Elliptic, dev::Hyperbolic>;

std::string development_name(const DevelopmentId& id);
MeasureSpec development_measure(const DevelopmentId& id);
// Closed form of lexp(development_measure(id)).
Mat2 development_matrix(const DevelopmentId& id);
// Closed form of |log lexp(measure)|; throws LogabilityError outside the log-able regime.
double mu_norm(const DevelopmentId& id);

// Closed forms of log lexp for the two skew compositions and the scaled critical measure.
Mat2 skew_loxodromic_log(double alpha, double beta);
Mat2 skew_elliptic_log(double alpha, double beta);
Mat2 critical_log(double t);

// n-th Magnus term of the critical measure on [0, pi] and its norm (valid for large n).
Mat2 critical_magnus_term(int n);
double critical_magnus_term_norm(int n);

enum class RidgeFamily { SkewLoxodromic, SkewElliptic };
// Optimal (alpha, beta) along the elliptic ridge, x in (-1, 1].
std::pair<double, double> ridge(RidgeFamily family, double x);

enum class BlowupFamily { LoxodromicNaive, LoxodromicRidge, EllipticRidge, Critical, Parabolic, HyperbolicTuned };

std::string blowup_name(BlowupFamily family);

struct BlowupSample {
    double gap = 0.0;   // pi - total variation
    double norm = 0.0;  // |log lexp|
};

// Family member at the given distance from its boundary: pi - p for the p-families, x + 1 for
// the ridges.
BlowupSample blowup_sample(BlowupFamily family, double distance);

// -1/3 for the skew compositions, -1/2 for the developments.
double blowup_exponent(BlowupFamily family);
// Closed-form leading constant C in |mu| = C gap^exponent + ...; absent where none is established.
std::optional<double> asymptotic_constant(BlowupFamily family);
// Coefficient of gap^(1/2) after the -2 pi constant, for the -1/2 families.
std::optional<double> half_order_coefficient(BlowupFamily family);

// Limit of g at gap -> 0 from two samples of g = C + K gap^gamma.
double richardson_limit(double gap1, double g1, double gap2, double g2, double gamma);

// Leading constant from samples at `distance` and distance/10.
double fit_leading_constant(BlowupFamily family, double distance);
// Constant term |mu| - C gap^(-1/2) at the given distance.
double constant_term(BlowupFamily family, double distance);
// Coefficient of gap^(1/2) from samples at `distance` and distance/10 (-1/2 families only).
double fit_half_order_coefficient(BlowupFamily family, double distance);

}  // namespace magnus
