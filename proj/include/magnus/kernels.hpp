#pragma once

namespace magnus::kernels {

// AC(x) = arccos(x)/sqrt(1-x^2), continued by arcosh(x)/sqrt(x^2-1) for x > 1. Requires x > -1.
double ac(double x);
// AS(x) = sqrt((AC(x)^2 - 1)/(1 - x^2)). Requires x > -1.
double as(double x);
// AT(x) = (AC(x) - 1)/AS(x). Requires x > -1.
double at(double x);
// dAC/dx = (x AC(x) - 1)/(1 - x^2), by its series near x = 1.
double ac_derivative(double x);

// CCC(x): cos(sqrt(-x)) for x < 0, cosh(sqrt(x)) for x >= 0.
double cosh_sqrt(double x);
// SSS(x): sin(sqrt(-x))/sqrt(-x) for x < 0, sinh(sqrt(x))/sqrt(x) for x > 0, 1 at 0.
double sinh_sqrt_ratio(double x);

// sin(y)/y and sinh(y)/y.
double sinc(double y);
double sinhc(double y);

}  // namespace magnus::kernels
