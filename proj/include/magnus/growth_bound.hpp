#pragma once

namespace magnus {

struct HBoundReport {
    double p = 0.0;
    double boundary_terms = 0.0;
    double integral = 0.0;
    double H = 0.0;
    double quadrature_error_estimate = 0.0;
};

// Integrand of the growth bound, evaluated through four factors that stay finite at their
// removable singularities. Requires 0 <= p < pi; t is taken in [0, pi].
double hh(double p, double t);

// Bound on |log A| for CR(A) inside exp D(0, p). Requires 0 <= p < pi.
HBoundReport h_bound(double p);

// Constant term of H(p) - sqrt(2) pi^(3/2) / sqrt(pi - p) as p -> pi.
double h_pi();

// HH(pi, t) - 2/cos^2 t, finite across t = pi/2.
double h_pi_integrand(double t);

// Curve parameter of the supporting lines used for the bound, -(1 + e^(pc)(c p sinc(ps) - cos(ps)))
// / (1 + e^(-pc)(-c p sinc(ps) - cos(ps))) with c = cos t, s = sin t.
double support_parameter(double p, double t);
// Limits of support_parameter at t -> 0+ and t -> pi-.
double support_parameter_at_zero(double p);
double support_parameter_at_pi(double p);

// Quadrature tolerance: 1e-10 unless MAGNUS_QUAD_TOL holds a positive number.
double quadrature_tolerance();

}  // namespace magnus
