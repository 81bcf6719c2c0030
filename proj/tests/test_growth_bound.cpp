#include <doctest.h>

#include <cmath>
#include <limits>
#include <initializer_list>
#include <numbers>

#include "magnus/errors.hpp"
#include "magnus/growth_bound.hpp"
#include "magnus/matrix_log.hpp"
#include "magnus/measures.hpp"

using namespace magnus;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("integrand at small p and at the ends") {
    CHECK(hh(0.01, 1.0) / 1e-4 == Approx(std::sin(1.0) / 3).epsilon(1e-3));
    CHECK(hh(1.5, 0.0) == Approx(0.0).scale(1));
    CHECK(hh(1.5, 1e-6) < 1e-4);
    CHECK(hh(0.0, 0.7) == 0.0);
    for (double p : {0.5, 1.5, 3.0})
        for (double t : {0.1, 0.7, 1.3}) CHECK(hh(p, t) == Approx(hh(p, kPi - t)).epsilon(1e-13));
    CHECK_THROWS_AS(hh(kPi, 1.0), OutOfDomain);
    CHECK_THROWS_AS(hh(-0.1, 1.0), OutOfDomain);
}

TEST_CASE("integrand is positive and finite") {
    for (double p : {0.1, 1.0, 2.0, 3.0, 3.14})
        for (int k = 1; k < 50; ++k) {
            const double v = hh(p, kPi * k / 50);
            CHECK(v > 0);
            CHECK(std::isfinite(v));
        }
}

TEST_CASE("growth bound values") {
    const HBoundReport zero = h_bound(0.0);
    CHECK(zero.H == 0.0);
    const HBoundReport r = h_bound(0.1);
    CHECK(r.H == Approx(0.1 + 0.0025 + 23.0 / 864 * 1e-4).epsilon(1e-5).scale(1));
    CHECK(r.H == Approx(r.boundary_terms + r.integral).epsilon(1e-15));
    const double gap = 1e-4;
    const double lead = std::sqrt(2.0) * std::pow(kPi, 1.5);
    const double ratio = h_bound(kPi - gap).H * std::sqrt(gap) / lead;
    CHECK(ratio >= 0.98);
    CHECK(ratio <= 1.02);
    CHECK_THROWS_AS(h_bound(kPi), OutOfDomain);
    CHECK_THROWS_AS(h_bound(-1.0), OutOfDomain);
}

TEST_CASE("boundary terms match the closed form") {
    for (double p : {0.3, 1.0, 2.5}) {
        const double closed = p - 2 * std::log(2 * std::cosh(p / 2) - 2 / p * std::sinh(p / 2));
        CHECK(h_bound(p).boundary_terms == Approx(closed).epsilon(1e-13));
    }
}

TEST_CASE("small-p series with sixth-order residual") {
    auto residual = [](double p) { return h_bound(p).H - (p + p * p / 4 + 23.0 / 864 * std::pow(p, 4)); };
    const double ratio = residual(0.2) / residual(0.1);
    CHECK(ratio >= 32);
    CHECK(ratio <= 96);
}

TEST_CASE("regularized constant") {
    CHECK(h_pi() == Approx(-2.513).epsilon(0.01 / 2.513));
    CHECK(std::abs(h_pi_integrand(kPi / 2)) < 1e3);
    CHECK(std::isfinite(h_pi_integrand(kPi / 2)));
    CHECK(h_pi_integrand(kPi / 2 - 1e-4) == Approx(h_pi_integrand(kPi / 2)).epsilon(1e-5));
    CHECK(h_pi_integrand(0.4) == Approx(hh(kPi - 1e-12, 0.4) - 2 / std::pow(std::cos(0.4), 2)).epsilon(1e-8));
}

TEST_CASE("crude bound") {
    for (double p : {0.5, 1.5, 2.5, 3.0}) CHECK(h_bound(p).H <= 1.05 * p * std::sqrt((kPi + p) / (kPi - p)));
}

TEST_CASE("growth bound increases") {
    double prev = -1;
    for (int k = 0; k < 200; ++k) {
        const double p = (kPi - 1e-3) * k / 199;
        const double h = h_bound(p).H;
        CHECK(h > prev);
        prev = h;
    }
}

TEST_CASE("log norms of subcritical left exponentials stay below the bound") {
    for (const auto& [name, phi] : gallery::subcritical()) {
        CAPTURE(name);
        const double tv = total_variation(phi);
        CHECK(op_norm(log2(lexp(phi))) <= h_bound(tv).H + 1e-8);
    }
}

TEST_CASE("support parameter increases between its end values") {
    for (double p : {1.0, 2.0, 3.0}) {
        double prev = -std::numeric_limits<double>::infinity();
        for (int k = 1; k < 400; ++k) {
            const double v = support_parameter(p, kPi * k / 400);
            CHECK(v > prev);
            prev = v;
        }
        const double at_zero = -(1 - std::exp(p) * (1 - p)) / (1 - std::exp(-p) * (1 + p));
        CHECK(support_parameter_at_zero(p) == Approx(at_zero).epsilon(1e-9));
        CHECK(support_parameter(p, 1e-7) == Approx(at_zero).epsilon(1e-6));
        CHECK(support_parameter(p, kPi - 1e-7) == Approx(support_parameter_at_pi(p)).epsilon(1e-6));
    }
}

TEST_CASE("quadrature tolerance") { CHECK(quadrature_tolerance() > 0); }
