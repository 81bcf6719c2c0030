#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "magnus/developments.hpp"
#include "magnus/errors.hpp"
#include "magnus/matrix_log.hpp"
#include "magnus/measures.hpp"

using namespace magnus;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double principal_log_abs(Complex z) { return std::hypot(std::log(std::abs(z)), std::arg(z)); }

}  // namespace

TEST_CASE("rotating densities have constant norm") {
    const Segment s = Segment::rotating(Mat2{0.3, 1.2, -0.4, 0.1}, 1.7, 0.4, 2.0, 0.2, -0.5);
    const double n0 = op_norm(s.density(0.0));
    for (double th : {0.3, 0.9, 1.5, 2.0}) CHECK(op_norm(s.density(th)) == Approx(n0).epsilon(1e-14));
    CHECK(s.density_norm() == Approx(n0).epsilon(1e-14));
}

TEST_CASE("critical density is the rotating K~ frame") {
    const MeasureSpec phi = gallery::critical(kPi);
    for (double th : {0.0, 0.4, 1.1, 2.9}) {
        const Mat2 expected{-std::sin(2 * th), std::cos(2 * th), std::cos(2 * th), std::sin(2 * th)};
        CHECK(max_abs(phi.segments[0].density(th) - expected) < 1e-15);
    }
}

TEST_CASE("total variation") {
    CHECK(total_variation(gallery::critical(kPi)) == Approx(kPi));
    CHECK(total_variation(gallery::skew_loxodromic(0.7, 1.3)) == Approx(2.0));
    CHECK(total_variation(gallery::skew_elliptic(0.7, 1.3)) == Approx(2.0));
    for (double h : {0.0, 0.25, 0.5, 1.0}) CHECK(total_variation(gallery::elliptic(h, 2.0)) == Approx(2.0));
    CHECK(total_variation(MeasureSpec{}) == 0.0);
}

TEST_CASE("left exponential closed forms") {
    CHECK(max_abs(lexp(gallery::critical(kPi)) - Mat2{-1, -2 * kPi, 0, -1}) < 1e-14);
    CHECK(max_abs(lexp(MeasureSpec{}) - Mat2::identity()) == 0.0);
    const double a = 0.6, b = 1.1;
    const Mat2 expected{std::exp(a) * std::cos(b), -std::exp(-a) * std::sin(b), std::exp(a) * std::sin(b), std::exp(-a) * std::cos(b)};
    CHECK(max_abs(lexp(gallery::skew_loxodromic(a, b)) - expected) < 1e-14);
    CHECK(max_abs(lexp(gallery::elliptic(0.5, 2.0)) - E(2.0, 1.0)) < 1e-14);
    CHECK(max_abs(lexp(gallery::development(2.0, 0.3)) - W(2.0, 0.6)) < 1e-14);
}

TEST_CASE("numeric product integral converges at second order") {
    const MeasureSpec phi = gallery::critical(kPi);
    const Mat2 exact = lexp(phi);
    double prev = max_abs(lexp_numeric(phi, 16) - exact);
    for (int steps = 32; steps <= 4096; steps *= 2) {
        const double err = max_abs(lexp_numeric(phi, steps) - exact);
        CHECK(prev / err == Approx(4.0).epsilon(0.05));
        prev = err;
    }
    const MeasureSpec constant{{Segment::constant(Mat2{0.3, -1, 2, 0.1}, 1.5)}};
    CHECK(max_abs(lexp_numeric(constant, 1) - lexp(constant)) < 1e-14);
    CHECK(max_abs(lexp_numeric(gallery::elliptic(0.5, 2.0), 1 << 14) - E(2.0, 1.0)) < 1e-8);
    CHECK_THROWS_AS(lexp_numeric(phi, 0), OutOfDomain);
}

TEST_CASE("restriction and slicing") {
    const MeasureSpec phi = gallery::critical(kPi);
    CHECK(max_abs(lexp(restrict(phi, kPi / 2)) - W(kPi / 2, kPi / 2)) < 1e-14);
    CHECK(restrict(phi, 0).segments.empty());
    CHECK(max_abs(lexp(restrict(phi, 0)) - Mat2::identity()) == 0.0);
    CHECK_THROWS_AS(restrict(phi, 4.0), OutOfDomain);
    const MeasureSpec mixed = gallery::critical(1.2).then(gallery::skew_loxodromic(0.4, 0.9)).then(gallery::development(1.0, -0.5));
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0, mixed.length());
    for (int i = 0; i < 50; ++i) {
        double x1 = u(rng), x2 = u(rng);
        if (x1 > x2) std::swap(x1, x2);
        const Mat2 whole = lexp(restrict(mixed, x2));
        const Mat2 parts = lexp(slice(mixed, x1, x2)) * lexp(restrict(mixed, x1));
        CHECK(max_abs(whole - parts) < 1e-13);
    }
}

TEST_CASE("reverse runs the measure backwards") {
    // Reversal of a reflected-time measure: lexp(reverse(phi)) is the right-ordered exponential,
    // i.e. the transpose-order product; for two constant pieces that is exp(alpha J) exp(beta I).
    const MeasureSpec ups = gallery::skew_loxodromic(0.4, 0.9);
    const Mat2 right = exp2(0.4 * Mat2::j_tilde()) * exp2(0.9 * Mat2::i_tilde());
    CHECK(max_abs(lexp(reverse(ups)) - right) < 1e-14);
    const MeasureSpec phi = gallery::development(1.5, 0.4).then(gallery::critical(0.7));
    CHECK(max_abs(lexp(reverse(reverse(phi))) - lexp(phi)) < 1e-14);
    CHECK(total_variation(reverse(phi)) == Approx(total_variation(phi)));
}

TEST_CASE("determinant of the left exponential") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 100; ++i) {
        MeasureSpec phi{{Segment::constant(Mat2{u(rng), u(rng), u(rng), u(rng)}, 0.5 + u(rng) / 2),
                         Segment::rotating(Mat2{u(rng), u(rng), u(rng), u(rng)}, 2 * u(rng), u(rng), 1.0, u(rng), u(rng))}};
        CHECK(lexp(phi).det() == Approx(std::exp(total_trace(phi))).epsilon(1e-10));
    }
}

TEST_CASE("measure files round-trip") {
    const MeasureSpec phi = gallery::critical(1.2).then(gallery::skew_loxodromic(0.4, 0.9));
    const MeasureSpec back = measure_from_json(measure_to_json(phi));
    CHECK(max_abs(lexp(back) - lexp(phi)) == 0.0);
    const MeasureSpec parsed = measure_from_json(R"({"segments":[
        {"kind":"rotating","frame":[[0,1],[1,0]],"frequency":1,"phase":0,"drift":[0,0],"length":3.141592653589793}]})");
    CHECK(max_abs(lexp(parsed) - Mat2{-1, -2 * kPi, 0, -1}) < 1e-14);
    CHECK_THROWS_AS(measure_from_json("{\"segments\":[{\"kind\":\"spiral\",\"length\":1}]}"), OutOfDomain);
    CHECK_THROWS_AS(measure_from_json("not json"), OutOfDomain);
    CHECK_THROWS_AS(measure_from_json(R"({"segments":[{"kind":"constant","matrix":[[1,0],[0,1]],"length":-1}]})"), OutOfDomain);
}

TEST_CASE("conformal ranges of subcritical left exponentials stay in exp D(0, variation)") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    for (const auto& [name, phi] : gallery::subcritical()) {
        CAPTURE(name);
        const double tv = total_variation(phi);
        REQUIRE(tv < kPi);
        const Mat2 a = lexp(phi);
        for (int i = 0; i < 32; ++i) {
            const double th = angle(rng);
            const Vec2 x{std::cos(th), std::sin(th)};
            CHECK(principal_log_abs(weighted_quotient(a * x, x)) <= tv + 1e-9);
        }
    }
}

TEST_CASE("log distance along a trajectory is bounded by its log length") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    for (const auto& [name, phi] : gallery::subcritical()) {
        CAPTURE(name);
        const double th = angle(rng);
        const Vec2 x{std::cos(th), std::sin(th)};
        const int n = 1000;
        std::vector<Vec2> z;
        for (int k = 0; k <= n; ++k) z.push_back(lexp(restrict(phi, phi.length() * k / n)) * x);
        double path = 0;
        for (int k = 0; k < n; ++k) path += principal_log_abs(weighted_quotient(z[static_cast<std::size_t>(k + 1)], z[static_cast<std::size_t>(k)]));
        CHECK(principal_log_abs(weighted_quotient(z.back(), z.front())) <= path + 1e-6);
    }
}
