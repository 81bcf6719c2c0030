#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <random>

#include "magnus/developments.hpp"
#include "magnus/errors.hpp"
#include "magnus/geometry.hpp"
#include "magnus/matrix_log.hpp"
#include "magnus/measures.hpp"
#include "magnus/shells.hpp"

using namespace magnus;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

Complex gamma_curve(double p, double t) { return std::exp(p * std::polar(1.0, t)); }

// Curvature of t -> exp(p e^(it)) by central differences.
double boundary_curvature(double p, double t) {
    const double h = 1e-4;
    const Complex d1 = (gamma_curve(p, t + h) - gamma_curve(p, t - h)) / (2 * h);
    const Complex d2 = (gamma_curve(p, t + h) - 2.0 * gamma_curve(p, t) + gamma_curve(p, t - h)) / (h * h);
    return std::imag(std::conj(d1) * d2) / std::pow(std::abs(d1), 3);
}

struct DiskCoords {
    double a, b, r;
};

DiskCoords coords(const Mat2& m) {
    const Disk d = cd(m);
    return {d.center.real(), d.center.imag(), d.radius};
}

Mat2 hyperbolic_pair(double p, double s1, double s2, double eps) {
    const Mat2 r = Mat2::rotation(eps);
    return W(p / 2, p / 2 * s2) * r * W(-p / 2, -p / 2 * s1).inverse() * r.transpose();
}

Mat2 parabolic_pair(double p, double t) {
    const double c = std::cos(t);
    const double len = std::sinh(p * c) / c;
    return exp2((len - p) * Mat2::i_tilde()) * W(-p, -p * std::sin(t)).inverse();
}

double touch_angle(const DiskCoords& d, double sign) { return 2 * std::atan((d.r + sign * d.b) / (d.a + 1)); }

}  // namespace

TEST_CASE("maximal disk special values") {
    for (double p : {0.5, 2.0}) {
        const Disk d0 = maximal_disk(p, 0.0);
        const Disk w0 = cd(W(p, 0.0));
        CHECK(std::abs(d0.center - w0.center) < 1e-12);
        CHECK(d0.radius == Approx(w0.radius).epsilon(1e-12));
        CHECK(d0.radius == Approx(std::sinh(p)).epsilon(1e-14));
        const Disk dq = maximal_disk(p, kPi / 2);
        const Complex expected(std::cos(p) + p * std::sin(p), std::sin(p) - p * std::cos(p));
        CHECK(std::abs(dq.center - expected) < 1e-12);
        CHECK(dq.radius == Approx(p).epsilon(1e-12));
    }
    const Disk d = maximal_disk(2.0, 0.4);
    const Disk w = cd(W(2.0, 2.0 * std::sin(0.4)));
    CHECK(std::abs(d.center - w.center) < 1e-10);
    CHECK(d.radius == Approx(w.radius).epsilon(1e-10));
    CHECK_THROWS_AS(maximal_disk(kPi, 0.1), OutOfDomain);
    CHECK_THROWS_AS(maximal_disk(1.0, 2.0), OutOfDomain);
}

TEST_CASE("maximal disks touch the boundary curve at both points") {
    for (double p : {0.7, 1.9, 3.0})
        for (double t : {-1.2, -0.3, 0.0, 0.8, 1.5}) {
            const Disk d = maximal_disk(p, t);
            CHECK(std::abs(distance_to_circle(d, gamma_curve(p, t))) < 1e-10 * (1 + d.radius));
            CHECK(std::abs(distance_to_circle(d, gamma_curve(p, kPi - t))) < 1e-10 * (1 + d.radius));
        }
}

TEST_CASE("maximal disk radius exceeds the radius of curvature of the boundary") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> up(0.05, 3.1), ut(-1.5, 1.5);
    for (int i = 0; i < 100; ++i) {
        const double p = up(rng), t = ut(rng);
        const double c = std::cos(t);
        const double kappa = (1 + p * c) / (p * std::exp(p * c));
        CHECK(boundary_curvature(p, t) == Approx(kappa).epsilon(1e-5));
        CHECK(kappa < 1 / maximal_disk(p, t).radius);
    }
}

TEST_CASE("maximal disk centers turn monotonically") {
    for (double p : {0.5, 1.5, 3.0}) {
        double prev = -std::numeric_limits<double>::infinity();
        double last = 0;
        double offset = 0;
        for (int k = 1; k < 100; ++k) {
            const double t = -kPi / 2 + kPi * k / 100;
            double a = std::arg(maximal_disk(p, t).center) + offset;
            if (a < last - kPi) {
                offset += 2 * kPi;
                a += 2 * kPi;
            }
            last = a;
            CHECK(a > prev);
            prev = a;
        }
    }
}

TEST_CASE("maximal disks lie in the exponential disk") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (double p : {0.4, 1.6, 3.0})
        for (double t : {-1.0, 0.0, 0.5, 1.4}) {
            const Disk d = maximal_disk(p, t);
            for (int i = 0; i < 1000; ++i) {
                const Complex z = d.center + d.radius * std::sqrt(u(rng)) * std::polar(1.0, 2 * kPi * u(rng));
                CHECK(std::abs(std::log(z)) <= p + 1e-9);
            }
        }
}

TEST_CASE("normal form composition examples") {
    CHECK(max_abs(nw_compose({}) - Mat2::identity()) < 1e-15);
    for (double t : {-0.7, 0.3, 1.2}) {
        const double p = 1.3;
        NormalForm a{p, 0.0, t, Mat2::k_tilde()};
        NormalForm b{p, 0.0, t, frame_from_angle(0.8)};
        const Mat2 expected = std::exp(p * std::cos(t)) * Mat2::rotation(p * std::sin(t));
        CHECK(max_abs(nw_compose(a) - expected) < 1e-14);
        CHECK(max_abs(nw_compose(b) - expected) < 1e-14);
        // The development carries the frame rotated by its own turning angle p sin t.
        CHECK(max_abs(nw_compose({0.0, p, t, frame_from_angle(p * std::sin(t))}) - W(p, p * std::sin(t))) < 1e-13);
    }
    CHECK(max_abs(nw_compose({0.0, 1.3, 0.0, Mat2::k_tilde()}) - W(1.3, 0.0)) < 1e-14);
    for (double beta : {-2.0, 0.0, 0.5, 3.0}) {
        const Mat2 f = frame_from_angle(beta);
        const QuatCoords q = f.quat();
        CHECK(std::abs(q.id) < 1e-16);
        CHECK(std::abs(q.i) < 1e-16);
        CHECK(std::hypot(q.j, q.k) == Approx(1.0).epsilon(1e-15));
        CHECK(frame_angle(f) == Approx(beta).epsilon(1e-14).scale(1));
    }
}

TEST_CASE("normal form measure reproduces the composition") {
    const NormalForm cases[] = {{0.3, 0.7, 0.9, Mat2::k_tilde()},
                                {1.0, 1.5, -0.4, frame_from_angle(1.1)},
                                {0.0, 2.0, 0.6, frame_from_angle(-0.3)},
                                {0.5, 0.0, 1.0, Mat2::k_tilde()}};
    for (const NormalForm& nf : cases) {
        const MeasureSpec phi = nw_measure(nf);
        CHECK(total_variation(phi) == Approx(nf.p1 + nf.p2).epsilon(1e-13));
        CHECK(max_abs(lexp(phi) - nw_compose(nf)) < 1e-10);
    }
}

TEST_CASE("classification examples") {
    const MagnusClass rot = classify(Mat2::rotation(1.0));
    CHECK(rot.kind == MagnusKind::Quasicomplex);
    CHECK(rot.mp == Approx(1.0).epsilon(1e-12));
    const MagnusClass crit = classify(W(kPi, kPi));
    CHECK(crit.kind == MagnusKind::Parabolic);
    CHECK(crit.mp == Approx(kPi).epsilon(1e-9));
    const MagnusClass z = classify(tan_fixed_point_matrix());
    CHECK(z.kind == MagnusKind::Parabolic);
    CHECK(z.mp == Approx(4.49340945790906).epsilon(1e-9));
    CHECK(tan_fixed_point() == Approx(4.49340945790906).epsilon(1e-14));
    CHECK(classify(Mat2::identity()).kind == MagnusKind::Identity);
    CHECK(classify(2.0 * W(1.0, 0.3)).kind == MagnusKind::Loxodromic);
    CHECK_THROWS_AS(classify(Mat2{1, 0, 0, -1}), OutOfDomain);
    CHECK(kind_name(MagnusKind::Hyperbolic) == "hyperbolic");
}

TEST_CASE("developments are hyperbolic with their own variation, parabolic at full speed") {
    for (double p : {0.5, 1.5, 2.5}) {
        for (double t : {-1.2, -0.5, 0.0, 0.3, 1.1}) {
            const MagnusClass c = classify(W(p, p * std::sin(t)));
            CHECK(c.kind == MagnusKind::Hyperbolic);
            CHECK(c.mp == Approx(p).epsilon(1e-8));
        }
        for (double s : {-1.0, 1.0}) {
            const MagnusClass c = classify(W(p, p * s));
            CHECK(c.kind == MagnusKind::Parabolic);
            CHECK(c.mp == Approx(p).epsilon(1e-8));
        }
    }
}

TEST_CASE("Magnus exponent examples") {
    CHECK(mp(Mat2::identity()) == 0.0);
    CHECK(mp(Mat2::diag(std::exp(1.0), std::exp(-1.0))) == Approx(1.0).epsilon(1e-11));
    CHECK(mp(W(2.0, 2.0 * std::sin(0.4))) == Approx(2.0).epsilon(5e-9));
}

TEST_CASE("Magnus exponent is the boundary supremum of the log") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int i = 0; i < 50; ++i) {
        const Mat2 a = exp2(Mat2{u(rng), u(rng), u(rng), u(rng)});
        const Disk d = cd(a);
        double best = 0;
        for (int k = 0; k < 20000; ++k) best = std::max(best, std::abs(std::log(d.center + d.radius * std::polar(1.0, 2 * kPi * k / 20000))));
        CHECK(mp(a) == Approx(best).epsilon(1e-6));
        CHECK(mp(a) <= op_norm(log2(a)) + 1e-12);
    }
}

TEST_CASE("normal form decomposition") {
    const NormalForm nf{0.3, 0.7, 0.9, Mat2::k_tilde()};
    const NormalForm back = nw_decompose(nw_compose(nf));
    CHECK(back.p1 == Approx(0.3).epsilon(1e-8));
    CHECK(back.p2 == Approx(0.7).epsilon(1e-8));
    CHECK(back.t == Approx(0.9).epsilon(1e-8));
    CHECK(max_abs(back.F - Mat2::k_tilde()) < 1e-8);

    const NormalForm q = nw_decompose(std::exp(0.5) * Mat2::rotation(0.2));
    CHECK(q.p2 < 1e-12);
    CHECK(q.p1 == Approx(std::hypot(0.5, 0.2)).epsilon(1e-10));
    CHECK(q.t == Approx(std::atan2(0.2, 0.5)).epsilon(1e-10));
    CHECK(q.quasicomplex);

    const NormalForm h = nw_decompose(W(1.5, 0.0));
    CHECK(h.p1 < 1e-8);
    CHECK(h.p2 == Approx(1.5).epsilon(1e-8));
    CHECK(std::abs(h.t) < 1e-8);
    CHECK(h.mirror);

    CHECK_THROWS_AS(nw_decompose(W(kPi, kPi)), OutOfDomain);
}

TEST_CASE("normal form round trip over random data") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 200; ++i) {
        const double p = 0.1 + 2.9 * u(rng);
        const double p1 = p * (0.05 + 0.9 * u(rng));
        const NormalForm nf{p1, p - p1, (u(rng) - 0.5) * 3.0, frame_from_angle(2 * kPi * u(rng))};
        const Mat2 a = nw_compose(nf);
        const NormalForm back = nw_decompose(a);
        CHECK(back.p1 + back.p2 == Approx(mp(a)).epsilon(1e-8));
        CHECK(max_abs(nw_compose(back) - a) < 1e-8 * op_norm(a));
    }
}

TEST_CASE("small-p expansion of the Magnus exponent") {
    CHECK(mp_small_asymptotic_check(0.1, 0.3) < 1e-6);
    const double ratio = mp_small_asymptotic_check(0.2, 0.3) / mp_small_asymptotic_check(0.1, 0.3);
    CHECK(ratio >= 32);
    CHECK(ratio <= 96);
    CHECK(mp_small_asymptotic_check(0.1, 0.0) < 1e-6);
}

TEST_CASE("additivity along normal form measures") {
    const NormalForm nf{0.4, 0.8, 1.0, Mat2::k_tilde()};
    const AdditivityGaps g = additivity_check(nf, 0.6);
    CHECK(g.mp_gap < 1e-7);
    CHECK(g.ellip_gap < 1e-7);
    const AdditivityGaps z = additivity_check(nf, 0.0);
    CHECK(z.mp_gap < 1e-12);
    CHECK(z.ellip_gap < 1e-12);
    for (double x : {0.2, 0.9, 1.1}) {
        const AdditivityGaps gx = additivity_check({0.7, 1.1, -0.5, frame_from_angle(0.4)}, x);
        CHECK(gx.mp_gap < 1e-7);
        CHECK(gx.ellip_gap < 1e-7);
    }
    const NormalForm hyp{0.0, 1.6, 0.5, frame_from_angle(0.9)};
    for (double x : {0.3, 0.8, 1.4}) {
        const NormalForm part = nw_decompose(lexp(restrict(nw_measure(hyp), x)));
        CHECK(std::abs(part.ellip()) < 1e-7);
        CHECK(part.p2 == Approx(x).epsilon(1e-7));
    }
}

TEST_CASE("constant densities mixing both parts are not minimal") {
    const double v = 2.0;
    for (double t : {-1.0, 0.7, kPi / 2})
        for (double frac : {0.3, 0.6}) {
            const Mat2 quasi = std::cos(t) * Mat2::identity() + std::sin(t) * Mat2::i_tilde();
            const Mat2 m = frac * quasi + (1 - frac) * frame_from_angle(0.5);
            CHECK(op_norm(m) == Approx(1.0).epsilon(1e-14));
            CHECK(mp(exp2(v * m)) < v - 1e-6);
        }
    // Without an I~ part the normal density does not rotate, so a constant density is minimal.
    for (double frac : {0.0, 0.3, 0.6}) {
        const Mat2 m = frac * Mat2::identity() + (1 - frac) * frame_from_angle(0.5);
        CHECK(mp(exp2(v * m)) == Approx(v).epsilon(1e-9));
    }
    CHECK(mp(exp2(v * (std::cos(0.7) * Mat2::identity() + std::sin(0.7) * Mat2::i_tilde()))) == Approx(v).epsilon(1e-9));
}

TEST_CASE("critical measures at full variation are elliptic or parabolic") {
    for (double x : {1.0, 2.0, 3.0, kPi}) {
        const MagnusClass c = classify(lexp(restrict(gallery::critical(kPi), x)));
        CHECK(c.kind == MagnusKind::Parabolic);
        CHECK(c.mp == Approx(x).epsilon(1e-8));
    }
    for (double h : {0.25, 0.5, 0.75}) {
        const MagnusKind k = classify(lexp(gallery::elliptic(h, kPi))).kind;
        CHECK((k == MagnusKind::Elliptic || k == MagnusKind::Parabolic));
    }
}

TEST_CASE("twisted development pairs fit their small-p expansions") {
    const double p = 1e-2;
    const double s1 = std::sin(0.2), s2 = std::sin(0.5);
    SUBCASE("generic twist") {
        const double eps = 0.3;
        const DiskCoords d = coords(hyperbolic_pair(p, s1, s2, eps));
        const double lead = 0.25 * std::sin(2 * eps) * p * p;
        CHECK(touch_angle(d, 1) - d.r == Approx(-lead).epsilon(0.1));
        CHECK(touch_angle(d, -1) - d.r == Approx(lead).epsilon(0.1));
    }
    SUBCASE("quarter twist") {
        const DiskCoords d = coords(hyperbolic_pair(p, s1, s2, kPi / 2));
        const double lead = (s1 + s2) * p * p * p / 12;
        CHECK(touch_angle(d, 1) - d.r == Approx(-lead).epsilon(0.1));
        CHECK(touch_angle(d, -1) - d.r == Approx(lead).epsilon(0.1));
        CHECK(std::max(touch_angle(d, 1), touch_angle(d, -1)) == Approx(0.25 * std::abs(s1 + s2) * p * p).epsilon(0.1));
    }
    SUBCASE("cancelling quarter twist") {
        CHECK(max_abs(hyperbolic_pair(p, s1, -s1, kPi / 2) - Mat2::identity()) < 1e-14);
    }
    SUBCASE("no twist, different speeds") {
        const DiskCoords d = coords(hyperbolic_pair(p, s1, s2, 0.0));
        for (double sign : {1.0, -1.0})
            CHECK(touch_angle(d, sign) - d.r == Approx((sign * (s1 + s2) - 2) * p * p * p / 6).epsilon(0.1));
        const double m = mp(hyperbolic_pair(p, s1, s2, 0.0));
        CHECK(p * p - m * m == Approx(std::pow(p, 4) * (s2 - s1) * (s2 - s1) / 48).epsilon(0.1));
    }
}

TEST_CASE("rotation after a development fits its small-p expansion") {
    const double p = 1e-2;
    for (double t : {-0.9, 0.0, 0.6}) {
        const DiskCoords d = coords(parabolic_pair(p, t));
        const double c = std::cos(t), s = std::sin(t);
        const double expected = std::max(c * c + s - 1, -1 - s) / 3;
        CHECK((2 * std::atan((d.r + std::abs(d.b)) / (d.a + 1)) - p) / (p * p * p) == Approx(expected).epsilon(0.1));
        CHECK((std::sinh(p * c) / c - p) / (p * p * p) == Approx(c * c / 6).epsilon(0.1));
    }
    // Full-speed development followed by nothing: the rotation part has zero length.
    const Mat2 a = W(-p, p).inverse();
    const DiskCoords d = coords(a);
    CHECK(touch_angle(d, 1) - d.r == Approx(0.5 * p).epsilon(0.1));
    CHECK(touch_angle(d, -1) - d.r == Approx(-0.5 * p).epsilon(0.1));
    CHECK((2 * std::atan((d.r + std::abs(d.b)) / (d.a + 1)) - p) / (p * p * p) == Approx(-1.0 / 12).epsilon(0.1));
}
