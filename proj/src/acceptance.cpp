#include "magnus/acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "magnus/developments.hpp"
#include "magnus/geometry.hpp"
#include "magnus/growth_bound.hpp"
#include "magnus/magnus_series.hpp"
#include "magnus/matrix_log.hpp"
#include "magnus/measures.hpp"
#include "magnus/shells.hpp"

namespace magnus {

namespace {

constexpr double kPi = std::numbers::pi;

// Collects pass/fail of individual checks plus a short human-readable trail.
class Verdict {
public:
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            failed_.push_back(what);
        }
    }
    template <class T>
    void note(const std::string& key, T value) {
        std::ostringstream s;
        s << std::setprecision(6) << value;
        notes_ += (notes_.empty() ? "" : ", ") + key + "=" + s.str();
    }
    bool pass() const { return pass_; }
    std::string detail() const {
        std::string out = notes_;
        for (const std::string& f : failed_) out += (out.empty() ? "" : "; ") + std::string("failed: ") + f;
        return out;
    }

private:
    bool pass_ = true;
    std::string notes_;
    std::vector<std::string> failed_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Mat2 random_matrix(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    const double a = u(rng);
    const double b = u(rng);
    const double c = u(rng);
    const double d = u(rng);
    return {a, b, c, d};
}

Mat2 random_logable(std::mt19937_64& rng, double scale) {
    for (;;) {
        const Mat2 m = random_matrix(rng, scale);
        if (is_logable(m)) return m;
    }
}

// |log z| with the principal argument.
double principal_log_abs(Complex z) { return std::hypot(std::log(std::abs(z)), std::arg(z)); }

double hbound_series_residual(double p) {
    return h_bound(p).H - (p + p * p / 4 + 23.0 / 864.0 * std::pow(p, 4));
}

void hbound_series(Verdict& v) {
    const auto start = Clock::now();
    const double r1 = hbound_series_residual(0.1);
    const double r2 = hbound_series_residual(0.2);
    const double elapsed = seconds_since(start);
    const double ratio = r2 / r1;
    v.note("residual(0.1)", r1);
    v.note("residual ratio", ratio);
    v.note("seconds", elapsed);
    v.check(std::abs(r1) < 1e-5, "H(0.1) within 1e-5 of the series");
    v.check(ratio > 64 * 0.5 && ratio < 64 * 1.5, "residual ratio 64 +- 50%");
    v.check(elapsed < 1.0, "runtime under 1 s");
}

void h_pi_value(Verdict& v) {
    const auto start = Clock::now();
    const double h = h_pi();
    const double elapsed = seconds_since(start);
    v.note("H_pi", h);
    v.note("seconds", elapsed);
    v.check(std::abs(h + 2.513) <= 0.01, "H_pi = -2.513 +- 0.01");
    v.check(elapsed < 5.0, "runtime under 5 s");
}

void blowup_law(Verdict& v) {
    const double gap = 1e-4;
    const HBoundReport rep = h_bound(kPi - gap);
    const double lead = std::sqrt(2.0) * std::pow(kPi, 1.5);
    const double rel = std::abs(rep.H * std::sqrt(gap) - lead) / lead;
    v.note("H", rep.H);
    v.note("relative deviation", rel);
    v.check(rel < 0.02, "H sqrt(pi - p) within 2% of sqrt(2) pi^(3/2)");
}

void tan_fixed_point_class(Verdict& v) {
    const double z = tan_fixed_point();
    v.note("z", z);
    v.check(std::abs(std::tan(z) - z) < 1e-9 * z && z > kPi && z < 2 * kPi, "z solves tan z = z in (pi, 2pi)");
    const MagnusClass cls = classify(tan_fixed_point_matrix());
    v.note("kind", kind_name(cls.kind));
    v.note("mp - z", cls.mp - z);
    v.check(cls.kind == MagnusKind::Parabolic, "classified parabolic");
    v.check(std::abs(cls.mp - z) < 1e-8, "mp = z to 1e-8");
    const Disk d = cd(W(z, z));
    const double err = std::max(std::abs(d.center - Complex(-std::sqrt(1 + z * z), 0.0)), std::abs(d.radius - z));
    v.note("disk error", err);
    v.check(err < 1e-9, "cd(W(z, z)) = D(-sqrt(1 + z^2), z)");
}

void critical_closed_forms(Verdict& v) {
    double worst_norm = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double t = i / 10.0;
        const double got = op_norm(log2(W(kPi * t, kPi)));
        const double want = kPi * (1 / std::sqrt(1 - t * t) - 1) * (1 + t);
        worst_norm = std::max(worst_norm, std::abs(got - want));
    }
    const std::vector<Mat2> terms = magnus_terms(gallery::critical(kPi), 12);
    double worst_term = 0.0;
    for (int k = 1; k <= 12; ++k) worst_term = std::max(worst_term, max_abs(terms[static_cast<std::size_t>(k)] - critical_magnus_term(k)));
    const double scaled = critical_magnus_term_norm(200) * std::sqrt(200 / (2 * kPi));
    v.note("log norm error", worst_norm);
    v.note("term error", worst_term);
    v.note("|mu_200| sqrt(200/2pi)", scaled);
    v.check(worst_norm < 1e-9, "log norms of W(pi t, pi)");
    v.check(worst_term < 1e-10, "terms match the binomial form");
    v.check(scaled >= 0.9 && scaled <= 1.1, "|mu_200| asymptotics");
}

void term_bound(Verdict& v) {
    const auto start = Clock::now();
    const std::vector<MeasureSpec> sample{gallery::critical(1), gallery::critical(2), gallery::critical(3),
                                          gallery::skew_loxodromic(0.5, 0.5), gallery::elliptic(0.5, 2.0)};
    double worst = 0.0;
    for (const MeasureSpec& phi : sample) {
        const double tv = total_variation(phi);
        const std::vector<Mat2> terms = magnus_terms(phi, 20);
        for (int k = 1; k <= 20; ++k)
            worst = std::max(worst, op_norm(terms[static_cast<std::size_t>(k)]) / magnus_term_bound(k, tv));
    }
    const double elapsed = seconds_since(start);
    v.note("max |mu_k| / bound", worst);
    v.note("seconds", elapsed);
    v.check(worst <= 1.05, "every term within 1.05 times the bound");
    v.check(elapsed < 10.0, "runtime under 10 s");
}

void norm_oracle(Verdict& v) {
    std::mt19937_64 rng(7);
    double worst_norm = 0.0;
    double worst_conorm = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Mat2 m = random_matrix(rng, 10.0);
        Eigen::Matrix<long double, 2, 2> e;
        e << m.a, m.b, m.c, m.d;
        const Eigen::JacobiSVD<Eigen::Matrix<long double, 2, 2>> svd(e);
        const long double smax = svd.singularValues()(0);
        const long double smin = svd.singularValues()(1);
        const long double sign = e.determinant() < 0 ? -1.0L : 1.0L;
        worst_norm = std::max(worst_norm, static_cast<double>(std::abs((op_norm(m) - smax) / smax)));
        const long double oracle = sign * smin;
        if (oracle != 0.0L)
            worst_conorm = std::max(worst_conorm, static_cast<double>(std::abs((signed_conorm(m) - oracle) / oracle)));
    }
    v.note("norm rel error", worst_norm);
    v.note("conorm rel error", worst_conorm);
    v.check(worst_norm < 1e-12, "op_norm vs SVD");
    v.check(worst_conorm < 1e-12, "signed_conorm vs SVD");
}

void exp_log_round_trip(Verdict& v) {
    std::mt19937_64 rng(11);
    double worst_trip = 0.0;
    double worst_norms = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Mat2 a = random_logable(rng, 3.0);
        const Mat2 l = log2(a);
        worst_trip = std::max(worst_trip, max_abs(exp2(l) - a) / (1 + max_abs(a)));
        const Disk d = pd(a);
        const LogNorms n = log_norm_from_disk(d.center.real(), d.center.imag(), d.radius);
        const double scale = std::max(1.0, op_norm(l));
        worst_norms = std::max(worst_norms, std::abs(n.norm - op_norm(l)) / scale);
        worst_norms = std::max(worst_norms, std::abs(n.conorm - signed_conorm(l)) / scale);
    }
    v.note("round trip rel error", worst_trip);
    v.note("log norm error", worst_norms);
    v.check(worst_trip < 1e-10, "exp2(log2 A) = A");
    v.check(worst_norms < 1e-10, "log norms from the disk");
}

// A matrix whose chiral disk is a random disk inside cd(outer).
Mat2 nested_inside(const Mat2& outer, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Disk d = cd(outer);
    const double inner_r = d.radius * u(rng);
    const double offset = (d.radius - inner_r) * u(rng);
    const Complex centre = d.center + std::polar(offset, 2 * kPi * u(rng));
    const double phase = 2 * kPi * u(rng);
    return Mat2::from_quat({centre.real(), centre.imag(), inner_r * std::cos(phase), inner_r * std::sin(phase)});
}

void monotonicity(Verdict& v) {
    std::mt19937_64 rng(13);
    int violations = 0;
    int pairs = 0;
    while (pairs < 1000) {
        const Mat2 outer = random_logable(rng, 2.0);
        const Mat2 inner = nested_inside(outer, rng);
        if (!is_logable(inner)) continue;
        ++pairs;
        const Mat2 lo = log2(outer);
        const Mat2 li = log2(inner);
        if (op_norm(li) > op_norm(lo) + 1e-12) ++violations;
        if (signed_conorm(li) < signed_conorm(lo) - 1e-12) ++violations;
        if (!disk_contains(pd(lo), pd(li))) ++violations;
        if (!disk_contains(cd(lo), cd(li))) ++violations;
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int points = 0;
    while (points < 100) {
        const double a = -1 + 4 * u(rng);
        const double b = 0.1 + 1.9 * u(rng);
        const double r = 2 * u(rng);
        // Interior: the disk keeps a margin of 0.2 from the origin and stays off the cut.
        const double dsq = a * a + b * b - r * r;
        if (std::hypot(a, b) - r < 0.2 || a / std::sqrt(dsq) < -0.9) continue;
        ++points;
        worst = std::max(worst, conical_identity_residual(a, b, r));
    }
    v.note("pairs", pairs);
    v.note("violations", violations);
    v.note("conical residual", worst);
    v.check(violations == 0, "norm, co-norm and disk monotonicity");
    v.check(worst < 1e-6, "conical identity residual");
}

void spectral_containment(Verdict& v) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
    int violations = 0;
    double worst_range = -std::numeric_limits<double>::infinity();
    double worst_curve = -std::numeric_limits<double>::infinity();
    for (const auto& [name, phi] : gallery::subcritical()) {
        const double tv = total_variation(phi);
        const Mat2 a = lexp(phi);
        for (int i = 0; i < 32; ++i) {
            const double th = angle(rng);
            const Vec2 x{std::cos(th), std::sin(th)};
            const double excess = principal_log_abs(weighted_quotient(a * x, x)) - tv;
            worst_range = std::max(worst_range, excess);
            if (excess > 1e-9) ++violations;
        }
        // Log-metric distance between the ends of the trajectory vs its polygonal log-length.
        const double th = angle(rng);
        const Vec2 x{std::cos(th), std::sin(th)};
        const int n = 1000;
        const double len = phi.length();
        std::vector<Vec2> z(n + 1);
        for (int k = 0; k <= n; ++k) z[static_cast<std::size_t>(k)] = lexp(restrict(phi, len * k / n)) * x;
        double path = 0.0;
        for (int k = 0; k < n; ++k)
            path += principal_log_abs(weighted_quotient(z[static_cast<std::size_t>(k + 1)], z[static_cast<std::size_t>(k)]));
        const double chord = principal_log_abs(weighted_quotient(z.back(), z.front()));
        worst_curve = std::max(worst_curve, chord - path);
        if (chord > path + 1e-6) ++violations;
    }
    v.note("max range excess", worst_range);
    v.note("max chord excess", worst_curve);
    v.note("violations", violations);
    v.check(violations == 0, "containment in exp D(0, total variation) and the curve estimate");
}

void normal_form_round_trip(Verdict& v) {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto random_form = [&] {
        const double total = 3 * u(rng);
        const double split = u(rng);
        return NormalForm{total * split, total * (1 - split), kPi * (2 * u(rng) - 1), frame_from_angle(kPi * (2 * u(rng) - 1))};
    };
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const NormalForm nf = random_form();
        const NormalForm got = nw_decompose(nw_compose(nf));
        double dt = std::abs(std::remainder(got.t - nf.t, 2 * kPi));
        if (got.mirror) dt = std::min(dt, std::abs(std::remainder(got.t - (kPi - nf.t), 2 * kPi)));
        const double err = std::max({std::abs(got.p1 - nf.p1), std::abs(got.p2 - nf.p2), dt, max_abs(got.F - nf.F)});
        worst = std::max(worst, err);
    }
    double worst_mp = 0.0;
    double worst_ellip = 0.0;
    for (int i = 0; i < 100; ++i) {
        const NormalForm nf = random_form();
        const AdditivityGaps g = additivity_check(nf, (nf.p1 + nf.p2) * u(rng));
        worst_mp = std::max(worst_mp, g.mp_gap);
        worst_ellip = std::max(worst_ellip, g.ellip_gap);
    }
    v.note("recovery error", worst);
    v.note("mp gap", worst_mp);
    v.note("ellip gap", worst_ellip);
    v.check(worst < 1e-8, "parameter recovery");
    v.check(worst_mp < 1e-7 && worst_ellip < 1e-7, "additivity gaps");
}

void asymptotic_constants(Verdict& v) {
    auto within = [&](BlowupFamily f, double distance, double tol) {
        const double fit = fit_leading_constant(f, distance);
        const double want = *asymptotic_constant(f);
        v.note(blowup_name(f), fit);
        v.check(std::abs(fit - want) / want < tol, blowup_name(f) + " leading constant");
    };
    within(BlowupFamily::LoxodromicNaive, 1e-6, 0.02);
    within(BlowupFamily::LoxodromicRidge, 1e-6, 0.02);
    for (BlowupFamily f : {BlowupFamily::Critical, BlowupFamily::Parabolic, BlowupFamily::HyperbolicTuned}) {
        const double fit = fit_half_order_coefficient(f, 1e-4);
        const double want = *half_order_coefficient(f);
        v.note(blowup_name(f) + " half-order", fit);
        v.check(std::abs(fit - want) / std::abs(want) < 0.05, blowup_name(f) + " half-order coefficient");
    }
    const double c = constant_term(BlowupFamily::Critical, 1e-6);
    v.note("critical constant", c);
    v.check(std::abs(c + 2 * kPi) < 0.01, "critical constant term -2 pi");
    v.note("skew-elliptic-ridge (reported)", fit_leading_constant(BlowupFamily::EllipticRidge, 1e-6));
}

void divergence_detection(Verdict& v) {
    const double phi = radius_estimate(magnus_terms(gallery::critical(kPi), 64));
    const double ups = radius_estimate(magnus_terms(gallery::skew_loxodromic(0.5, kPi), 32));
    v.note("critical", phi);
    v.note("skew-loxodromic(0.5,pi)", ups);
    v.check(phi <= 1.05, "critical radius <= 1.05");
    v.check(ups <= 1.05, "skew-loxodromic radius <= 1.05");
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> len(0.2, 3.0);
    bool all_infinite = true;
    for (int i = 0; i < 20; ++i) {
        const MeasureSpec c{{Segment::constant(random_matrix(rng, 1.0), len(rng))}};
        all_infinite = all_infinite && std::isinf(radius_estimate(magnus_terms(c, 32)));
    }
    v.check(all_infinite, "constant densities give an infinite radius");
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Verdict&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "hbound-series", hbound_series},
        {2, "h-pi", h_pi_value},
        {3, "blowup-law", blowup_law},
        {4, "tan-fixed-point", tan_fixed_point_class},
        {5, "critical-closed-forms", critical_closed_forms},
        {6, "term-bound", term_bound},
        {7, "norm-oracle", norm_oracle},
        {8, "exp-log-round-trip", exp_log_round_trip},
        {9, "monotonicity", monotonicity},
        {10, "spectral-containment", spectral_containment},
        {11, "normal-form-round-trip", normal_form_round_trip},
        {12, "asymptotic-constants", asymptotic_constants},
        {13, "divergence-detection", divergence_detection},
    };
    return all;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& filter) {
    std::vector<CriterionResult> out;
    for (const Criterion& c : criteria()) {
        if (!filter.empty() && std::string(c.name).find(filter) == std::string::npos) continue;
        Verdict v;
        const auto start = Clock::now();
        try {
            c.run(v);
        } catch (const std::exception& e) {
            v.check(false, std::string("exception: ") + e.what());
        }
        out.push_back({c.id, c.name, v.pass(), v.detail(), seconds_since(start)});
    }
    return out;
}

int report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
    int failures = 0;
    for (const CriterionResult& r : results) {
        if (!r.pass) ++failures;
        out << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail << "\n";
    }
    return failures;
}

}  // namespace magnus
