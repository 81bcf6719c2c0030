#include "magnus/magnus_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "magnus/errors.hpp"

namespace magnus {

MatSeries::MatSeries(int order) {
    if (order < 0) throw OutOfDomain("series order must be nonnegative");
    coeffs_.assign(static_cast<std::size_t>(order) + 1, Mat2::zero());
}

MatSeries MatSeries::identity(int order) {
    MatSeries s(order);
    s[0] = Mat2::identity();
    return s;
}

Mat2 MatSeries::evaluate(double t) const {
    Mat2 acc = Mat2::zero();
    for (int k = order(); k >= 0; --k) acc = t * acc + (*this)[k];
    return acc;
}

MatSeries operator+(const MatSeries& x, const MatSeries& y) {
    MatSeries out(std::min(x.order(), y.order()));
    for (int k = 0; k <= out.order(); ++k) out[k] = x[k] + y[k];
    return out;
}

MatSeries operator-(const MatSeries& x, const MatSeries& y) {
    MatSeries out(std::min(x.order(), y.order()));
    for (int k = 0; k <= out.order(); ++k) out[k] = x[k] - y[k];
    return out;
}

MatSeries operator*(const MatSeries& x, const MatSeries& y) {
    MatSeries out(std::min(x.order(), y.order()));
    const int n = out.order();
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; i + j <= n; ++j) out[i + j] += x[i] * y[j];
    }
    return out;
}

MatSeries operator*(double s, const MatSeries& x) {
    MatSeries out(x.order());
    for (int k = 0; k <= x.order(); ++k) out[k] = s * x[k];
    return out;
}

MatSeries operator*(const Mat2& m, const MatSeries& x) {
    MatSeries out(x.order());
    for (int k = 0; k <= x.order(); ++k) out[k] = m * x[k];
    return out;
}

MatSeries operator*(const MatSeries& x, const Mat2& m) {
    MatSeries out(x.order());
    for (int k = 0; k <= x.order(); ++k) out[k] = x[k] * m;
    return out;
}

MatSeries MatSeries::log() const {
    if (max_abs((*this)[0] - Mat2::identity()) > 1e-14) throw OutOfDomain("series log: constant term must be Id");
    MatSeries x = *this;
    x[0] = Mat2::zero();
    MatSeries power = x;
    MatSeries out(order());
    for (int j = 1; j <= order(); ++j) {
        const double w = (j % 2 == 1 ? 1.0 : -1.0) / j;
        for (int k = j; k <= order(); ++k) out[k] += w * power[k];
        if (j < order()) power = power * x;
    }
    return out;
}

namespace {

constexpr double kTermCutoff = 1e-18;
constexpr int kMaxExpTerms = 2000;

// exp(A + tB) as a series in t.
MatSeries exp_linear_series(const Mat2& a, const Mat2& b, int order) {
    MatSeries sum = MatSeries::identity(order);
    MatSeries term = MatSeries::identity(order);
    for (int n = 1; n <= kMaxExpTerms; ++n) {
        MatSeries next(order);
        double size = 0.0;
        for (int k = 0; k <= order; ++k) {
            Mat2 v = term[k] * a;
            if (k > 0) v += term[k - 1] * b;
            next[k] = v / n;
            size += op_norm(next[k]);
        }
        term = next;
        sum = sum + term;
        if (size < kTermCutoff) break;
    }
    return sum;
}

}  // namespace

MatSeries lexp_series(const MeasureSpec& phi, int order) {
    if (order < 1) throw OutOfDomain("series order must be at least 1");
    MatSeries acc = MatSeries::identity(order);
    for (const Segment& seg : phi.segments) {
        const double len = seg.length;
        if (seg.kind == SegmentKind::Constant) {
            acc = exp_linear_series(Mat2::zero(), len * seg.matrix, order) * acc;
            continue;
        }
        const Mat2 a = (-seg.frequency * len) * Mat2::i_tilde();
        const Mat2 b = len * seg.generator();
        const MatSeries inner = exp_linear_series(a, b, order);
        acc = (Mat2::rotation(seg.frequency * len + seg.phase) * inner * Mat2::rotation(-seg.phase)) * acc;
    }
    return acc;
}

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

// Taylor coefficients of AC(1 + y(t)) for y(0) = 0. AC(1 + y) = sum a_n y^n with
// a_n = -n/(2n+1) a_(n-1). The alternating coefficients against positive powers of y lose
// digits geometrically in the order, hence the wide Horner pass.
std::vector<double> ac_composed(const std::vector<double>& y) {
    const int order = static_cast<int>(y.size()) - 1;
    std::vector<Wide> yw(y.begin(), y.end());
    yw[0] = 0;
    std::vector<Wide> a(y.size());
    a[0] = 1;
    for (int n = 1; n <= order; ++n) a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(n - 1)] * -n / (2 * n + 1);
    std::vector<Wide> acc(y.size(), Wide(0));
    acc[0] = a.back();
    for (int n = order - 1; n >= 0; --n) {
        std::vector<Wide> next(y.size(), Wide(0));
        for (int i = 0; i <= order; ++i) {
            if (acc[static_cast<std::size_t>(i)] == 0) continue;
            for (int j = 1; i + j <= order; ++j)
                next[static_cast<std::size_t>(i + j)] += acc[static_cast<std::size_t>(i)] * yw[static_cast<std::size_t>(j)];
        }
        next[0] += a[static_cast<std::size_t>(n)];
        acc = std::move(next);
    }
    std::vector<double> out(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) out[k] = static_cast<double>(acc[k]);
    return out;
}

}  // namespace

// log A = (1/2) log det A Id + AC(x) (A/sqrt(det A) - x Id), x = tr A / (2 sqrt(det A)), with
// det lexp(t phi) = exp(t total_trace). Every step is a product or composition whose terms do
// not cancel, unlike the alternating power sum of the series log, so the terms of measures
// with a terminating expansion come out at rounding level.
std::vector<Mat2> magnus_terms(const MeasureSpec& phi, int order) {
    const MatSeries a = lexp_series(phi, order);
    const double half_trace = total_trace(phi) / 2;
    const auto n = static_cast<std::size_t>(order) + 1;
    std::vector<double> damp(n);
    damp[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) damp[k] = damp[k - 1] * -half_trace / static_cast<double>(k);
    MatSeries unimodular(order);
    for (int k = 0; k <= order; ++k)
        for (int j = 0; j <= k; ++j) unimodular[k] += damp[static_cast<std::size_t>(j)] * a[k - j];
    std::vector<double> x(n);
    for (int k = 0; k <= order; ++k) x[static_cast<std::size_t>(k)] = unimodular[k].trace() / 2;
    const std::vector<double> f = ac_composed(x);
    MatSeries traceless(order);
    for (int k = 1; k <= order; ++k) traceless[k] = unimodular[k] - x[static_cast<std::size_t>(k)] * Mat2::identity();
    std::vector<Mat2> terms(n, Mat2::zero());
    for (int k = 1; k <= order; ++k)
        for (int j = 0; j < k; ++j) terms[static_cast<std::size_t>(k)] += f[static_cast<std::size_t>(j)] * traceless[k - j];
    terms[1] += half_trace * Mat2::identity();
    return terms;
}

double radius_estimate(const std::vector<Mat2>& terms) {
    const int order = static_cast<int>(terms.size()) - 1;
    if (order < 8) throw OutOfDomain("radius estimate needs at least 8 terms");
    std::vector<double> norms(terms.size(), 0.0);
    double peak = 0.0;
    for (int k = 1; k <= order; ++k) {
        norms[static_cast<std::size_t>(k)] = op_norm(terms[static_cast<std::size_t>(k)]);
        peak = std::max(peak, norms[static_cast<std::size_t>(k)]);
    }
    const double inf = std::numeric_limits<double>::infinity();
    if (!(peak > 0)) return inf;
    // Terms below this level are indistinguishable from rounding noise.
    const double floor = 1e-12 * peak;
    int last = 0;
    for (int k = 1; k <= order; ++k) {
        if (norms[static_cast<std::size_t>(k)] > floor) last = k;
    }
    if (last < 4) return inf;
    const int first = last - (last + 1) / 2 + 1;
    double sk = 0, sy = 0, skk = 0, sky = 0;
    int n = 0;
    for (int k = first; k <= last; ++k) {
        const double v = norms[static_cast<std::size_t>(k)];
        if (!(v > floor)) continue;
        const double y = std::log(v);
        sk += k;
        sy += y;
        skk += static_cast<double>(k) * k;
        sky += k * y;
        ++n;
    }
    if (n < 2) return inf;
    const double slope = (n * sky - sk * sy) / (n * skk - sk * sk);
    return std::exp(-slope);
}

double magnus_term_bound(int k, double variation) {
    return std::pow(std::numbers::pi, 1 - k) * 2 * std::sqrt(std::numbers::e * k) * std::pow(variation, k);
}

}  // namespace magnus
