#include "magnus/mat2.hpp"

#include <algorithm>
#include <cmath>

#include "magnus/errors.hpp"

namespace magnus {

Mat2 Mat2::rotation(double theta) {
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    return {cs, -sn, sn, cs};
}

Mat2 Mat2::from_quat(const QuatCoords& q) {
    return {q.id + q.j, q.k - q.i, q.k + q.i, q.id - q.j};
}

QuatCoords Mat2::quat() const {
    return {(a + d) / 2, (c - b) / 2, (a - d) / 2, (b + c) / 2};
}

double Mat2::det() const {
    // Kahan's fma trick keeps the determinant accurate under cancellation.
    const double w = b * c;
    const double err = std::fma(-b, c, w);
    const double main = std::fma(a, d, -w);
    return main + err;
}

Mat2 Mat2::inverse() const {
    const double dt = det();
    if (dt == 0.0) throw OutOfDomain("matrix is singular");
    return Mat2{d, -b, -c, a} / dt;
}

double max_abs(const Mat2& m) {
    return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

double op_norm(const Mat2& m) {
    return (std::hypot(m.a + m.d, m.c - m.b) + std::hypot(m.a - m.d, m.b + m.c)) / 2;
}

double signed_conorm(const Mat2& m) {
    const double dt = m.det();
    if (std::abs(dt) < 1e-300) return 0.0;
    // sigma_max * sigma_min = |det|; this avoids the cancellation in the difference form.
    return dt / op_norm(m);
}

int chirality(const Mat2& m) {
    const double tw = m.c - m.b;
    return (tw > 0) - (tw < 0);
}

Complex weighted_quotient(const Vec2& y, const Vec2& x) {
    const double n2 = x.x * x.x + x.y * x.y;
    if (n2 == 0.0) throw OutOfDomain("weighted quotient: x must be nonzero");
    const double re = (y.x * x.x + y.y * x.y) / n2;
    const double im = std::abs(x.x * y.y - x.y * y.x) / n2;
    return {re, im};
}

Complex weighted_quotient(std::span<const double> y, std::span<const double> x) {
    if (y.size() != x.size()) throw OutOfDomain("weighted quotient: dimension mismatch");
    double n2 = 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        n2 += x[i] * x[i];
        dot += y[i] * x[i];
    }
    if (n2 == 0.0) throw OutOfDomain("weighted quotient: x must be nonzero");
    const double re = dot / n2;
    double orth2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - re * x[i];
        orth2 += r * r;
    }
    return {re, std::sqrt(std::max(orth2, 0.0) / n2)};
}

double op_norm_complex(const CMat2& m) {
    const double t = std::norm(m.a) + std::norm(m.b) + std::norm(m.c) + std::norm(m.d);
    const double ad = std::abs(m.det());
    return (std::sqrt(t + 2 * ad) + std::sqrt(std::max(t - 2 * ad, 0.0))) / 2;
}

double conorm_complex(const CMat2& m) {
    const double nrm = op_norm_complex(m);
    if (nrm == 0.0) return 0.0;
    return std::abs(m.det()) / nrm;
}

}  // namespace magnus
