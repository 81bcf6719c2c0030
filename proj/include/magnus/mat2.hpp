#pragma once

#include <complex>
#include <span>

namespace magnus {

using Complex = std::complex<double>;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Coefficients on the basis Id, I~ = [[0,-1],[1,0]], J~ = [[1,0],[0,-1]], K~ = [[0,1],[1,0]].
struct QuatCoords {
    double id = 0.0;
    double i = 0.0;
    double j = 0.0;
    double k = 0.0;
};

// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }
    static constexpr Mat2 i_tilde() { return {0.0, -1.0, 1.0, 0.0}; }
    static constexpr Mat2 j_tilde() { return {1.0, 0.0, 0.0, -1.0}; }
    static constexpr Mat2 k_tilde() { return {0.0, 1.0, 1.0, 0.0}; }
    static constexpr Mat2 diag(double x, double y) { return {x, 0.0, 0.0, y}; }
    static Mat2 rotation(double theta);
    static Mat2 from_quat(const QuatCoords& q);

    QuatCoords quat() const;
    double trace() const { return a + d; }
    double det() const;
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 inverse() const;
};

constexpr Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
constexpr Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
constexpr Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
constexpr Mat2 operator*(double s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
constexpr Mat2 operator*(const Mat2& x, double s) { return s * x; }
constexpr Mat2 operator/(const Mat2& x, double s) { return {x.a / s, x.b / s, x.c / s, x.d / s}; }
constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
constexpr Vec2 operator*(const Mat2& m, const Vec2& v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
inline Mat2& operator+=(Mat2& x, const Mat2& y) { return x = x + y; }
inline Mat2& operator-=(Mat2& x, const Mat2& y) { return x = x - y; }

// Largest absolute entry; used for entrywise comparisons.
double max_abs(const Mat2& m);

double op_norm(const Mat2& m);
// sgn(det) times the smallest singular value; 0 for |det| < 1e-300.
double signed_conorm(const Mat2& m);
// sgn(c - b)
int chirality(const Mat2& m);

// y:x, the complex number recording the parallel and orthogonal parts of y against x.
Complex weighted_quotient(const Vec2& y, const Vec2& x);
Complex weighted_quotient(std::span<const double> y, std::span<const double> x);

struct CMat2 {
    Complex a;
    Complex b;
    Complex c;
    Complex d;

    Complex det() const { return a * d - b * c; }
    CMat2 shifted(Complex lambda) const { return {a - lambda, b, c, d - lambda}; }
};

double op_norm_complex(const CMat2& m);
double conorm_complex(const CMat2& m);

}  // namespace magnus
