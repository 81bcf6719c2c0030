#include "magnus/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "magnus/errors.hpp"

namespace magnus::kernels {

namespace {

constexpr double kSwitch = 1e-3;
constexpr double kSqrt3 = std::numbers::sqrt3;

// Taylor coefficients in e = x - 1.
constexpr std::array<double, 10> kAcSeries = {
    1.0, -1.0 / 3, 2.0 / 15, -2.0 / 35, 8.0 / 315, -8.0 / 693, 16.0 / 3003, -16.0 / 6435, 128.0 / 109395,
    -128.0 / 230945};
constexpr std::array<double, 9> kAsSeries = {
    kSqrt3 / 3,
    -8 * kSqrt3 / 45,
    436 * kSqrt3 / 4725,
    -3352 * kSqrt3 / 70875,
    394118 * kSqrt3 / 16372125,
    -17705104 * kSqrt3 / 1451165625,
    42531448 * kSqrt3 / 6897515625,
    -34085611792 * kSqrt3 / 10959091171875,
    4897822624397446.0 * kSqrt3 / 3126464324968359375.0};
constexpr std::array<double, 9> kAtSeries = {
    0.0,
    -kSqrt3 / 3,
    -2 * kSqrt3 / 45,
    2 * kSqrt3 / 175,
    -248 * kSqrt3 / 70875,
    19526 * kSqrt3 / 16372125,
    -2323612 * kSqrt3 / 5320940625,
    93963572 * kSqrt3 / 558698765625,
    -9577100944.0 * kSqrt3 / 142468185234375.0};

template <std::size_t N>
double horner(const std::array<double, N>& c, double e) {
    double s = 0.0;
    for (std::size_t k = N; k-- > 0;) s = s * e + c[k];
    return s;
}

void require_above_cut(double x, const char* name) {
    if (!(x > -1.0)) {
        throw KernelDomainError(KernelErrorKind::BranchCut,
                                std::string(name) + ": argument must exceed -1 (branch cut)");
    }
}

}  // namespace

double ac(double x) {
    require_above_cut(x, "AC");
    const double e = x - 1.0;
    if (std::abs(e) < kSwitch) return horner(kAcSeries, e);
    if (x < 1.0) return std::acos(x) / std::sqrt((1.0 - x) * (1.0 + x));
    return std::acosh(x) / (std::sqrt(x - 1.0) * std::sqrt(x + 1.0));
}

double as(double x) {
    require_above_cut(x, "AS");
    const double e = x - 1.0;
    if (std::abs(e) < kSwitch) return horner(kAsSeries, e);
    const double v = ac(x);
    if (x < 1.0) return std::sqrt((v * v - 1.0) / ((1.0 - x) * (1.0 + x)));
    return std::sqrt((1.0 - v * v) / (x - 1.0) / (x + 1.0));
}

double at(double x) {
    require_above_cut(x, "AT");
    const double e = x - 1.0;
    if (std::abs(e) < kSwitch) return horner(kAtSeries, e);
    return (ac(x) - 1.0) / as(x);
}

double ac_derivative(double x) {
    require_above_cut(x, "AC'");
    const double e = x - 1.0;
    if (std::abs(e) < kSwitch) {
        double s = 0.0;
        for (std::size_t k = kAcSeries.size() - 1; k >= 1; --k) s = s * e + static_cast<double>(k) * kAcSeries[k];
        return s;
    }
    return (x * ac(x) - 1.0) / ((1.0 - x) * (1.0 + x));
}

double cosh_sqrt(double x) {
    if (std::abs(x) < kSwitch) {
        // sum x^k/(2k)!
        double term = 1.0;
        double s = 1.0;
        for (int k = 1; k < 8; ++k) {
            term *= x / ((2.0 * k - 1) * (2.0 * k));
            s += term;
        }
        return s;
    }
    if (x < 0) return std::cos(std::sqrt(-x));
    return std::cosh(std::sqrt(x));
}

double sinh_sqrt_ratio(double x) {
    if (std::abs(x) < kSwitch) {
        // sum x^k/(2k+1)!
        double term = 1.0;
        double s = 1.0;
        for (int k = 1; k < 8; ++k) {
            term *= x / ((2.0 * k) * (2.0 * k + 1));
            s += term;
        }
        return s;
    }
    if (x < 0) {
        const double r = std::sqrt(-x);
        return std::sin(r) / r;
    }
    const double r = std::sqrt(x);
    return std::sinh(r) / r;
}

double sinc(double y) { return sinh_sqrt_ratio(-y * y); }

double sinhc(double y) { return sinh_sqrt_ratio(y * y); }

}  // namespace magnus::kernels
