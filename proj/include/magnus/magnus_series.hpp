#pragma once

#include <vector>

#include "magnus/mat2.hpp"
#include "magnus/measures.hpp"

namespace magnus {

// Truncated power series sum_k coeffs[k] t^k, k = 0..order.
class MatSeries {
public:
    explicit MatSeries(int order);
    static MatSeries identity(int order);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Mat2& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    Mat2& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
    const std::vector<Mat2>& coeffs() const { return coeffs_; }

    Mat2 evaluate(double t) const;
    // Requires coefficient 0 to be Id; the result has coefficient 0 equal to 0.
    MatSeries log() const;

    friend MatSeries operator+(const MatSeries& x, const MatSeries& y);
    friend MatSeries operator-(const MatSeries& x, const MatSeries& y);
    friend MatSeries operator*(const MatSeries& x, const MatSeries& y);
    friend MatSeries operator*(double s, const MatSeries& x);
    friend MatSeries operator*(const Mat2& m, const MatSeries& x);
    friend MatSeries operator*(const MatSeries& x, const Mat2& m);

private:
    std::vector<Mat2> coeffs_;
};

// Series in t of lexp(t phi).
MatSeries lexp_series(const MeasureSpec& phi, int order);

// terms[k] = mu_k for k = 1..order (terms[0] is the zero matrix).
std::vector<Mat2> magnus_terms(const MeasureSpec& phi, int order);

// Root-test estimate of the convergence radius of sum mu_k t^k, same indexing as magnus_terms.
// Returns +infinity when the terms vanish to working precision after the first few.
double radius_estimate(const std::vector<Mat2>& terms);

// Bound pi^(1-k) 2 sqrt(e k) v^k on the k-th term for total variation v.
double magnus_term_bound(int k, double variation);

}  // namespace magnus
