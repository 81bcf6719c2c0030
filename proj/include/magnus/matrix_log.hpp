#pragma once

#include "magnus/mat2.hpp"

namespace magnus {

bool is_logable(const Mat2& m);
// Principal logarithm; throws LogabilityError when the spectrum meets (-inf, 0].
Mat2 log2(const Mat2& m);
Mat2 exp2(const Mat2& m);

struct LogNorms {
    double norm = 0.0;
    double conorm = 0.0;
};

// Norm and signed co-norm of log A computed from PD(A) = D(a + ib, r).
LogNorms log_norm_from_disk(double a, double b, double r);

// Norm part f = f_CA + f_RD of log_norm_from_disk and its f_CA component.
struct LogNormParts {
    double chiral = 0.0;  // f_CA
    double radial = 0.0;  // f_RD
};
LogNormParts log_norm_parts(double a, double b, double r);

// |(df/dr)^2 - (df/da)^2 - (df/db)^2 - (f/f_CA * b AS(a/sqrt(D))/D)^2| by central differences.
double conical_identity_residual(double a, double b, double r);

}  // namespace magnus
