#pragma once

namespace fdcr {

// Upper-tail probability of a standard Gaussian, Q(x) = P[Z > x].
// Result is kept inside the open interval (0, 1). Relative accuracy is
// better than 1e-12 for |x| <= 8. Throws std::domain_error on non-finite
// input.
double q_function(double x);

// Inverse of q_function on (0, 1): q_function(inverse_q(p)) == p to
// near machine precision.
double inverse_q(double p);

// Standard Gaussian density.
double gaussian_pdf(double x);

}  // namespace fdcr
