#pragma once

namespace ambc {

/// Gaussian tail probability Q(x) = P(Z > x), Z ~ N(0, 1).
double q_function(double x);

/// Gauss hypergeometric function 2F1(a, b; c; z) for |z| < 1 by direct
/// summation of the Gauss series. Summation stops once the remaining tail,
/// bounded through the term ratio, is below 1e-16 relative (absolute for
/// tiny sums). Throws std::domain_error for |z| >= 1 or c a non-positive
/// integer, and std::runtime_error if the series has not settled after
/// `max_terms` terms.
double hyp2f1(double a, double b, double c, double z, long max_terms = 20'000'000);

}  // namespace ambc
