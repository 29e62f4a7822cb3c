#include "ambc/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ambc {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double hyp2f1(double a, double b, double c, double z, long max_terms) {
    if (!(std::abs(z) < 1.0)) throw std::domain_error("hyp2f1: series requires |z| < 1");
    if (c <= 0.0 && c == std::floor(c)) throw std::domain_error("hyp2f1: c is a non-positive integer");

    double sum = 1.0;
    double term = 1.0;
    for (long k = 0; k < max_terms; ++k) {
        const double kd = static_cast<double>(k);
        const double ratio = (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0));
        term *= ratio * z;
        if (term == 0.0) return sum;  // a or b a non-positive integer: polynomial
        sum += term;

        // Far enough out the coefficient ratio q_j approaches 1 monotonically,
        // so every later ratio is at most max(q_{k+1}, 1) and the tail is
        // bounded by a geometric series with rate r = max(q_{k+1}, 1) |z|.
        const double kn = kd + 1.0;
        if (kn > 4.0 * (std::abs(a) + std::abs(b) + std::abs(c)) + 10.0) {
            const double next_ratio = (a + kn) * (b + kn) / ((c + kn) * (kn + 1.0));
            const double r = std::max(std::abs(next_ratio), 1.0) * std::abs(z);
            if (r < 1.0) {
                const double tail = std::abs(term) * r / (1.0 - r);
                if (tail <= 1e-16 * std::max(1.0, std::abs(sum))) return sum;
            }
        }
    }
    throw std::runtime_error("hyp2f1: series did not converge");
}

}  // namespace ambc
