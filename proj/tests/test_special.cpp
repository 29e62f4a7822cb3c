#include <cmath>
#include <numbers>

#include "ambc/special.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace ambc;

TEST_CASE("Gaussian tail") {
    CHECK(q_function(0.0) == 0.5);
    CHECK(q_function(-1.7) == doctest::Approx(1.0 - q_function(1.7)).epsilon(1e-15));
    const double q2 = test::simpson(
        [](double z) { return std::exp(-z * z / 2) / std::sqrt(2 * std::numbers::pi); }, 2.0, 40.0, 20000);
    CHECK(std::abs(q_function(2.0) - q2) < 1e-12);
    CHECK(q_function(2.0) == doctest::Approx(0.02275).epsilon(1e-3));
    for (double x = 0.0; x <= 8.0; x += 0.25) {
        const double ref = test::simpson([](double z) { return std::exp(-z * z / 2); }, x, x + 40.0, 40000) /
                           std::sqrt(2 * std::numbers::pi);
        CHECK(std::abs(q_function(x) - ref) < 1e-12);
        CHECK(std::abs(q_function(-x) - (1.0 - ref)) < 1e-12);
    }
}

TEST_CASE("hypergeometric identities") {
    CHECK(hyp2f1(0.0, 0.5, 1.5, 0.7) == 1.0);
    CHECK(std::abs(hyp2f1(1.0, 1.0, 2.0, 0.5) - (-std::log(0.5) / 0.5)) < 1e-10);
    CHECK(hyp2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(1.3863).epsilon(1e-4));
    CHECK(std::abs(hyp2f1(0.5, 1.0, 1.5, 0.36) - std::atanh(0.6) / 0.6) < 1e-10);
    CHECK(hyp2f1(0.5, 1.0, 1.5, 0.36) == doctest::Approx(1.1552).epsilon(1e-4));
    // Symmetric in a and b.
    CHECK(std::abs(hyp2f1(1.0, 0.5, 1.5, 0.36) - hyp2f1(0.5, 1.0, 1.5, 0.36)) < 1e-14);
    // 2F1(1/2, 1/2; 3/2; z^2) = asin(z)/z
    CHECK(std::abs(hyp2f1(0.5, 0.5, 1.5, 0.25) - std::asin(0.5) / 0.5) < 1e-10);
    // Close to the unit circle the series is slow but still accurate.
    CHECK(std::abs(hyp2f1(0.5, 1.0, 1.5, 0.99) - std::atanh(std::sqrt(0.99)) / std::sqrt(0.99)) < 1e-10);
    CHECK_THROWS(hyp2f1(1.0, 1.0, 2.0, 1.0));
    CHECK_THROWS(hyp2f1(1.0, 1.0, -2.0, 0.5));
}
