#include <cmath>

#include "ambc/analysis.hpp"
#include "ambc/special.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace ambc;

namespace {

double rayleigh_pdf(double x, double p) { return 2.0 * x / p * std::exp(-x * x / p); }

// E[Q(|B - A| sqrt(g/2))] for independent Rayleigh A, B by a Simpson product
// rule split along A = B.
double rayleigh_average_oracle(double gamma, double pa, double pb) {
    const double c = std::sqrt(gamma / 2.0);
    const double amax = 10.0 * std::sqrt(pa), bmax = 10.0 * std::sqrt(pb);
    auto inner = [&](double b) {
        auto f = [&](double a) { return q_function(std::abs(b - a) * c) * rayleigh_pdf(a, pa); };
        const double lo = test::simpson(f, 0.0, std::min(b, amax), 400);
        const double hi = b < amax ? test::simpson(f, b, amax, 400) : 0.0;
        return (lo + hi) * rayleigh_pdf(b, pb);
    };
    return test::simpson(inner, 0.0, bmax, 800);
}

}  // namespace

TEST_CASE("AWGN BER") {
    const AwgnBer zero = ber_awgn(0.0);
    CHECK(zero.exact == doctest::Approx(0.5));
    CHECK(zero.approx == doctest::Approx(0.5));
    CHECK(ber_awgn(10.0).approx == doctest::Approx(q_function(std::sqrt(5.0))));
    CHECK(ber_awgn(10.0).approx == doctest::Approx(0.01267).epsilon(1e-3));
    for (double g = 4.0; g < 1e4; g *= 1.3) CHECK(std::abs(ber_awgn(g).exact - ber_awgn(g).approx) < 1e-6);
    for (double g : {0.1, 1.0, 3.0, 10.0, 30.0})
        CHECK(std::abs(ber_awgn_numeric(g) - ber_awgn(g).exact) < 1e-9);
    CHECK_THROWS(ber_awgn(-1.0));
}

TEST_CASE("conditional error probability") {
    CHECK(conditional_pe(0.7, 0.7, 5.0).approx == doctest::Approx(0.5));
    CHECK(conditional_pe(1.0, 2.0, 2.0).approx == doctest::Approx(q_function(1.0)));
    CHECK(conditional_pe(1.0, 2.0, 2.0).approx == doctest::Approx(0.1587).epsilon(1e-3));
    for (double g : {10.0, 20.0, 100.0}) {
        const ConditionalPe p = conditional_pe(1.0, 2.0, g);
        CHECK(std::abs(p.exact - p.approx) / p.approx < 1e-3);
    }
    // Symmetric in the two envelopes.
    const ConditionalPe x = conditional_pe(0.3, 1.1, 4.0), y = conditional_pe(1.1, 0.3, 4.0);
    CHECK(x.exact == doctest::Approx(y.exact).epsilon(1e-14));
    CHECK(x.approx == doctest::Approx(y.approx).epsilon(1e-14));
    CHECK_THROWS(conditional_pe(-1.0, 1.0, 1.0));
    CHECK(conditional_model_from_string("exact") == ConditionalModel::exact);
    CHECK_THROWS(conditional_model_from_string("rough"));
}

TEST_CASE("Rayleigh-averaged BER quadrature") {
    const EnvelopePowers p = EnvelopePowers::symmetric(1.0);
    CHECK(ber_rayleigh_numeric(0.0, p).value == doctest::Approx(0.5).epsilon(1e-9));

    for (double db : {0.0, 5.0, 10.0, 20.0}) {
        const double g = std::pow(10.0, db / 10.0);
        const double split = ber_rayleigh_numeric(g, p).value;
        CHECK(std::abs(split - ber_rayleigh_numeric_unsplit(g, p).value) < 1e-6);
        CHECK(std::abs(split - rayleigh_average_oracle(g, p.a, p.b)) < 1e-6);
    }
    CHECK(std::abs(ber_rayleigh_numeric(3.0, EnvelopePowers{2.0, 5.0}).value - rayleigh_average_oracle(3.0, 2.0, 5.0)) < 1e-6);

    double prev = 0.5 + 1e-12;
    for (double db = 0.0; db <= 30.0; db += 2.0) {
        const double v = ber_rayleigh_numeric(std::pow(10.0, db / 10.0), p).value;
        CHECK(v < prev);
        prev = v;
    }
    // The exact conditional only adds probability.
    for (double db : {0.0, 10.0})
        CHECK(ber_rayleigh_numeric(std::pow(10.0, db / 10.0), p, ConditionalModel::exact).value >
              ber_rayleigh_numeric(std::pow(10.0, db / 10.0), p).value);
    CHECK(ber_rayleigh_numeric(4.0, 1.0).value == ber_rayleigh_numeric(4.0, p).value);
    CHECK_THROWS(ber_rayleigh_numeric(-1.0, p));
    CHECK_THROWS(ber_rayleigh_numeric(1.0, EnvelopePowers{0.0, 1.0}));
}

TEST_CASE("closed-form auxiliary terms") {
    for (double mu : {0.1, 1.0, 3.16}) {
        for (double s2 : {0.5, 1.0, 2.0}) {
            const ClosedFormTerms t = ClosedFormTerms::make(mu, s2);
            const double alpha = mu * mu / 2 + 1 / (2 * s2);
            CHECK(t.alpha == doctest::Approx(alpha));
            CHECK(t.kappa == doctest::Approx(mu * mu / 2 + 1 / (4 * s2) - std::pow(mu, 4) / (4 * alpha * alpha)));
            CHECK(t.alpha > 0);
            CHECK(t.kappa > 0);
        }
    }
    CHECK(ClosedFormTerms::from_gamma(10.0, 1.0, MuConvention::sqrt_gamma).mu == doctest::Approx(std::sqrt(10.0)));
    CHECK(ClosedFormTerms::from_gamma(10.0, 1.0, MuConvention::sqrt_half_gamma).mu == doctest::Approx(std::sqrt(5.0)));
    CHECK_THROWS(ClosedFormTerms::make(1.0, 0.0));
    CHECK_THROWS(ClosedFormTerms::from_gamma(-1.0, 1.0));
}

TEST_CASE("closed form with the default first parameter") {
    const ClosedFormBer small = ber_rayleigh_closed(ClosedFormTerms::make(1e-9, 1.0));
    CHECK(small.terms[0] == 0.5);
    CHECK(std::abs(small.value - 0.5) < 1e-6);

    for (double db : {0.0, 10.0, 20.0}) {
        const ClosedFormTerms t = ClosedFormTerms::from_gamma(std::pow(10.0, db / 10.0), 1.0);
        const ClosedFormBer c = ber_rayleigh_closed(t);
        double sum = 0.0;
        for (double x : c.terms) sum += x;
        CHECK(c.value == doctest::Approx(sum).epsilon(1e-14));
        CHECK(c.in_unit_interval == (c.value >= 0.0 && c.value <= 1.0));
        CHECK(std::isfinite(c.value));
    }
    // Literal a = 0 leaves none of the hypergeometric factors in play, so the
    // output coincides with a = 0 evaluated at any argument.
    const ClosedFormTerms t = ClosedFormTerms::from_gamma(10.0, 1.0);
    CHECK(ber_rayleigh_closed(t).value == ber_rayleigh_closed(t, 0.0).value);
    CHECK(ber_rayleigh_closed(t, 1.0).value != ber_rayleigh_closed(t, 0.0).value);
}

TEST_CASE("majority-vote BER") {
    for (std::size_t l : {1u, 3u, 5u, 13u}) CHECK(ber_mod1(0.5, l) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ber_mod1(0.1, 3) == doctest::Approx(0.028).epsilon(1e-12));
    CHECK(ber_mod1(0.1, 5) == doctest::Approx(0.00856).epsilon(1e-12));
    CHECK(ber_mod1(0.0, 13) == 0.0);
    CHECK(ber_mod1(1.0, 13) == doctest::Approx(1.0));
    CHECK(ber_mod1(0.2, 1) == doctest::Approx(0.2));
    for (std::size_t l = 3; l <= 15; l += 2)
        for (double p = 0.01; p < 0.5; p += 0.03) CHECK(ber_mod1(p, l) < p);
    CHECK_THROWS(ber_mod1(0.1, 4));
    CHECK_THROWS(ber_mod1(1.5, 3));
}

TEST_CASE("CP-based baseline") {
    for (double g : {2.0, 10.0, 100.0}) {
        const PsiValue v = baseline_psi(g, 16, 16);
        CHECK(v.first_term == 0.0);
        CHECK(v.literal == doctest::Approx(std::sqrt(2 * std::log(g)) / (g * g)).epsilon(1e-14));
        CHECK(v.high_snr_limit == doctest::Approx(std::sqrt(2 * std::log(g))));
    }
    const double g = 100.0, d = 16.0;
    const double first = d * std::pow(g * g - g * std::sqrt(1 + 2 * std::log(g) / d), 2);
    const PsiValue v = baseline_psi(g, 32, 16);
    CHECK(v.first_term == doctest::Approx(first).epsilon(1e-12));
    CHECK(v.literal == doctest::Approx(std::sqrt(first + 2 * std::log(g)) / (g * g)).epsilon(1e-12));
    CHECK(v.literal > 0.0);
    CHECK(v.high_snr_limit == doctest::Approx(std::sqrt(d + 2 * std::log(g))));

    double prev = -1.0;
    for (std::size_t n_cp = 16; n_cp <= 40; ++n_cp) {
        const double psi = baseline_psi(10.0, n_cp, 16).literal;
        CHECK(psi > prev);
        prev = psi;
    }
    CHECK_THROWS(baseline_psi(10.0, 15, 16));
    CHECK_THROWS(baseline_psi(0.5, 16, 16));
}

TEST_CASE("data rates") {
    OfdmConfig cfg;
    const ClusterGeometry a1 = derive_geometry(52, 1, 0);
    CHECK(data_rate(Scheme::basis, cfg, a1, std::nullopt) == doctest::Approx(13e6));
    CHECK(data_rate(Scheme::basis, cfg, derive_geometry(52, 12, 0), std::nullopt) == doctest::Approx(1e6));
    CHECK(data_rate(Scheme::mod1, cfg, a1, derive_block_plan(52, 13)) == doctest::Approx(1e6));
    CHECK(data_rate(Scheme::mod2, cfg, a1, derive_block_plan(52, 13, 2)) == doctest::Approx(6e6));
    CHECK_THROWS(data_rate(Scheme::mod1, cfg, a1, std::nullopt));

    for (std::size_t l = 3; l <= 13; l += 2)
        for (std::size_t m = 1; m < l; ++m) {
            const double basis = data_rate(Scheme::basis, cfg, a1, std::nullopt);
            const double mod1 = data_rate(Scheme::mod1, cfg, a1, derive_block_plan(52, l));
            const double mod2 = data_rate(Scheme::mod2, cfg, a1, derive_block_plan(52, l, m));
            CHECK(basis >= mod2);
            CHECK(mod2 >= mod1);
        }
}

TEST_CASE("bit-rate-to-interference ratio") {
    const double eb = 1e-3, ts = 4e-6;
    CHECK(bri(Scheme::basis, eb, ts, 52, std::nullopt) == doctest::Approx(500e6));
    CHECK(bri(Scheme::mod1, eb, ts, 52, derive_block_plan(52, 13)) == doctest::Approx(500e6 / 13));
    CHECK(bri(Scheme::mod2, eb, ts, 52, derive_block_plan(52, 13, 2)) == doctest::Approx(750e6));
    for (std::size_t l = 3; l <= 25; l += 2) {
        const double m2 = bri(Scheme::mod2, eb, ts, 52, derive_block_plan(52, l, 1));
        CHECK(m2 == doctest::Approx(double(floor_log2(l)) * 250e6));
        CHECK(m2 >= bri(Scheme::mod1, eb, ts, 52, derive_block_plan(52, l)));
    }
    CHECK_THROWS(bri(Scheme::basis, 0.0, ts, 52, std::nullopt));

    CHECK(mean_active_subcarriers(Scheme::basis, 52, std::nullopt) == doctest::Approx(26.0));
    CHECK(mean_active_subcarriers(Scheme::mod1, 52, derive_block_plan(52, 5)) == doctest::Approx(25.0));
    CHECK(mean_active_subcarriers(Scheme::mod2, 52, derive_block_plan(52, 13, 2)) == doctest::Approx(8.0));
}
