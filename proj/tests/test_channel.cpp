#include <cmath>

#include "ambc/channel.hpp"
#include "ambc/dft.hpp"
#include "ambc/ofdm.hpp"
#include "ambc/rng.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace ambc;

namespace {

ChannelProfile profile(ChannelMode mode, std::size_t taps = 1) {
    ChannelProfile p;
    p.mode = mode;
    p.taps_a = p.taps_b = taps;
    return p;
}

double sample_variance(const CVector& v) {
    Complex mean{0.0, 0.0};
    for (const auto& x : v) mean += x;
    mean /= double(v.size());
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x - mean);
    return s / double(v.size() - 1);
}

}  // namespace

TEST_CASE("AWGN realization is all ones") {
    ChannelProfile p = profile(ChannelMode::awgn);
    p.beta = 0.5;
    Rng rng = substream(1, 0, 0);
    const ChannelRealization c = draw_channel(p, 52, rng);
    REQUIRE(c.size() == 52);
    for (std::size_t l = 0; l < 52; ++l) {
        CHECK(c.freq_a[l] == Complex{1.0, 0.0});
        CHECK(c.freq_s[l] == Complex{0.5, 0.0});
    }
}

TEST_CASE("flat i.i.d. fading has the configured variances") {
    ChannelProfile p = profile(ChannelMode::rayleigh_flat_iid);
    p.var_a = 2.0;
    p.var_b = 1.5;
    p.var_c = 1.0;
    p.beta = 0.8;
    CVector a, comb;
    a.reserve(1'000'000);
    comb.reserve(1'000'000);
    for (std::uint64_t t = 0; a.size() < 1'000'000; ++t) {
        Rng rng = substream(9, 0, t);
        const ChannelRealization c = draw_channel(p, 50, rng);
        for (std::size_t l = 0; l < c.size(); ++l) {
            a.push_back(c.freq_a[l]);
            comb.push_back(c.combined(l));
        }
    }
    CHECK(std::abs(sample_variance(a) / p.var_a - 1.0) < 0.01);
    CHECK(std::abs(sample_variance(comb) / p.combined_power() - 1.0) < 0.01);
}

TEST_CASE("multipath with CP-length taps has the configured per-bin variance") {
    ChannelProfile p = profile(ChannelMode::rayleigh_multipath, 17);
    p.var_a = 1.0;
    CVector a;
    for (std::uint64_t t = 0; t < 20'000; ++t) {
        Rng rng = substream(13, 0, t);
        const ChannelRealization c = draw_channel(p, 52, rng);
        REQUIRE(c.h_a.size() == 17);
        a.insert(a.end(), c.freq_a.begin(), c.freq_a.end());
    }
    CHECK(std::abs(sample_variance(a) / p.var_a - 1.0) < 0.02);
}

TEST_CASE("tap-based realization matches its frequency response") {
    ChannelProfile p = profile(ChannelMode::rayleigh_multipath, 5);
    Rng rng = substream(2, 0, 0);
    const ChannelRealization c = draw_channel(p, 52, rng);
    const CVector fa = test::naive_dft(c.h_a, 52);
    const CVector fb = test::naive_dft(c.h_b, 52);
    for (std::size_t l = 0; l < 52; ++l) {
        CHECK(std::abs(c.freq_a[l] - fa[l]) < 1e-12);
        CHECK(std::abs(c.freq_s[l] - c.beta * c.h_c * fb[l]) < 1e-12);
    }
}

TEST_CASE("analytic-mode envelopes are co-phased") {
    ChannelProfile p = profile(ChannelMode::rayleigh_analytic);
    Rng rng = substream(4, 0, 0);
    const ChannelRealization c = draw_channel(p, 52, rng);
    for (std::size_t l = 0; l < 52; ++l) {
        const Complex a = c.freq_a[l], b = c.combined(l);
        CHECK(std::abs(std::arg(a * std::conj(b))) < 1e-9);
    }
}

TEST_CASE("analytic-mode envelopes are uncorrelated with the configured powers") {
    ChannelProfile p = profile(ChannelMode::rayleigh_analytic);
    double sa = 0, sb = 0, sab = 0, sa2 = 0, sb2 = 0;
    double n = 0;
    for (std::uint64_t t = 0; t < 4000; ++t) {
        Rng rng = substream(6, 0, t);
        const ChannelRealization c = draw_channel(p, 50, rng);
        for (std::size_t l = 0; l < c.size(); ++l) {
            const double a = std::abs(c.freq_a[l]), b = std::abs(c.combined(l));
            sa += a, sb += b, sab += a * b, sa2 += a * a, sb2 += b * b, n += 1;
        }
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double va = sa2 / n - (sa / n) * (sa / n), vb = sb2 / n - (sb / n) * (sb / n);
    CHECK(std::abs(cov / std::sqrt(va * vb)) < 0.01);
    CHECK(std::abs(sa2 / n / p.var_a - 1.0) < 0.01);
    CHECK(std::abs(sb2 / n / p.combined_power() - 1.0) < 0.01);
}

TEST_CASE("profile validation") {
    OfdmConfig cfg;
    ChannelProfile p = profile(ChannelMode::rayleigh_multipath, 17);
    CHECK_NOTHROW(p.validate(cfg.cp_len));
    p.taps_b = 18;
    CHECK_THROWS(p.validate(cfg.cp_len));
    p = profile(ChannelMode::awgn);
    p.beta = 0.0;
    CHECK_THROWS(p.validate(cfg.cp_len));
    p.beta = 1.5;
    CHECK_THROWS(p.validate(cfg.cp_len));
    p = profile(ChannelMode::awgn);
    p.var_a = 0.0;
    CHECK_THROWS(p.validate(cfg.cp_len));
    for (ChannelMode m : {ChannelMode::awgn, ChannelMode::rayleigh_multipath, ChannelMode::rayleigh_flat_iid,
                          ChannelMode::rayleigh_analytic})
        CHECK(channel_mode_from_string(to_string(m)) == m);
}

TEST_CASE("multipath convolution") {
    TimeSymbol x{CVector{1.0, 2.0, 3.0, 4.0}};
    const CVector id{1.0};
    CHECK(apply_multipath(x, id, 2).samples == x.samples);
    const CVector delay{0.0, 1.0};
    const TimeSymbol y = apply_multipath(x, delay, 2);
    CHECK(y.samples == CVector{0.0, 1.0, 2.0, 3.0});
    const CVector too_long{1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS(apply_multipath(x, too_long, 2));
}

TEST_CASE("CP-bounded convolution is diagonal after demodulation") {
    OfdmConfig cfg;
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng = substream(21, 0, t);
        const std::size_t ntaps = 1 + t % (cfg.cp_len + 1);
        CVector taps(ntaps);
        for (auto& h : taps) h = complex_gaussian(rng, 1.0);
        const FreqSymbols s = gen_bpsk(cfg.used_subcarriers, 1.0, rng);
        const FreqSymbols r = demodulate(apply_multipath(modulate(s, cfg), taps, cfg.cp_len), cfg);
        const CVector h = test::naive_dft(taps, cfg.used_subcarriers);
        for (std::size_t l = 0; l < cfg.used_subcarriers; ++l) CHECK(std::abs(r.values[l] - h[l] * s.values[l]) < 1e-9);
    }
}

TEST_CASE("noise injection") {
    Rng rng = substream(8, 0, 0);
    const TimeSymbol x{CVector(100, Complex{1.0, -1.0})};
    CHECK(add_noise(x, 0.0, rng).samples == x.samples);
    CHECK_THROWS(add_noise(x, -1.0, rng));

    const double n0 = 0.3;
    const TimeSymbol z = add_noise(TimeSymbol{CVector(1'000'000)}, n0, rng);
    CHECK(std::abs(sample_variance(z.samples) / n0 - 1.0) < 0.01);

    const Dft dft(64);
    double acc = 0.0;
    for (std::size_t b = 0; b < z.samples.size() / 64; ++b) {
        const CVector f = dft.forward(std::span<const Complex>(z.samples.data() + b * 64, 64));
        for (const auto& v : f) acc += std::norm(v);
    }
    CHECK(std::abs(acc / double(z.samples.size() / 64 * 64) / n0 - 1.0) < 0.01);

    const FreqSymbols f = add_noise(FreqSymbols{CVector(1'000'000)}, n0, rng);
    CHECK(std::abs(sample_variance(f.values) / n0 - 1.0) < 0.01);
}

TEST_CASE("per-subcarrier and total SNR") {
    OfdmConfig cfg;
    cfg.bit_energy = 2e-3;
    cfg.noise_psd = 1e-3;
    ChannelProfile p = profile(ChannelMode::awgn);
    Rng rng = substream(1, 0, 0);
    const ChannelRealization c = draw_channel(p, 52, rng);
    CHECK(per_subcarrier_snr(c, false, cfg, 0) == doctest::Approx(2.0));
    CHECK(per_subcarrier_snr(c, true, cfg, 0) == doctest::Approx(8.0));
    CHECK_THROWS(per_subcarrier_snr(c, true, cfg, 52));

    const ChannelRealization canc = channel_from_taps({1.0}, {-1.0}, 1.0, 1.0, 52);
    CHECK(per_subcarrier_snr(canc, true, cfg, 3) == doctest::Approx(0.0));

    CHECK(total_snr(c, Bits(52, 0), cfg) == doctest::Approx(2.0));
    CHECK(total_snr(c, Bits(52, 1), cfg) == doctest::Approx(8.0));
    Bits d(52, 0);
    for (std::size_t l = 0; l < 52; l += 3) d[l] = 1;
    const double q = 18, k = 52 - q;
    CHECK(total_snr(c, d, cfg) == doctest::Approx((k + 4 * q) / 52 * 2.0));
    CHECK_THROWS(total_snr(c, Bits(51, 0), cfg));
}
