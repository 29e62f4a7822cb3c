#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "ambc/channel.hpp"
#include "ambc/ofdm.hpp"
#include "ambc/rng.hpp"
#include "ambc/tag.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace ambc;

namespace {

Bits random_bits(std::size_t n, Rng& rng) {
    std::bernoulli_distribution coin(0.5);
    Bits b(n);
    for (auto& x : b) x = coin(rng) ? 1 : 0;
    return b;
}

std::size_t weight(const Bits& b) { return static_cast<std::size_t>(std::count(b.begin(), b.end(), 1)); }

ChannelRealization awgn(std::size_t n) { return channel_from_taps({1.0}, {1.0}, 1.0, 1.0, n); }

}  // namespace

TEST_CASE("basis encoding copies the bits") {
    OfdmConfig cfg;
    CHECK(weight(encode_basis(Bits(52, 0), cfg).activation) == 0);
    CHECK(weight(encode_basis(Bits(52, 1), cfg).activation) == 52);
    Rng rng = substream(1, 0, 0);
    const Bits b = random_bits(52, rng);
    const TagMessage m = encode_basis(b, cfg);
    CHECK(m.activation == b);
    CHECK(m.active_count() == weight(b));
    CHECK_THROWS(encode_basis(Bits(51, 0), cfg));
}

TEST_CASE("repetition encoding places each bit on its interleaved block") {
    OfdmConfig cfg;
    const BlockPlan plan = derive_block_plan(52, 13);
    const TagMessage m = encode_mod1(Bits{1, 0, 0, 0}, plan, cfg);
    for (std::size_t l = 0; l < 52; ++l) CHECK(m.activation[l] == (l % 4 == 0 ? 1 : 0));
    CHECK(weight(encode_mod1(Bits(4, 1), plan, cfg).activation) == 52);
    CHECK(weight(encode_mod1(Bits(4, 0), plan, cfg).activation) == 0);
    CHECK_THROWS(encode_mod1(Bits(5, 0), plan, cfg));

    const BlockPlan p5 = derive_block_plan(52, 5);  // G = 10, two trailing subcarriers
    const TagMessage full = encode_mod1(Bits(10, 1), p5, cfg);
    CHECK(weight(full.activation) == 50);
    CHECK(full.activation[50] == 0);
    CHECK(full.activation[51] == 0);
}

TEST_CASE("pattern ranks") {
    const Bits first{1, 0, 0, 0}, last{0, 0, 0, 1};
    CHECK(im_rank(first, 1) == 0);
    CHECK(im_rank(last, 1) == 3);
    CHECK_THROWS(im_rank(Bits{1, 1, 0, 0}, 1));
    CHECK_THROWS(im_unrank(4, 4, 1));

    // Brute enumeration in lexicographic order of the sorted support.
    std::size_t count = 0;
    for (std::size_t i = 0; i < 13; ++i)
        for (std::size_t j = i + 1; j < 13; ++j) {
            Bits p(13, 0);
            p[i] = p[j] = 1;
            CHECK(im_rank(p, 2) == count);
            ++count;
        }
    CHECK(count == 78);
    CHECK(binomial(13, 2) == 78);

    std::set<Bits> seen;
    for (std::uint64_t r = 0; r < 20; ++r) {
        const Bits p = im_unrank(r, 6, 3);
        CHECK(weight(p) == 3);
        CHECK(im_rank(p, 3) == r);
        CHECK(seen.insert(p).second);
    }
    CHECK(seen.size() == 20);
}

TEST_CASE("codebook holds the first 2^p distinct weight-M patterns") {
    for (std::size_t l = 2; l <= 12; ++l)
        for (std::size_t m = 1; m < l; ++m) {
            const ImCodebook cb = ImCodebook::make(l, m);
            CHECK(cb.bits_per_block == floor_log2(binomial(l, m)));
            REQUIRE(cb.patterns.size() == (std::size_t{1} << cb.bits_per_block));
            std::set<Bits> seen;
            for (std::size_t i = 0; i < cb.patterns.size(); ++i) {
                CHECK(weight(cb.patterns[i]) == m);
                CHECK(im_rank(cb.patterns[i], m) == i);
                CHECK(seen.insert(cb.patterns[i]).second);
            }
        }
}

TEST_CASE("index-modulation encoding") {
    OfdmConfig cfg;
    const BlockPlan plan = derive_block_plan(52, 13, 2);
    CHECK(payload_bits(Scheme::mod2, cfg, plan) == 24);
    const TagMessage zero = encode_mod2(Bits(24, 0), plan, cfg);
    CHECK(zero.active_count() == 8);
    for (std::size_t g = 0; g < 4; ++g) {
        CHECK(zero.activation[plan.position(g, 0)] == 1);
        CHECK(zero.activation[plan.position(g, 1)] == 1);
    }
    Rng rng = substream(2, 0, 0);
    for (int t = 0; t < 200; ++t) {
        const Bits b = random_bits(24, rng);
        const TagMessage m = encode_mod2(b, plan, cfg);
        CHECK(m.active_count() == 8);
        for (std::size_t g = 0; g < 4; ++g) {
            Bits pattern(13);
            for (std::size_t k = 0; k < 13; ++k) pattern[k] = m.activation[plan.position(g, k)];
            CHECK(im_rank(pattern, 2) == bits_to_index(std::span(b).subspan(6 * g, 6)));
        }
    }
    CHECK_THROWS(encode_mod2(Bits(23, 0), plan, cfg));
}

TEST_CASE("bit groups map to MSB-first integers") {
    const Bits b{1, 0, 1, 1};
    CHECK(bits_to_index(b) == 11);
    Bits out(4);
    index_to_bits(11, out);
    CHECK(out == b);
}

TEST_CASE("reference backscatter filtering") {
    OfdmConfig cfg;
    const OfdmModem modem(cfg);
    Rng rng = substream(3, 0, 0);
    const TimeSymbol u = modulate(gen_bpsk(52, 1.0, rng), cfg);
    ChannelRealization chan = awgn(52);
    chan.h_c = Complex{0.3, -0.4};
    chan.beta = 0.7;

    const TimeSymbol all = backscatter(u, encode_basis(Bits(52, 1), cfg), chan, modem);
    for (std::size_t i = 0; i < u.samples.size(); ++i)
        CHECK(std::abs(all.samples[i] - chan.h_c * chan.beta * u.samples[i]) < 1e-12);

    const TimeSymbol none = backscatter(u, encode_basis(Bits(52, 0), cfg), chan, modem);
    for (const auto& v : none.samples) CHECK(std::abs(v) < 1e-15);

    Bits one(52, 0);
    one[17] = 1;
    const FreqSymbols r = demodulate(backscatter(u, encode_basis(one, cfg), chan, modem), cfg);
    for (std::size_t l = 0; l < 52; ++l) {
        if (l == 17) CHECK(std::abs(r.values[l]) > 0.1);
        else CHECK(std::abs(r.values[l]) < 1e-9);
    }
}

TEST_CASE("fast and reference backscatter agree on multipath forward links") {
    OfdmConfig cfg;
    const OfdmModem modem(cfg);
    ChannelProfile p;
    p.mode = ChannelMode::rayleigh_multipath;
    p.taps_a = p.taps_b = 9;
    for (std::uint64_t t = 0; t < 20; ++t) {
        Rng rng = substream(4, 0, t);
        const ChannelRealization chan = draw_channel(p, 52, rng);
        const FreqSymbols s = gen_bpsk(52, 1.0, rng);
        const TagMessage msg = encode_basis(random_bits(52, rng), cfg);
        const TimeSymbol u = apply_multipath(modulate(s, cfg), chan.h_b, cfg.cp_len);
        const FreqSymbols ref = demodulate(backscatter(u, msg, chan, modem), cfg);
        const FreqSymbols fast = backscatter_fast(s, msg, chan);
        CHECK(test::max_abs_diff(ref.values, fast.values) <= 1e-9);
    }
}

TEST_CASE("backscattered power") {
    OfdmConfig cfg;
    const ChannelRealization chan = awgn(52);
    CHECK(backscatter_power(encode_basis(Bits(52, 0), cfg), chan, cfg) == 0.0);
    Bits half(52, 0);
    std::fill(half.begin(), half.begin() + 26, 1);
    CHECK(backscatter_power(encode_basis(half, cfg), chan, cfg) == doctest::Approx(0.5e-3));

    const BlockPlan plan = derive_block_plan(52, 13, 2);
    Rng rng = substream(5, 0, 0);
    for (int t = 0; t < 100; ++t) {
        const TagMessage m = encode_mod2(random_bits(24, rng), plan, cfg);
        CHECK(backscatter_power(m, chan, cfg) == doctest::Approx(8e-3 / 52).epsilon(1e-12));
    }
}

TEST_CASE("basis messages activate N/2 subcarriers on average") {
    OfdmConfig cfg;
    Rng rng = substream(6, 0, 0);
    double total = 0.0;
    const int messages = 100'000;
    for (int t = 0; t < messages; ++t) total += double(encode_basis(random_bits(52, rng), cfg).active_count());
    CHECK(std::abs(total / messages / 26.0 - 1.0) < 0.01);
}
