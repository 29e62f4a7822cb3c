#include <set>

#include "ambc/sysconfig.hpp"
#include "doctest.h"

using namespace ambc;

TEST_CASE("cluster geometry counts") {
    CHECK(derive_geometry(52, 1, 0).n_data == 52);
    CHECK(derive_geometry(52, 12, 0).n_data == 4);
    CHECK(derive_geometry(52, 4, 2).n_data == 9);
    CHECK_THROWS(derive_geometry(52, 53, 0));
    CHECK_THROWS(derive_geometry(52, 0, 0));
}

TEST_CASE("cluster geometry satisfies the packing bound") {
    for (std::size_t n = 1; n <= 64; ++n)
        for (std::size_t nf = 1; nf <= n; ++nf)
            for (std::size_t ng = 0; ng <= 8; ++ng) {
                const ClusterGeometry g = derive_geometry(n, nf, ng);
                REQUIRE(g.n_data >= 1);
                CHECK(g.occupied() <= n);
                CHECK(n < (g.n_data + 1) * nf + g.n_data * ng);
            }
}

TEST_CASE("block plans") {
    const BlockPlan rep = derive_block_plan(52, 13);
    CHECK(rep.g_blocks == 4);
    CHECK(rep.interleave_stride == 4);
    CHECK_FALSE(rep.index_modulated());

    CHECK(derive_block_plan(52, 1).g_blocks == 52);

    const BlockPlan im = derive_block_plan(52, 13, 2);
    CHECK(im.g_blocks == 4);
    CHECK(im.bits_per_block == 6);
    CHECK(im.index_modulated());

    CHECK_THROWS(derive_block_plan(52, 4));      // even L for repetition
    CHECK_THROWS(derive_block_plan(52, 13, 13)); // M = L
    CHECK_THROWS(derive_block_plan(52, 13, 0));
    CHECK_THROWS(derive_block_plan(52, 53));
    CHECK_THROWS(derive_block_plan(52, 0));
}

TEST_CASE("block count never grows with block length") {
    std::size_t prev = derive_block_plan(52, 1).g_blocks;
    for (std::size_t l = 3; l <= 51; l += 2) {
        const std::size_t g = derive_block_plan(52, l).g_blocks;
        CHECK(g <= prev);
        prev = g;
    }
}

TEST_CASE("block index sets are disjoint, full and in range") {
    for (std::size_t n : {13u, 52u, 64u})
        for (std::size_t l = 1; l <= n; l += 2) {
            const BlockPlan p = derive_block_plan(n, l);
            std::set<std::size_t> seen;
            for (std::size_t g = 0; g < p.g_blocks; ++g) {
                const auto idx = p.block_indices(g);
                CHECK(idx.size() == l);
                for (std::size_t i : idx) {
                    CHECK(i < n);
                    CHECK(seen.insert(i).second);
                }
            }
        }
}

TEST_CASE("binomial and floor_log2") {
    CHECK(binomial(13, 2) == 78);
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(5, 0) == 1);
    CHECK(floor_log2(78) == 6);
    CHECK(floor_log2(1) == 0);
    CHECK(floor_log2(64) == 6);
}

TEST_CASE("OFDM numerology validation") {
    OfdmConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.symbol_len() == 68);
    OfdmConfig bad = cfg;
    bad.used_subcarriers = 65;
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.symbol_duration = 3.2e-6;
    CHECK_THROWS(bad.validate());
    bad = cfg;
    bad.subcarrier_spacing = 300e3;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("scheme names round trip") {
    for (Scheme s : {Scheme::basis, Scheme::mod1, Scheme::mod2}) CHECK(scheme_from_string(to_string(s)) == s);
    CHECK_THROWS(scheme_from_string("mod3"));
}
