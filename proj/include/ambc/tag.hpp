#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ambc/channel.hpp"
#include "ambc/ofdm.hpp"
#include "ambc/sysconfig.hpp"
#include "ambc/types.hpp"

namespace ambc {

/// Tag payload together with the subcarrier activation it induces.
struct TagMessage {
    Scheme scheme = Scheme::basis;
    Bits bits;
    Bits activation;  // d, one entry per used subcarrier
    std::optional<BlockPlan> plan;

    std::size_t active_count() const;
};

/// Lexicographic rank of a weight-M pattern among all C(L, M) such patterns.
/// Patterns are ordered by their sorted support, so {0,1} < {0,2} < ... < {L-2,L-1}.
std::uint64_t im_rank(std::span<const std::uint8_t> pattern, std::size_t active);
Bits im_unrank(std::uint64_t rank, std::size_t block_len, std::size_t active);

/// The first 2^p lexicographic patterns; index i carries the p-bit value i.
struct ImCodebook {
    std::size_t block_len = 0;
    std::size_t active = 0;
    std::size_t bits_per_block = 0;
    std::vector<Bits> patterns;

    static ImCodebook make(std::size_t block_len, std::size_t active);
    static ImCodebook for_plan(const BlockPlan& plan) { return make(plan.block_len, plan.active_per_block); }
};

/// MSB-first integer value of `bits` (at most 63 of them).
std::uint64_t bits_to_index(std::span<const std::uint8_t> bits);
void index_to_bits(std::uint64_t value, std::span<std::uint8_t> out);

TagMessage encode_basis(const Bits& bits, const OfdmConfig& cfg);
TagMessage encode_mod1(const Bits& bits, const BlockPlan& plan, const OfdmConfig& cfg);
TagMessage encode_mod2(const Bits& bits, const BlockPlan& plan, const OfdmConfig& cfg);

/// Number of payload bits one symbol carries under `scheme`.
std::size_t payload_bits(Scheme scheme, const OfdmConfig& cfg, const std::optional<BlockPlan>& plan);

TagMessage encode(Scheme scheme, const Bits& bits, const OfdmConfig& cfg, const std::optional<BlockPlan>& plan);

/// Reference path: circular notch filtering of the tag-incident symbol u.
/// The body is transformed, masked by the activation vector, transformed back,
/// re-prefixed and scaled by h_c * beta.
TimeSymbol backscatter(const TimeSymbol& u, const TagMessage& msg, const ChannelRealization& chan,
                       const OfdmModem& modem);

/// Fast path: the backscattered contribution after the reader's DFT,
/// h_s[l] * d[l] * s[l].
FreqSymbols backscatter_fast(const FreqSymbols& s, const TagMessage& msg, const ChannelRealization& chan);

/// Average backscattered power beta^2 * E_b * sum_{active l} |h_b[l]|^2 / N.
double backscatter_power(const TagMessage& msg, const ChannelRealization& chan, const OfdmConfig& cfg);

}  // namespace ambc
