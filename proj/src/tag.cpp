#include "ambc/tag.hpp"

#include <algorithm>
#include <stdexcept>

namespace ambc {

std::size_t TagMessage::active_count() const {
    return static_cast<std::size_t>(std::count(activation.begin(), activation.end(), std::uint8_t{1}));
}

std::uint64_t im_rank(std::span<const std::uint8_t> pattern, std::size_t active) {
    const std::size_t len = pattern.size();
    const auto weight = static_cast<std::size_t>(std::count_if(pattern.begin(), pattern.end(),
                                                               [](std::uint8_t b) { return b != 0; }));
    if (weight != active) throw std::invalid_argument("im_rank: pattern weight differs from M");
    // Count the patterns that precede this one: at each chosen position p_i,
    // every skipped position j opens C(len - 1 - j, remaining - 1) smaller patterns.
    std::uint64_t rank = 0;
    std::size_t remaining = active;
    for (std::size_t j = 0; j < len && remaining > 0; ++j) {
        if (pattern[j]) {
            --remaining;
        } else {
            rank += binomial(len - 1 - j, remaining - 1);
        }
    }
    return rank;
}

Bits im_unrank(std::uint64_t rank, std::size_t block_len, std::size_t active) {
    if (active > block_len) throw std::invalid_argument("im_unrank: M exceeds L");
    if (rank >= binomial(block_len, active)) throw std::out_of_range("im_unrank: rank out of range");
    Bits out(block_len, 0);
    std::size_t remaining = active;
    for (std::size_t j = 0; j < block_len && remaining > 0; ++j) {
        const std::uint64_t with_j = binomial(block_len - 1 - j, remaining - 1);
        if (rank < with_j) {
            out[j] = 1;
            --remaining;
        } else {
            rank -= with_j;
        }
    }
    return out;
}

ImCodebook ImCodebook::make(std::size_t block_len, std::size_t active) {
    if (active < 1 || active >= block_len) throw std::invalid_argument("ImCodebook: need 1 <= M < L");
    const std::uint64_t total = binomial(block_len, active);
    if (total < 2) throw std::invalid_argument("ImCodebook: C(L,M) < 2");
    ImCodebook cb;
    cb.block_len = block_len;
    cb.active = active;
    cb.bits_per_block = floor_log2(total);
    const std::uint64_t size = std::uint64_t{1} << cb.bits_per_block;
    cb.patterns.reserve(size);
    for (std::uint64_t r = 0; r < size; ++r) cb.patterns.push_back(im_unrank(r, block_len, active));
    return cb;
}

std::uint64_t bits_to_index(std::span<const std::uint8_t> bits) {
    if (bits.size() > 63) throw std::invalid_argument("bits_to_index: group too wide");
    std::uint64_t v = 0;
    for (auto b : bits) v = (v << 1) | (b ? 1U : 0U);
    return v;
}

void index_to_bits(std::uint64_t value, std::span<std::uint8_t> out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[out.size() - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
}

TagMessage encode_basis(const Bits& bits, const OfdmConfig& cfg) {
    if (bits.size() != cfg.used_subcarriers) throw std::invalid_argument("encode_basis: expected N bits");
    TagMessage msg;
    msg.scheme = Scheme::basis;
    msg.bits = bits;
    msg.activation.resize(bits.size());
    for (std::size_t l = 0; l < bits.size(); ++l) msg.activation[l] = bits[l] ? 1 : 0;
    return msg;
}

TagMessage encode_mod1(const Bits& bits, const BlockPlan& plan, const OfdmConfig& cfg) {
    if (plan.index_modulated()) throw std::invalid_argument("encode_mod1: plan is index-modulated");
    if (bits.size() != plan.g_blocks) throw std::invalid_argument("encode_mod1: expected G bits");
    TagMessage msg;
    msg.scheme = Scheme::mod1;
    msg.bits = bits;
    msg.plan = plan;
    msg.activation.assign(cfg.used_subcarriers, 0);
    for (std::size_t g = 0; g < plan.g_blocks; ++g)
        for (std::size_t k = 0; k < plan.block_len; ++k) msg.activation[plan.position(g, k)] = bits[g] ? 1 : 0;
    return msg;
}

TagMessage encode_mod2(const Bits& bits, const BlockPlan& plan, const OfdmConfig& cfg) {
    if (!plan.index_modulated()) throw std::invalid_argument("encode_mod2: plan has no active count");
    const std::size_t p = plan.bits_per_block;
    if (bits.size() != plan.g_blocks * p) throw std::invalid_argument("encode_mod2: expected G*p bits");
    TagMessage msg;
    msg.scheme = Scheme::mod2;
    msg.bits = bits;
    msg.plan = plan;
    msg.activation.assign(cfg.used_subcarriers, 0);
    for (std::size_t g = 0; g < plan.g_blocks; ++g) {
        const std::uint64_t value = bits_to_index(std::span(bits).subspan(g * p, p));
        const Bits pattern = im_unrank(value, plan.block_len, plan.active_per_block);
        for (std::size_t k = 0; k < plan.block_len; ++k) msg.activation[plan.position(g, k)] = pattern[k];
    }
    return msg;
}

std::size_t payload_bits(Scheme scheme, const OfdmConfig& cfg, const std::optional<BlockPlan>& plan) {
    switch (scheme) {
        case Scheme::basis: return cfg.used_subcarriers;
        case Scheme::mod1:
        case Scheme::mod2:
            if (!plan) throw std::invalid_argument("payload_bits: block scheme needs a plan");
            return plan->g_blocks * plan->bits_per_block;
    }
    return 0;
}

TagMessage encode(Scheme scheme, const Bits& bits, const OfdmConfig& cfg, const std::optional<BlockPlan>& plan) {
    switch (scheme) {
        case Scheme::basis: return encode_basis(bits, cfg);
        case Scheme::mod1:
            if (!plan) throw std::invalid_argument("encode: mod1 needs a plan");
            return encode_mod1(bits, *plan, cfg);
        case Scheme::mod2:
            if (!plan) throw std::invalid_argument("encode: mod2 needs a plan");
            return encode_mod2(bits, *plan, cfg);
    }
    throw std::logic_error("encode: unhandled scheme");
}

TimeSymbol backscatter(const TimeSymbol& u, const TagMessage& msg, const ChannelRealization& chan,
                       const OfdmModem& modem) {
    const std::size_t n = modem.n_used();
    if (msg.activation.size() != n) throw std::invalid_argument("backscatter: activation length mismatch");
    FreqSymbols spectrum = modem.demodulate(u);
    const Complex gain = chan.h_c * chan.beta;
    for (std::size_t l = 0; l < n; ++l) spectrum.values[l] *= msg.activation[l] ? gain : Complex{0.0, 0.0};
    return modem.modulate(spectrum);
}

FreqSymbols backscatter_fast(const FreqSymbols& s, const TagMessage& msg, const ChannelRealization& chan) {
    const std::size_t n = s.values.size();
    if (msg.activation.size() != n || chan.size() != n)
        throw std::invalid_argument("backscatter_fast: length mismatch");
    FreqSymbols out;
    out.values.resize(n);
    for (std::size_t l = 0; l < n; ++l)
        out.values[l] = msg.activation[l] ? chan.freq_s[l] * s.values[l] : Complex{0.0, 0.0};
    return out;
}

double backscatter_power(const TagMessage& msg, const ChannelRealization& chan, const OfdmConfig& cfg) {
    if (msg.activation.size() != chan.size()) throw std::invalid_argument("backscatter_power: length mismatch");
    double acc = 0.0;
    for (std::size_t l = 0; l < msg.activation.size(); ++l)
        if (msg.activation[l]) acc += std::norm(chan.freq_b[l]);
    return chan.beta * chan.beta * cfg.bit_energy * acc / static_cast<double>(cfg.used_subcarriers);
}

}  // namespace ambc
