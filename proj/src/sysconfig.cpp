#include "ambc/sysconfig.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ambc {

namespace {

bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::basis: return "basis";
        case Scheme::mod1: return "mod1";
        case Scheme::mod2: return "mod2";
    }
    return "unknown";
}

Scheme scheme_from_string(std::string_view name) {
    if (name == "basis") return Scheme::basis;
    if (name == "mod1") return Scheme::mod1;
    if (name == "mod2") return Scheme::mod2;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

void OfdmConfig::validate() const {
    if (dft_size == 0 || used_subcarriers == 0)
        throw std::invalid_argument("dft_size and used_subcarriers must be positive");
    if (used_subcarriers > dft_size)
        throw std::invalid_argument("used_subcarriers exceeds dft_size");
    if (!(sample_rate > 0.0) || !(subcarrier_spacing > 0.0) || !(symbol_duration > 0.0))
        throw std::invalid_argument("sample_rate, subcarrier_spacing and symbol_duration must be positive");
    if (!close_rel(subcarrier_spacing * static_cast<double>(dft_size), sample_rate, 1e-9))
        throw std::invalid_argument("subcarrier_spacing * dft_size != sample_rate");
    if (!close_rel(static_cast<double>(dft_size + cp_len) / sample_rate, symbol_duration, 1e-9))
        throw std::invalid_argument("symbol_duration != (dft_size + cp_len) / sample_rate");
    if (!(bit_energy > 0.0)) throw std::invalid_argument("bit_energy must be positive");
    if (noise_psd < 0.0) throw std::invalid_argument("noise_psd must be nonnegative");
}

ClusterGeometry derive_geometry(std::size_t n_used, std::size_t n_filter, std::size_t n_guard) {
    if (n_used < 1 || n_filter < 1)
        throw std::invalid_argument("derive_geometry: n_used and n_filter must be >= 1");
    // N = N_d N_f + (N_d - 1) N_g, floored when the band does not pack exactly.
    const std::size_t n_data = (n_used + n_guard) / (n_filter + n_guard);
    if (n_data < 1) throw std::invalid_argument("derive_geometry: filter stopband wider than band");
    return ClusterGeometry{n_filter, n_guard, n_data};
}

std::vector<std::size_t> BlockPlan::block_indices(std::size_t g) const {
    std::vector<std::size_t> out(block_len);
    for (std::size_t k = 0; k < block_len; ++k) out[k] = position(g, k);
    return out;
}

BlockPlan derive_block_plan(std::size_t n_used, std::size_t block_len,
                            std::optional<std::size_t> active_per_block) {
    if (block_len < 1 || block_len > n_used)
        throw std::invalid_argument("derive_block_plan: need 1 <= L <= N");
    BlockPlan plan;
    plan.block_len = block_len;
    plan.g_blocks = n_used / block_len;
    plan.interleave_stride = plan.g_blocks;
    if (!active_per_block) {
        if (block_len % 2 == 0)
            throw std::invalid_argument("derive_block_plan: repetition blocks need odd L");
        plan.bits_per_block = 1;
        return plan;
    }
    const std::size_t m = *active_per_block;
    if (m < 1 || m >= block_len)
        throw std::invalid_argument("derive_block_plan: need 1 <= M < L");
    const std::uint64_t patterns = binomial(block_len, m);
    if (patterns < 2) throw std::invalid_argument("derive_block_plan: C(L,M) < 2 carries no bits");
    plan.active_per_block = m;
    plan.bits_per_block = floor_log2(patterns);
    return plan;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // r * (n - k + i) is divisible by i at every step.
        const std::uint64_t num = n - k + i;
        const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
        const std::uint64_t rr = r / g;
        const std::uint64_t den = i / g;
        const std::uint64_t nn = num / den;
        if (rr > std::numeric_limits<std::uint64_t>::max() / nn)
            throw std::overflow_error("binomial coefficient exceeds 64 bits");
        r = rr * nn;
    }
    return r;
}

std::size_t floor_log2(std::uint64_t x) {
    if (x == 0) throw std::invalid_argument("floor_log2(0)");
    return static_cast<std::size_t>(std::bit_width(x) - 1);
}

}  // namespace ambc
