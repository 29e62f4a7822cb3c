#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ambc {

/// Tag signalling scheme: one bit per subcarrier, repetition over interleaved
/// blocks, or index modulation over interleaved blocks.
enum class Scheme { basis, mod1, mod2 };

std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view name);

/// OFDM numerology. Defaults follow the IEEE 802.11a grid.
struct OfdmConfig {
    std::size_t dft_size = 64;
    std::size_t used_subcarriers = 52;
    std::size_t cp_len = 16;
    double sample_rate = 20e6;
    double subcarrier_spacing = 312.5e3;
    double symbol_duration = 4e-6;
    double bit_energy = 1e-3;
    double noise_psd = 1e-3;

    /// Samples per transmitted symbol: body plus cyclic prefix.
    std::size_t symbol_len() const { return used_subcarriers + cp_len; }

    /// Throws std::invalid_argument when the numerology is inconsistent.
    void validate() const;
};

/// Notch-filter cluster layout over the used band.
struct ClusterGeometry {
    std::size_t n_filter = 1;
    std::size_t n_guard = 0;
    std::size_t n_data = 0;

    /// Subcarriers occupied by the clusters and the guards between them.
    std::size_t occupied() const { return n_data * n_filter + (n_data - 1) * n_guard; }
};

ClusterGeometry derive_geometry(std::size_t n_used, std::size_t n_filter, std::size_t n_guard);

/// Interleaved block partition of the used band. Block g owns subcarriers
/// g, g + stride, ..., g + (block_len - 1) * stride.
struct BlockPlan {
    std::size_t g_blocks = 0;
    std::size_t block_len = 0;
    std::size_t active_per_block = 0;  // 0 for repetition blocks
    std::size_t interleave_stride = 0;
    std::size_t bits_per_block = 1;

    bool index_modulated() const { return active_per_block != 0; }

    /// Subcarrier index of position k inside block g.
    std::size_t position(std::size_t g, std::size_t k) const { return g + k * interleave_stride; }

    std::vector<std::size_t> block_indices(std::size_t g) const;
};

/// Repetition plan when `active_per_block` is empty, index-modulation plan otherwise.
BlockPlan derive_block_plan(std::size_t n_used, std::size_t block_len,
                            std::optional<std::size_t> active_per_block = std::nullopt);

/// Exact binomial coefficient; throws std::overflow_error past 64 bits.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// floor(log2(x)) for x >= 1.
std::size_t floor_log2(std::uint64_t x);

}  // namespace ambc
