#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "ambc/rng.hpp"
#include "ambc/sysconfig.hpp"
#include "ambc/types.hpp"

namespace ambc {

enum class ChannelMode {
    awgn,
    /// CP-bounded tapped delay lines with a uniform power-delay profile.
    rayleigh_multipath,
    /// Per-subcarrier h_a, h_b ~ CN(0, var) drawn directly; scalar h_c per symbol.
    rayleigh_flat_iid,
    /// Per-subcarrier envelopes |h_a| and |h_a + h_s| drawn as independent
    /// Rayleigh variables sharing one phase. This is the joint law under which
    /// the averaged BER integral is exact.
    rayleigh_analytic,
};

std::string_view to_string(ChannelMode m);
ChannelMode channel_mode_from_string(std::string_view name);

struct ChannelProfile {
    ChannelMode mode = ChannelMode::awgn;
    std::size_t taps_a = 1;
    std::size_t taps_b = 1;
    double var_a = 1.0;
    double var_b = 1.0;
    double var_c = 1.0;
    double beta = 1.0;

    /// Enforces max channel order <= cp_len, positive variances, 0 < beta <= 1.
    void validate(std::size_t cp_len) const;

    /// Mean power of h_a + h_s on one subcarrier.
    double combined_power() const { return var_a + beta * beta * var_b * var_c; }
};

struct ChannelRealization {
    CVector h_a;  // time-domain taps; empty for the flat per-subcarrier modes
    CVector h_b;
    Complex h_c{1.0, 0.0};
    double beta = 1.0;
    CVector freq_a;  // direct link per subcarrier
    CVector freq_b;  // forward link per subcarrier
    CVector freq_s;  // dyadic link beta * h_c * freq_b

    std::size_t size() const { return freq_a.size(); }
    Complex combined(std::size_t l) const { return freq_a[l] + freq_s[l]; }
};

ChannelRealization draw_channel(const ChannelProfile& profile, std::size_t n, Rng& rng);

/// Builds a realization from explicit taps (frequency responses derived).
ChannelRealization channel_from_taps(CVector h_a, CVector h_b, Complex h_c, double beta, std::size_t n);

/// Linear convolution truncated to the input length (lower-triangular
/// Toeplitz product). Rejects tap counts beyond cp_len + 1.
TimeSymbol apply_multipath(const TimeSymbol& x, std::span<const Complex> taps, std::size_t cp_len);

TimeSymbol add_noise(TimeSymbol y, double n0, Rng& rng);
FreqSymbols add_noise(FreqSymbols y, double n0, Rng& rng);

/// SNR on subcarrier l given the tag bit on that subcarrier.
double per_subcarrier_snr(const ChannelRealization& chan, bool d_l, const OfdmConfig& cfg, std::size_t l);

/// Total received SNR over the band for activation vector d.
double total_snr(const ChannelRealization& chan, const Bits& d, const OfdmConfig& cfg);

}  // namespace ambc
