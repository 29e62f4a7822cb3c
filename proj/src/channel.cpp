#include "ambc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ambc/dft.hpp"

namespace ambc {

std::string_view to_string(ChannelMode m) {
    switch (m) {
        case ChannelMode::awgn: return "awgn";
        case ChannelMode::rayleigh_multipath: return "rayleigh-multipath";
        case ChannelMode::rayleigh_flat_iid: return "rayleigh-flat-iid";
        case ChannelMode::rayleigh_analytic: return "rayleigh-analytic";
    }
    return "unknown";
}

ChannelMode channel_mode_from_string(std::string_view name) {
    if (name == "awgn") return ChannelMode::awgn;
    if (name == "rayleigh-multipath") return ChannelMode::rayleigh_multipath;
    if (name == "rayleigh-flat-iid") return ChannelMode::rayleigh_flat_iid;
    if (name == "rayleigh-analytic") return ChannelMode::rayleigh_analytic;
    throw std::invalid_argument("unknown channel mode '" + std::string(name) + "'");
}

void ChannelProfile::validate(std::size_t cp_len) const {
    if (taps_a < 1 || taps_b < 1) throw std::invalid_argument("channel: tap counts must be >= 1");
    if (taps_a - 1 > cp_len || taps_b - 1 > cp_len)
        throw std::invalid_argument("channel: channel order exceeds cyclic prefix");
    if (!(var_a > 0.0) || !(var_b > 0.0) || !(var_c > 0.0))
        throw std::invalid_argument("channel: variances must be positive");
    if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("channel: beta must lie in (0, 1]");
}

ChannelRealization channel_from_taps(CVector h_a, CVector h_b, Complex h_c, double beta, std::size_t n) {
    ChannelRealization c;
    c.freq_a = frequency_response(h_a, n);
    c.freq_b = frequency_response(h_b, n);
    c.freq_s.resize(n);
    for (std::size_t l = 0; l < n; ++l) c.freq_s[l] = beta * h_c * c.freq_b[l];
    c.h_a = std::move(h_a);
    c.h_b = std::move(h_b);
    c.h_c = h_c;
    c.beta = beta;
    return c;
}

ChannelRealization draw_channel(const ChannelProfile& profile, std::size_t n, Rng& rng) {
    switch (profile.mode) {
        case ChannelMode::awgn:
            return channel_from_taps({Complex{1.0, 0.0}}, {Complex{1.0, 0.0}}, Complex{1.0, 0.0},
                                     profile.beta, n);
        case ChannelMode::rayleigh_multipath: {
            CVector h_a(profile.taps_a), h_b(profile.taps_b);
            for (auto& t : h_a) t = complex_gaussian(rng, profile.var_a / static_cast<double>(profile.taps_a));
            for (auto& t : h_b) t = complex_gaussian(rng, profile.var_b / static_cast<double>(profile.taps_b));
            const Complex h_c = complex_gaussian(rng, profile.var_c);
            return channel_from_taps(std::move(h_a), std::move(h_b), h_c, profile.beta, n);
        }
        case ChannelMode::rayleigh_flat_iid: {
            ChannelRealization c;
            c.beta = profile.beta;
            c.freq_a.resize(n);
            c.freq_b.resize(n);
            c.freq_s.resize(n);
            for (auto& v : c.freq_a) v = complex_gaussian(rng, profile.var_a);
            for (auto& v : c.freq_b) v = complex_gaussian(rng, profile.var_b);
            c.h_c = complex_gaussian(rng, profile.var_c);
            for (std::size_t l = 0; l < n; ++l) c.freq_s[l] = profile.beta * c.h_c * c.freq_b[l];
            return c;
        }
        case ChannelMode::rayleigh_analytic: {
            ChannelRealization c;
            c.beta = profile.beta;
            c.h_c = Complex{1.0, 0.0};
            c.freq_a.resize(n);
            c.freq_b.resize(n);
            c.freq_s.resize(n);
            std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
            for (std::size_t l = 0; l < n; ++l) {
                const double a = std::abs(complex_gaussian(rng, profile.var_a));
                const double b = std::abs(complex_gaussian(rng, profile.combined_power()));
                const Complex rot = std::polar(1.0, phase(rng));
                c.freq_a[l] = a * rot;
                c.freq_s[l] = (b - a) * rot;
                c.freq_b[l] = c.freq_s[l] / profile.beta;
            }
            return c;
        }
    }
    throw std::logic_error("draw_channel: unhandled mode");
}

TimeSymbol apply_multipath(const TimeSymbol& x, std::span<const Complex> taps, std::size_t cp_len) {
    if (taps.empty()) throw std::invalid_argument("apply_multipath: empty tap vector");
    if (taps.size() > cp_len + 1) throw std::invalid_argument("apply_multipath: channel longer than cyclic prefix");
    const std::size_t len = x.samples.size();
    TimeSymbol y;
    y.samples.assign(len, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < len; ++i) {
        Complex acc{0.0, 0.0};
        const std::size_t kmax = std::min(taps.size(), i + 1);
        for (std::size_t k = 0; k < kmax; ++k) acc += taps[k] * x.samples[i - k];
        y.samples[i] = acc;
    }
    return y;
}

TimeSymbol add_noise(TimeSymbol y, double n0, Rng& rng) {
    if (n0 < 0.0) throw std::invalid_argument("add_noise: negative noise variance");
    if (n0 == 0.0) return y;
    for (auto& v : y.samples) v += complex_gaussian(rng, n0);
    return y;
}

FreqSymbols add_noise(FreqSymbols y, double n0, Rng& rng) {
    if (n0 < 0.0) throw std::invalid_argument("add_noise: negative noise variance");
    if (n0 == 0.0) return y;
    for (auto& v : y.values) v += complex_gaussian(rng, n0);
    return y;
}

double per_subcarrier_snr(const ChannelRealization& chan, bool d_l, const OfdmConfig& cfg, std::size_t l) {
    if (l >= chan.size()) throw std::out_of_range("per_subcarrier_snr: subcarrier index out of range");
    const Complex h = d_l ? chan.combined(l) : chan.freq_a[l];
    return cfg.bit_energy * std::norm(h) / cfg.noise_psd;
}

double total_snr(const ChannelRealization& chan, const Bits& d, const OfdmConfig& cfg) {
    if (d.size() != chan.size()) throw std::invalid_argument("total_snr: activation length mismatch");
    double acc = 0.0;
    for (std::size_t l = 0; l < d.size(); ++l) acc += std::norm(d[l] ? chan.combined(l) : chan.freq_a[l]);
    return acc / static_cast<double>(d.size()) * cfg.bit_energy / cfg.noise_psd;
}

}  // namespace ambc
