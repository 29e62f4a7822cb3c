#include "ambc/ofdm.hpp"

#include <cmath>
#include <stdexcept>

namespace ambc {

OfdmModem::OfdmModem(const OfdmConfig& cfg)
    : n_(cfg.used_subcarriers), cp_(cfg.cp_len), dft_(cfg.used_subcarriers) {
    if (cp_ > n_) throw std::invalid_argument("OfdmModem: cp_len longer than symbol body");
}

TimeSymbol OfdmModem::modulate(const FreqSymbols& s) const {
    if (s.values.size() != n_) throw std::invalid_argument("modulate: expected N frequency symbols");
    TimeSymbol out;
    out.samples.resize(n_ + cp_);
    dft_.inverse(s.values, std::span<Complex>(out.samples).subspan(cp_));
    for (std::size_t i = 0; i < cp_; ++i) out.samples[i] = out.samples[n_ + i];
    return out;
}

FreqSymbols OfdmModem::demodulate(const TimeSymbol& y) const {
    if (y.samples.size() != n_ + cp_) throw std::invalid_argument("demodulate: expected N + N_cp samples");
    FreqSymbols out;
    out.values.resize(n_);
    dft_.forward(std::span<const Complex>(y.samples).subspan(cp_), out.values);
    return out;
}

TimeSymbol modulate(const FreqSymbols& s, const OfdmConfig& cfg) { return OfdmModem(cfg).modulate(s); }

FreqSymbols demodulate(const TimeSymbol& y, const OfdmConfig& cfg) { return OfdmModem(cfg).demodulate(y); }

FreqSymbols gen_bpsk(std::size_t n, double bit_energy, Rng& rng) {
    if (n < 1) throw std::invalid_argument("gen_bpsk: n must be >= 1");
    const double amp = std::sqrt(bit_energy);
    FreqSymbols s;
    s.values.resize(n);
    for (auto& v : s.values) v = (rng() & 1U) ? Complex{amp, 0.0} : Complex{-amp, 0.0};
    return s;
}

}  // namespace ambc
