#pragma once

#include "ambc/dft.hpp"
#include "ambc/rng.hpp"
#include "ambc/sysconfig.hpp"
#include "ambc/types.hpp"

namespace ambc {

/// CP-OFDM modem over the used subcarriers. The transform spans exactly the
/// N used bins; guard bins of the wider DFT grid are not modelled.
class OfdmModem {
public:
    explicit OfdmModem(const OfdmConfig& cfg);

    std::size_t n_used() const { return n_; }
    std::size_t cp_len() const { return cp_; }

    /// Unitary IDFT of `s` with the last cp_len samples prepended.
    TimeSymbol modulate(const FreqSymbols& s) const;

    /// Drops the CP and applies the unitary DFT.
    FreqSymbols demodulate(const TimeSymbol& y) const;

    const Dft& dft() const { return dft_; }

private:
    std::size_t n_;
    std::size_t cp_;
    Dft dft_;
};

TimeSymbol modulate(const FreqSymbols& s, const OfdmConfig& cfg);
FreqSymbols demodulate(const TimeSymbol& y, const OfdmConfig& cfg);

/// i.i.d. equiprobable BPSK symbols of amplitude sqrt(bit_energy).
FreqSymbols gen_bpsk(std::size_t n, double bit_energy, Rng& rng);

}  // namespace ambc
