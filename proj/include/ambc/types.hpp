#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace ambc {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using Bits = std::vector<std::uint8_t>;

/// Per-subcarrier complex amplitudes after (or before) the DFT.
struct FreqSymbols {
    CVector values;
};

/// Baseband samples of one OFDM symbol, cyclic prefix first.
struct TimeSymbol {
    CVector samples;
};

}  // namespace ambc
