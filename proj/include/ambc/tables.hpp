#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ambc/config.hpp"

namespace ambc {

struct RateRow {
    Scheme scheme = Scheme::basis;
    std::size_t n_used = 0;
    std::size_t block_len = 0;  // 0 when not applicable
    std::size_t active = 0;     // 0 when not applicable
    double rate_bps = 0.0;
    double avg_power = 0.0;     // W, unit forward gain, beta = 1
    double bri = 0.0;           // Mb/s/W
};

/// Rate, backscattered power and BRI over the configured grids. Invalid
/// (L, M) combinations for a scheme are skipped.
std::vector<RateRow> run_tables(const AppConfig& cfg);
void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows);

struct AnalyticRow {
    SchemeEntry entry;
    double gamma_db = 0.0;
    double pe_closed = 0.0;
    double pe_numeric = 0.0;
    double pe_awgn_exact = 0.0;
    double pe_awgn_approx = 0.0;
    double psi = 0.0;
    double rate_bps = 0.0;
    double bri = 0.0;  // Mb/s/W
};

/// Closed forms and quadrature per scheme and grid point. Repetition blocks
/// map every basis probability through the majority-vote tail; index
/// modulation has no analytic BER and reports NaN. psi is NaN below 0 dB.
std::vector<AnalyticRow> run_analytic(const AppConfig& cfg);
void write_analytic_csv(std::ostream& out, const std::vector<AnalyticRow>& rows);

}  // namespace ambc
