#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ambc {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> details;
    double seconds = 0.0;
};

/// Master seed shared by every statistical check.
inline constexpr std::uint64_t kCheckSeed = 0x2b7e151628aed2a6ULL;

/// Basis Monte Carlo on the AWGN profile against the three-term expression,
/// 0-12 dB, at least 1e6 bits per point, 3 binomial standard errors.
CriterionResult check_awgn_reproduction(std::size_t workers = 1);

/// Basis Monte Carlo on flat i.i.d. fading against the quadrature oracle over
/// 0-20 dB (>= 1e7 bits per point), plus SNR and block-length ordering on the
/// same channel. The independent-envelope channel is reported alongside.
CriterionResult check_rayleigh_oracle(std::size_t workers = 1);

/// Closed-form hypergeometric expression against the quadrature oracle, and
/// the a = 0 identity to 1e-12.
CriterionResult check_closed_form_audit();

/// Majority decoding under injected i.i.d. subcarrier errors against the
/// binomial tail, and exhaustive correction of up to (L-1)/2 flips.
CriterionResult check_repetition_coding();

/// Rate, power and BRI values of the three schemes.
CriterionResult check_rate_tables();

/// DFT, convolution, backscatter, IM codec, noiseless detection and
/// worker-count reproducibility checks.
CriterionResult check_structural_invariants();

/// Zero-margin behaviour of the CP-based baseline.
CriterionResult check_baseline_psi();

/// The fast subset (criteria 3, 5, 6, 7).
std::vector<CriterionResult> run_selftest();

/// Every criterion, 1 through 7; `on_result` sees each one as it finishes.
std::vector<CriterionResult> run_acceptance(std::size_t workers = 1,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

/// One "[PASS]"/"[FAIL]" line, then indented detail lines.
void print_result(std::ostream& out, const CriterionResult& r);

}  // namespace ambc
