#pragma once

#include <cstdint>
#include <vector>

#include "ambc/channel.hpp"
#include "ambc/sysconfig.hpp"
#include "ambc/tag.hpp"
#include "ambc/types.hpp"

namespace ambc {

/// Reader-side knowledge of the direct and dyadic links.
struct CsiEstimate {
    CVector freq_a_hat;
    CVector freq_s_hat;
    bool genie = false;

    static CsiEstimate from_channel(const ChannelRealization& chan);
    std::size_t size() const { return freq_a_hat.size(); }
};

/// Least-squares CSI from the two pilot phases: tag silent (d = 0), then tag
/// reflecting every subcarrier (d = 1). Each frame is one received spectrum.
CsiEstimate estimate_csi_pilot(const std::vector<FreqSymbols>& phase0, const std::vector<FreqSymbols>& phase1,
                               const FreqSymbols& pilot);

enum class Direction : std::uint8_t { greater_means_one, greater_means_zero };

struct Threshold {
    double delta = 0.0;
    Direction direction = Direction::greater_means_one;
};

/// Midpoint amplitude threshold (|h_a| + |h_a + h_s|) sqrt(E_b) / 2. Larger
/// statistics mean bit 1 when reflection adds constructively, bit 0 otherwise;
/// equal magnitudes fall on the constructive side.
Threshold threshold(Complex h_a, Complex h_s, double bit_energy);

/// Per-subcarrier decision statistic.
///  - envelope: |r_l|.
///  - coherent: |Re(r_l e^{-j theta_l})| with theta_l = arg(2 h_a + h_s), the
///    in-phase amplitude along the mean of the two hypothesis channels.
enum class Statistic { coherent, envelope };

Statistic statistic_from_string(std::string_view name);
std::string_view to_string(Statistic s);

double decision_statistic(Complex r, Complex h_a, Complex h_s, Statistic mode);

struct DetectionOutcome {
    Bits bits;
    std::vector<double> stats;
    std::vector<double> thresholds;
    std::vector<Direction> directions;
    Bits subcarrier_decisions;            // hard per-subcarrier OOK decisions (basis, mod1)
    std::vector<std::uint64_t> block_ranks;  // detected pattern rank per block (mod2)
};

DetectionOutcome detect_basis(const FreqSymbols& r, const CsiEstimate& csi, const OfdmConfig& cfg,
                              Statistic mode = Statistic::coherent);

/// Majority vote over each block's interleaved positions; plan.block_len must be odd.
Bits majority_decode(const Bits& decisions, const BlockPlan& plan);

DetectionOutcome detect_mod1(const FreqSymbols& r, const CsiEstimate& csi, const BlockPlan& plan,
                             const OfdmConfig& cfg, Statistic mode = Statistic::coherent);

/// Objective minimised per block by the index-modulation detector.
///  - elementwise: sum_k (t_k - |h_a,k + h_s,k b_k| sqrt(E_b))^2
///  - block_energy: | sum_k t_k^2 - sum_k |h_a,k + h_s,k b_k|^2 E_b |
/// block_energy cannot separate patterns whose total channel energy is equal
/// (for instance any two patterns on a flat channel).
enum class Mod2Metric { elementwise, block_energy };
enum class Mod2Search { codebook, all_patterns };

Mod2Metric mod2_metric_from_string(std::string_view name);

struct Mod2Options {
    Mod2Metric metric = Mod2Metric::elementwise;
    Mod2Search search = Mod2Search::codebook;
    Statistic statistic = Statistic::coherent;
};

/// Exhaustive per-block search; ties go to the lowest rank. With
/// Mod2Search::all_patterns a winning rank outside the codebook is reported in
/// block_ranks and its low p bits are emitted.
DetectionOutcome detect_mod2(const FreqSymbols& r, const CsiEstimate& csi, const BlockPlan& plan,
                             const ImCodebook& codebook, const OfdmConfig& cfg, const Mod2Options& opts = {});

}  // namespace ambc
