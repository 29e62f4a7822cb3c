#include "ambc/reader.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ambc {

CsiEstimate CsiEstimate::from_channel(const ChannelRealization& chan) {
    return CsiEstimate{chan.freq_a, chan.freq_s, true};
}

CsiEstimate estimate_csi_pilot(const std::vector<FreqSymbols>& phase0, const std::vector<FreqSymbols>& phase1,
                               const FreqSymbols& pilot) {
    if (phase0.empty() || phase1.empty()) throw std::invalid_argument("estimate_csi_pilot: both pilot phases are required");
    const std::size_t n = pilot.values.size();
    for (const auto& x : pilot.values)
        if (x == Complex{0.0, 0.0}) throw std::invalid_argument("estimate_csi_pilot: zero pilot on a used subcarrier");

    auto average_ratio = [&](const std::vector<FreqSymbols>& frames) {
        CVector acc(n, Complex{0.0, 0.0});
        for (const auto& f : frames) {
            if (f.values.size() != n) throw std::invalid_argument("estimate_csi_pilot: frame length mismatch");
            for (std::size_t l = 0; l < n; ++l) acc[l] += f.values[l] / pilot.values[l];
        }
        for (auto& v : acc) v /= static_cast<double>(frames.size());
        return acc;
    };

    CsiEstimate est;
    est.freq_a_hat = average_ratio(phase0);
    est.freq_s_hat = average_ratio(phase1);
    for (std::size_t l = 0; l < n; ++l) est.freq_s_hat[l] -= est.freq_a_hat[l];
    return est;
}

Threshold threshold(Complex h_a, Complex h_s, double bit_energy) {
    const double a = std::abs(h_a);
    const double b = std::abs(h_a + h_s);
    return Threshold{(a + b) * std::sqrt(bit_energy) / 2.0,
                     a <= b ? Direction::greater_means_one : Direction::greater_means_zero};
}

Statistic statistic_from_string(std::string_view name) {
    if (name == "coherent") return Statistic::coherent;
    if (name == "envelope") return Statistic::envelope;
    throw std::invalid_argument("unknown detector statistic '" + std::string(name) + "'");
}

std::string_view to_string(Statistic s) { return s == Statistic::coherent ? "coherent" : "envelope"; }

Mod2Metric mod2_metric_from_string(std::string_view name) {
    if (name == "elementwise") return Mod2Metric::elementwise;
    if (name == "block-energy") return Mod2Metric::block_energy;
    throw std::invalid_argument("unknown mod2 metric '" + std::string(name) + "'");
}

double decision_statistic(Complex r, Complex h_a, Complex h_s, Statistic mode) {
    if (mode == Statistic::envelope) return std::abs(r);
    const Complex axis = 2.0 * h_a + h_s;
    if (axis == Complex{0.0, 0.0}) return std::abs(r.real());
    return std::abs((r * std::conj(axis)).real()) / std::abs(axis);
}

namespace {

void check_sizes(const FreqSymbols& r, const CsiEstimate& csi, const OfdmConfig& cfg) {
    if (r.values.size() != cfg.used_subcarriers || csi.size() != cfg.used_subcarriers)
        throw std::invalid_argument("detector: spectrum/CSI length differs from N");
}

DetectionOutcome energy_detect(const FreqSymbols& r, const CsiEstimate& csi, const OfdmConfig& cfg, Statistic mode) {
    check_sizes(r, csi, cfg);
    const std::size_t n = cfg.used_subcarriers;
    DetectionOutcome out;
    out.stats.resize(n);
    out.thresholds.resize(n);
    out.directions.resize(n);
    out.subcarrier_decisions.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        const Threshold th = threshold(csi.freq_a_hat[l], csi.freq_s_hat[l], cfg.bit_energy);
        const double t = decision_statistic(r.values[l], csi.freq_a_hat[l], csi.freq_s_hat[l], mode);
        const bool above = t > th.delta;
        out.stats[l] = t;
        out.thresholds[l] = th.delta;
        out.directions[l] = th.direction;
        out.subcarrier_decisions[l] = (above != (th.direction == Direction::greater_means_zero)) ? 1 : 0;
    }
    return out;
}

}  // namespace

DetectionOutcome detect_basis(const FreqSymbols& r, const CsiEstimate& csi, const OfdmConfig& cfg, Statistic mode) {
    DetectionOutcome out = energy_detect(r, csi, cfg, mode);
    out.bits = out.subcarrier_decisions;
    return out;
}

Bits majority_decode(const Bits& decisions, const BlockPlan& plan) {
    if (plan.block_len % 2 == 0) throw std::invalid_argument("majority_decode: block length must be odd");
    Bits bits(plan.g_blocks, 0);
    for (std::size_t g = 0; g < plan.g_blocks; ++g) {
        std::size_t ones = 0;
        for (std::size_t k = 0; k < plan.block_len; ++k) ones += decisions.at(plan.position(g, k)) ? 1 : 0;
        bits[g] = 2 * ones > plan.block_len ? 1 : 0;
    }
    return bits;
}

DetectionOutcome detect_mod1(const FreqSymbols& r, const CsiEstimate& csi, const BlockPlan& plan,
                             const OfdmConfig& cfg, Statistic mode) {
    if (plan.block_len % 2 == 0) throw std::invalid_argument("detect_mod1: block length must be odd");
    DetectionOutcome out = energy_detect(r, csi, cfg, mode);
    out.bits = majority_decode(out.subcarrier_decisions, plan);
    return out;
}

DetectionOutcome detect_mod2(const FreqSymbols& r, const CsiEstimate& csi, const BlockPlan& plan,
                             const ImCodebook& codebook, const OfdmConfig& cfg, const Mod2Options& opts) {
    check_sizes(r, csi, cfg);
    if (codebook.block_len != plan.block_len || codebook.active != plan.active_per_block ||
        codebook.bits_per_block != plan.bits_per_block)
        throw std::invalid_argument("detect_mod2: codebook does not match block plan");

    const std::size_t n = cfg.used_subcarriers;
    const std::size_t len = plan.block_len;
    const std::size_t p = plan.bits_per_block;
    const double amp = std::sqrt(cfg.bit_energy);

    std::vector<Bits> all_patterns;
    const std::vector<Bits>* candidates = &codebook.patterns;
    if (opts.search == Mod2Search::all_patterns) {
        const std::uint64_t total = binomial(len, plan.active_per_block);
        all_patterns.reserve(total);
        for (std::uint64_t k = 0; k < total; ++k) all_patterns.push_back(im_unrank(k, len, plan.active_per_block));
        candidates = &all_patterns;
    }

    DetectionOutcome out;
    out.stats.resize(n);
    for (std::size_t l = 0; l < n; ++l)
        out.stats[l] = decision_statistic(r.values[l], csi.freq_a_hat[l], csi.freq_s_hat[l], opts.statistic);
    out.bits.assign(plan.g_blocks * p, 0);
    out.block_ranks.resize(plan.g_blocks);

    std::vector<double> amp_off(len), amp_on(len);
    for (std::size_t g = 0; g < plan.g_blocks; ++g) {
        double stat_energy = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
            const std::size_t l = plan.position(g, k);
            amp_off[k] = std::abs(csi.freq_a_hat[l]) * amp;
            amp_on[k] = std::abs(csi.freq_a_hat[l] + csi.freq_s_hat[l]) * amp;
            stat_energy += out.stats[l] * out.stats[l];
        }
        double best = std::numeric_limits<double>::infinity();
        std::uint64_t best_rank = 0;
        for (std::size_t c = 0; c < candidates->size(); ++c) {
            const Bits& pat = (*candidates)[c];
            double objective = 0.0;
            if (opts.metric == Mod2Metric::elementwise) {
                for (std::size_t k = 0; k < len; ++k) {
                    const double diff = out.stats[plan.position(g, k)] - (pat[k] ? amp_on[k] : amp_off[k]);
                    objective += diff * diff;
                }
            } else {
                double model_energy = 0.0;
                for (std::size_t k = 0; k < len; ++k) {
                    const double a = pat[k] ? amp_on[k] : amp_off[k];
                    model_energy += a * a;
                }
                objective = std::abs(stat_energy - model_energy);
            }
            if (objective < best) {
                best = objective;
                best_rank = c;
            }
        }
        out.block_ranks[g] = best_rank;
        const std::uint64_t mask = (std::uint64_t{1} << p) - 1;
        index_to_bits(best_rank & mask, std::span(out.bits).subspan(g * p, p));
    }
    return out;
}

}  // namespace ambc
