#include "ambc/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace ambc {

CsiMode csi_mode_from_string(std::string_view name) {
    if (name == "genie") return CsiMode::genie;
    if (name == "pilot") return CsiMode::pilot;
    throw std::invalid_argument("unknown csi mode '" + std::string(name) + "'");
}

SimPath sim_path_from_string(std::string_view name) {
    if (name == "fast") return SimPath::fast;
    if (name == "waveform") return SimPath::waveform;
    throw std::invalid_argument("unknown simulation path '" + std::string(name) + "'");
}

std::optional<BlockPlan> ExperimentSpec::plan(const OfdmConfig& cfg) const {
    switch (scheme) {
        case Scheme::basis: return std::nullopt;
        case Scheme::mod1: return derive_block_plan(cfg.used_subcarriers, block_len);
        case Scheme::mod2: return derive_block_plan(cfg.used_subcarriers, block_len, active);
    }
    return std::nullopt;
}

Statistic ExperimentSpec::detector_statistic() const {
    if (statistic) return *statistic;
    const bool co_phased = channel.mode == ChannelMode::awgn || channel.mode == ChannelMode::rayleigh_analytic;
    return co_phased ? Statistic::coherent : Statistic::envelope;
}

void ExperimentSpec::validate(const OfdmConfig& cfg) const {
    cfg.validate();
    channel.validate(cfg.cp_len);
    if (snr_db.empty()) throw std::invalid_argument("experiment: SNR grid is empty");
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
        if (!std::isfinite(snr_db[i])) throw std::invalid_argument("experiment: SNR grid values must be finite");
        if (i > 0 && !(snr_db[i] > snr_db[i - 1]))
            throw std::invalid_argument("experiment: SNR grid must be strictly increasing");
    }
    if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("experiment: workers must be >= 1");
    if (batch < 1) throw std::invalid_argument("experiment: batch must be >= 1");
    if (csi == CsiMode::pilot && pilot_frames < 1)
        throw std::invalid_argument("experiment: pilot CSI needs at least one frame per phase");
    if (path == SimPath::waveform && channel.mode != ChannelMode::awgn &&
        channel.mode != ChannelMode::rayleigh_multipath)
        throw std::invalid_argument("experiment: waveform path needs a tap-based channel mode");
    (void)plan(cfg);
}

TrialRunner::TrialRunner(const ExperimentSpec& spec, const OfdmConfig& cfg)
    : spec_(spec), cfg_(cfg), plan_(spec.plan(cfg)), modem_(cfg) {
    if (spec_.scheme == Scheme::mod2) codebook_ = ImCodebook::for_plan(*plan_);
}

FreqSymbols TrialRunner::receive(const FreqSymbols& s, const TagMessage& msg, const ChannelRealization& chan,
                                 Rng& rng) const {
    const std::size_t n = cfg_.used_subcarriers;
    if (spec_.path == SimPath::fast) {
        FreqSymbols r = backscatter_fast(s, msg, chan);
        for (std::size_t l = 0; l < n; ++l) r.values[l] += chan.freq_a[l] * s.values[l];
        return add_noise(std::move(r), cfg_.noise_psd, rng);
    }
    const TimeSymbol x = modem_.modulate(s);
    TimeSymbol y = apply_multipath(x, chan.h_a, cfg_.cp_len);
    const TimeSymbol u = apply_multipath(x, chan.h_b, cfg_.cp_len);
    const TimeSymbol tag = backscatter(u, msg, chan, modem_);
    for (std::size_t i = 0; i < y.samples.size(); ++i) y.samples[i] += tag.samples[i];
    return modem_.demodulate(add_noise(std::move(y), cfg_.noise_psd, rng));
}

TrialCounts TrialRunner::run_on(const ChannelRealization& chan, Rng& rng) const {
    const std::size_t n = cfg_.used_subcarriers;
    if (chan.size() != n) throw std::invalid_argument("run_on: channel size differs from N");

    Bits bits(payload_bits(spec_.scheme, cfg_, plan_));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    const TagMessage msg = encode(spec_.scheme, bits, cfg_, plan_);

    CsiEstimate csi;
    if (spec_.csi == CsiMode::genie) {
        csi = CsiEstimate::from_channel(chan);
    } else {
        FreqSymbols pilot;
        pilot.values.assign(n, Complex{std::sqrt(cfg_.bit_energy), 0.0});
        TagMessage silent = msg;
        silent.activation.assign(n, 0);
        TagMessage reflecting = msg;
        reflecting.activation.assign(n, 1);
        std::vector<FreqSymbols> phase0, phase1;
        for (std::size_t f = 0; f < spec_.pilot_frames; ++f) phase0.push_back(receive(pilot, silent, chan, rng));
        for (std::size_t f = 0; f < spec_.pilot_frames; ++f) phase1.push_back(receive(pilot, reflecting, chan, rng));
        csi = estimate_csi_pilot(phase0, phase1, pilot);
    }

    const FreqSymbols s = gen_bpsk(n, cfg_.bit_energy, rng);
    const FreqSymbols r = receive(s, msg, chan, rng);

    Bits decoded;
    switch (spec_.scheme) {
        case Scheme::basis: decoded = detect_basis(r, csi, cfg_, spec_.detector_statistic()).bits; break;
        case Scheme::mod1: decoded = detect_mod1(r, csi, *plan_, cfg_, spec_.detector_statistic()).bits; break;
        case Scheme::mod2: {
            Mod2Options opts = spec_.mod2;
            opts.statistic = spec_.detector_statistic();
            decoded = detect_mod2(r, csi, *plan_, *codebook_, cfg_, opts).bits;
            break;
        }
    }

    TrialCounts out;
    out.bits_sent = bits.size();
    for (std::size_t i = 0; i < bits.size(); ++i) out.bit_errors += bits[i] != decoded[i] ? 1 : 0;
    out.composite_snr = cfg_.noise_psd > 0.0 ? total_snr(chan, msg.activation, cfg_)
                                             : std::numeric_limits<double>::infinity();
    return out;
}

TrialCounts TrialRunner::run(std::uint64_t stream, std::uint64_t trial) const {
    Rng rng = substream(spec_.seed, stream, trial);
    const ChannelRealization chan = draw_channel(spec_.channel, cfg_.used_subcarriers, rng);
    return run_on(chan, rng);
}

TrialCounts run_trial(const ExperimentSpec& spec, const OfdmConfig& cfg, std::uint64_t stream, std::uint64_t trial) {
    return TrialRunner(spec, cfg).run(stream, trial);
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double majority_or_nan(double p, std::size_t block_len) {
    if (!(p >= 0.0 && p <= 1.0)) return kNaN;
    return ber_mod1(p, block_len);
}

struct BatchTotals {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double snr_sum = 0.0;
};

BatchTotals run_batch(const TrialRunner& runner, std::uint64_t stream, std::uint64_t first, std::uint64_t last) {
    BatchTotals t;
    for (std::uint64_t i = first; i < last; ++i) {
        const TrialCounts c = runner.run(stream, i);
        t.bits += c.bits_sent;
        t.errors += c.bit_errors;
        t.snr_sum += c.composite_snr;
        ++t.trials;
    }
    return t;
}

}  // namespace

std::pair<double, double> analytic_prediction(const ExperimentSpec& spec, double gamma) {
    if (spec.scheme == Scheme::mod2) return {kNaN, kNaN};
    double closed = kNaN;
    double numeric = kNaN;
    const ChannelProfile& ch = spec.channel;
    if (ch.mode == ChannelMode::awgn) {
        if (ch.beta == 1.0) {
            closed = ber_awgn(gamma).exact;
            numeric = ber_awgn_numeric(gamma);
        } else {
            numeric = conditional_pe(1.0, 1.0 + ch.beta, gamma).exact;
        }
    } else {
        closed = ber_rayleigh_closed(ClosedFormTerms::from_gamma(gamma, ch.var_a, spec.mu_convention)).value;
        numeric = ber_rayleigh_numeric(gamma, EnvelopePowers{ch.var_a, ch.combined_power()}, spec.conditional).value;
    }
    if (spec.scheme == Scheme::mod1) {
        closed = majority_or_nan(closed, spec.block_len);
        numeric = majority_or_nan(numeric, spec.block_len);
    }
    return {closed, numeric};
}

std::vector<BerRecord> run_sweep(const ExperimentSpec& spec, const OfdmConfig& cfg) {
    spec.validate(cfg);
    std::vector<BerRecord> records;
    records.reserve(spec.snr_db.size());
    const std::uint64_t n_batches = (spec.trials + spec.batch - 1) / spec.batch;

    for (std::size_t p = 0; p < spec.snr_db.size(); ++p) {
        const auto t0 = std::chrono::steady_clock::now();
        const double gamma = std::pow(10.0, spec.snr_db[p] / 10.0);
        OfdmConfig point_cfg = cfg;
        point_cfg.noise_psd = cfg.bit_energy / gamma;
        const TrialRunner runner(spec, point_cfg);

        BatchTotals acc;
        bool stop = false;
        for (std::uint64_t k = 0; k < n_batches && !stop;) {
            const std::uint64_t round = std::min<std::uint64_t>(spec.workers, n_batches - k);
            std::vector<BatchTotals> results(round);
            auto bounds = [&](std::uint64_t j) {
                const std::uint64_t first = (k + j) * spec.batch;
                return std::pair{first, std::min(first + spec.batch, spec.trials)};
            };
            if (round == 1) {
                const auto [first, last] = bounds(0);
                results[0] = run_batch(runner, p, first, last);
            } else {
                std::vector<std::exception_ptr> failures(round);
                std::vector<std::thread> pool;
                pool.reserve(round);
                for (std::uint64_t j = 0; j < round; ++j) {
                    pool.emplace_back([&, j] {
                        try {
                            const auto [first, last] = bounds(j);
                            results[j] = run_batch(runner, p, first, last);
                        } catch (...) {
                            failures[j] = std::current_exception();
                        }
                    });
                }
                for (auto& t : pool) t.join();
                for (auto& f : failures)
                    if (f) std::rethrow_exception(f);
            }
            // Batches are folded in index order so the stopping point does not
            // depend on how many ran concurrently.
            for (std::uint64_t j = 0; j < round; ++j) {
                acc.bits += results[j].bits;
                acc.errors += results[j].errors;
                acc.trials += results[j].trials;
                acc.snr_sum += results[j].snr_sum;
                ++k;
                if (spec.max_bit_errors > 0 && acc.errors >= spec.max_bit_errors) {
                    stop = true;
                    break;
                }
            }
        }

        BerRecord rec;
        rec.scheme = spec.scheme;
        rec.block_len = spec.block_len;
        rec.active = spec.active;
        rec.gamma_db = spec.snr_db[p];
        rec.bits_sent = acc.bits;
        rec.bit_errors = acc.errors;
        rec.ber_mc = acc.bits > 0 ? static_cast<double>(acc.errors) / static_cast<double>(acc.bits) : 0.0;
        std::tie(rec.ber_closed, rec.ber_numeric) = analytic_prediction(spec, gamma);
        if (spec.record_wall_time)
            rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (spec.verbose) {
            std::cerr << "point " << spec.snr_db[p] << " dB: " << acc.trials << " symbols, mean composite SNR "
                      << 10.0 * std::log10(acc.snr_sum / static_cast<double>(acc.trials)) << " dB\n";
        }
        records.push_back(rec);
    }
    return records;
}

std::string scheme_label(Scheme scheme, std::size_t block_len, std::size_t active) {
    switch (scheme) {
        case Scheme::basis: return "basis";
        case Scheme::mod1: return "mod1_L" + std::to_string(block_len);
        case Scheme::mod2: return "mod2_L" + std::to_string(block_len) + "_M" + std::to_string(active);
    }
    return "unknown";
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_ber_csv(std::ostream& out, const std::vector<BerRecord>& records) {
    out << "scheme,gamma_db,bits_sent,bit_errors,ber_mc,ber_closed,ber_numeric,wall_seconds\n";
    for (const auto& r : records) {
        out << scheme_label(r.scheme, r.block_len, r.active) << ',' << format_real(r.gamma_db) << ',' << r.bits_sent << ',' << r.bit_errors
            << ',' << format_real(r.ber_mc) << ',' << format_real(r.ber_closed) << ',' << format_real(r.ber_numeric)
            << ',' << format_real(r.wall_seconds) << '\n';
    }
}

}  // namespace ambc
