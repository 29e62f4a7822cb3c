#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ambc/analysis.hpp"
#include "ambc/channel.hpp"
#include "ambc/ofdm.hpp"
#include "ambc/reader.hpp"
#include "ambc/sysconfig.hpp"
#include "ambc/tag.hpp"

namespace ambc {

enum class CsiMode { genie, pilot };

/// fast: received spectra composed directly per subcarrier.
/// waveform: time-domain modulation, tapped-delay convolution, reference
/// backscatter and sample noise, then demodulation. Needs tap-based channels.
enum class SimPath { fast, waveform };

CsiMode csi_mode_from_string(std::string_view name);
SimPath sim_path_from_string(std::string_view name);

struct ExperimentSpec {
    Scheme scheme = Scheme::basis;
    std::size_t block_len = 0;  // L, mod1 and mod2
    std::size_t active = 0;     // M, mod2
    ChannelProfile channel;
    CsiMode csi = CsiMode::genie;
    std::size_t pilot_frames = 1;  // frames per pilot phase
    std::vector<double> snr_db;    // gamma = E_b / N_0 grid
    std::uint64_t trials = 1000;   // OFDM symbols per grid point
    std::uint64_t max_bit_errors = 0;  // early stop threshold, 0 disables
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::uint64_t batch = 1024;  // trials per scheduling unit; early stop is checked between batches
    std::optional<Statistic> statistic;  // empty: coherent on co-phased channels, envelope otherwise
    Mod2Options mod2;
    SimPath path = SimPath::fast;
    ConditionalModel conditional = ConditionalModel::exact;  // model behind ber_numeric on fading channels
    MuConvention mu_convention = MuConvention::sqrt_gamma;   // closed form behind ber_closed
    bool record_wall_time = false;
    bool verbose = false;

    /// Throws std::invalid_argument on an empty or non-increasing grid,
    /// trials < 1, or parameters inconsistent with the scheme or OFDM grid.
    void validate(const OfdmConfig& cfg) const;

    std::optional<BlockPlan> plan(const OfdmConfig& cfg) const;

    Statistic detector_statistic() const;
};

struct TrialCounts {
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double composite_snr = 0.0;  // received SNR over the band for the drawn message
};

/// Per-point simulation state. cfg.noise_psd is used as given.
class TrialRunner {
public:
    TrialRunner(const ExperimentSpec& spec, const OfdmConfig& cfg);

    /// One OFDM symbol drawn from substream(seed, stream, trial).
    TrialCounts run(std::uint64_t stream, std::uint64_t trial) const;

    /// One OFDM symbol over a given channel; message, symbols and noise come from rng.
    TrialCounts run_on(const ChannelRealization& chan, Rng& rng) const;

private:
    FreqSymbols receive(const FreqSymbols& s, const TagMessage& msg, const ChannelRealization& chan,
                        Rng& rng) const;

    ExperimentSpec spec_;
    OfdmConfig cfg_;
    std::optional<BlockPlan> plan_;
    std::optional<ImCodebook> codebook_;
    OfdmModem modem_;
};

TrialCounts run_trial(const ExperimentSpec& spec, const OfdmConfig& cfg, std::uint64_t stream, std::uint64_t trial);

/// Scheme name with its block parameters: basis, mod1_L5, mod2_L13_M2.
std::string scheme_label(Scheme scheme, std::size_t block_len, std::size_t active);

struct BerRecord {
    Scheme scheme = Scheme::basis;
    std::size_t block_len = 0;
    std::size_t active = 0;
    double gamma_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;
    double ber_mc = 0.0;
    double ber_closed = 0.0;
    double ber_numeric = 0.0;
    double wall_seconds = 0.0;
};

/// Analytic companions of a Monte Carlo point: (closed form, numeric).
/// AWGN: three-term expression and its folded-Gaussian integral. Fading:
/// the hypergeometric closed form and the quadrature oracle. Repetition
/// blocks map both through the majority-vote tail. NaN where no expression
/// applies.
std::pair<double, double> analytic_prediction(const ExperimentSpec& spec, double gamma);

/// Grid point p uses substreams (seed, p, trial). Output is identical for any
/// worker count.
std::vector<BerRecord> run_sweep(const ExperimentSpec& spec, const OfdmConfig& cfg);

std::string format_real(double x);
void write_ber_csv(std::ostream& out, const std::vector<BerRecord>& records);

}  // namespace ambc
