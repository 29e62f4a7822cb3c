#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ambc/analysis.hpp"
#include "ambc/channel.hpp"
#include "ambc/sim.hpp"
#include "ambc/sysconfig.hpp"

namespace ambc {

/// One scheme entry of an analytic or table grid.
struct SchemeEntry {
    Scheme scheme = Scheme::basis;
    std::size_t block_len = 0;
    std::size_t active = 0;
};

struct AnalyticSpec {
    std::vector<SchemeEntry> schemes{{Scheme::basis, 0, 0}};
    std::vector<double> snr_db;
    double sigma_sq = 1.0;
    std::size_t n_cp = 16;
    std::size_t channel_order = 16;
    MuConvention mu_convention = MuConvention::sqrt_gamma;
    ConditionalModel conditional = ConditionalModel::approx;
};

enum class PowerMode { mean, peak };

struct TablesSpec {
    std::vector<Scheme> schemes{Scheme::basis, Scheme::mod1, Scheme::mod2};
    std::vector<std::size_t> n_used;  // empty: the OFDM section's N
    std::vector<std::size_t> block_lens{3, 5, 7, 9, 11, 13};
    std::vector<std::size_t> actives{1, 2, 3};
    PowerMode power = PowerMode::mean;
};

struct AppConfig {
    OfdmConfig ofdm;
    std::size_t n_filter = 1;
    std::size_t n_guard = 0;
    ChannelProfile channel;
    std::vector<ExperimentSpec> experiments;
    AnalyticSpec analytic;
    TablesSpec tables;

    ClusterGeometry geometry() const { return derive_geometry(ofdm.used_subcarriers, n_filter, n_guard); }
};

/// Parses a JSON document. Sections: "ofdm", "channel", "experiment" (object
/// or array; each entry may carry its own "channel"), "analytic", "tables".
/// Unknown keys and malformed values throw std::invalid_argument.
AppConfig parse_config(const std::string& json_text);
AppConfig load_config(const std::string& path);

/// SNR grid from either a list or {"start", "stop", "step"} (inclusive).
std::vector<double> snr_grid(double start, double stop, double step);

}  // namespace ambc
