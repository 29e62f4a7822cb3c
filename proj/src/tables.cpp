#include "ambc/tables.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ambc/analysis.hpp"
#include "ambc/sim.hpp"

namespace ambc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<BlockPlan> plan_for(const SchemeEntry& e, std::size_t n_used) {
    switch (e.scheme) {
        case Scheme::basis: return std::nullopt;
        case Scheme::mod1: return derive_block_plan(n_used, e.block_len);
        case Scheme::mod2: return derive_block_plan(n_used, e.block_len, e.active);
    }
    return std::nullopt;
}

RateRow rate_row(const AppConfig& cfg, const SchemeEntry& e, std::size_t n_used, PowerMode power) {
    OfdmConfig o = cfg.ofdm;
    o.used_subcarriers = n_used;
    const std::optional<BlockPlan> plan = plan_for(e, n_used);
    const ClusterGeometry geom = derive_geometry(n_used, cfg.n_filter, cfg.n_guard);

    RateRow row;
    row.scheme = e.scheme;
    row.n_used = n_used;
    row.block_len = e.block_len;
    row.active = e.active;
    row.rate_bps = data_rate(e.scheme, o, geom, plan);
    double active = mean_active_subcarriers(e.scheme, n_used, plan);
    if (power == PowerMode::peak) {
        if (e.scheme == Scheme::basis) active = static_cast<double>(n_used);
        if (e.scheme == Scheme::mod1) active = static_cast<double>(plan->g_blocks * plan->block_len);
    }
    row.avg_power = active * o.bit_energy / static_cast<double>(n_used);
    row.bri = bri(e.scheme, o.bit_energy, o.symbol_duration, n_used, plan) / 1e6;
    return row;
}

std::string optional_size(std::size_t v) { return v == 0 ? std::string{} : std::to_string(v); }

}  // namespace

std::vector<RateRow> run_tables(const AppConfig& cfg) {
    const TablesSpec& t = cfg.tables;
    std::vector<std::size_t> grid = t.n_used;
    if (grid.empty()) grid.push_back(cfg.ofdm.used_subcarriers);

    std::vector<RateRow> rows;
    for (const std::size_t n : grid) {
        for (const Scheme s : t.schemes) {
            if (s == Scheme::basis) {
                rows.push_back(rate_row(cfg, {s, 0, 0}, n, t.power));
                continue;
            }
            for (const std::size_t l : t.block_lens) {
                if (s == Scheme::mod1) {
                    if (l < 1 || l > n || l % 2 == 0) continue;
                    rows.push_back(rate_row(cfg, {s, l, 0}, n, t.power));
                    continue;
                }
                for (const std::size_t m : t.actives) {
                    if (l < 2 || l > n || m < 1 || m >= l) continue;
                    rows.push_back(rate_row(cfg, {s, l, m}, n, t.power));
                }
            }
        }
    }
    return rows;
}

void write_rate_csv(std::ostream& out, const std::vector<RateRow>& rows) {
    out << "scheme,N_used,L,M,rate_bps,avg_power,bri\n";
    for (const auto& r : rows) {
        out << to_string(r.scheme) << ',' << r.n_used << ',' << optional_size(r.block_len) << ','
            << optional_size(r.active) << ',' << format_real(r.rate_bps) << ',' << format_real(r.avg_power) << ','
            << format_real(r.bri) << '\n';
    }
}

std::vector<AnalyticRow> run_analytic(const AppConfig& cfg) {
    const AnalyticSpec& a = cfg.analytic;
    if (a.snr_db.empty()) throw std::invalid_argument("analytic: SNR grid is empty");
    if (a.n_cp < a.channel_order) throw std::invalid_argument("analytic: n_cp below channel_order");
    const std::size_t n = cfg.ofdm.used_subcarriers;
    const ClusterGeometry geom = cfg.geometry();

    std::vector<AnalyticRow> rows;
    for (const SchemeEntry& e : a.schemes) {
        const std::optional<BlockPlan> plan = plan_for(e, n);
        const double rate = data_rate(e.scheme, cfg.ofdm, geom, plan);
        const double ratio = bri(e.scheme, cfg.ofdm.bit_energy, cfg.ofdm.symbol_duration, n, plan) / 1e6;
        auto map = [&](double p) {
            if (e.scheme == Scheme::mod2) return kNaN;
            if (e.scheme == Scheme::mod1) return (p >= 0.0 && p <= 1.0) ? ber_mod1(p, e.block_len) : kNaN;
            return p;
        };
        for (const double db : a.snr_db) {
            const double gamma = std::pow(10.0, db / 10.0);
            const AwgnBer awgn = ber_awgn(gamma);
            AnalyticRow row;
            row.entry = e;
            row.gamma_db = db;
            row.pe_closed =
                map(ber_rayleigh_closed(ClosedFormTerms::from_gamma(gamma, a.sigma_sq, a.mu_convention)).value);
            row.pe_numeric = map(ber_rayleigh_numeric(gamma, EnvelopePowers::symmetric(a.sigma_sq), a.conditional).value);
            row.pe_awgn_exact = map(awgn.exact);
            row.pe_awgn_approx = map(awgn.approx);
            row.psi = gamma >= 1.0 ? baseline_psi(gamma, a.n_cp, a.channel_order).literal : kNaN;
            row.rate_bps = rate;
            row.bri = ratio;
            rows.push_back(row);
        }
    }
    return rows;
}

void write_analytic_csv(std::ostream& out, const std::vector<AnalyticRow>& rows) {
    out << "scheme,gamma_db,pe_closed,pe_numeric,pe_awgn_exact,pe_awgn_approx,psi,rate_bps,bri\n";
    for (const auto& r : rows) {
        out << scheme_label(r.entry.scheme, r.entry.block_len, r.entry.active) << ',' << format_real(r.gamma_db) << ',' << format_real(r.pe_closed) << ','
            << format_real(r.pe_numeric) << ',' << format_real(r.pe_awgn_exact) << ','
            << format_real(r.pe_awgn_approx) << ',' << format_real(r.psi) << ',' << format_real(r.rate_bps) << ','
            << format_real(r.bri) << '\n';
    }
}

}  // namespace ambc
