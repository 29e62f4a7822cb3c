// Command-line front end: BER sweeps, analytic tables, rate tables, selftest.

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "ambc/config.hpp"
#include "ambc/selftest.hpp"
#include "ambc/sim.hpp"
#include "ambc/tables.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output '" + path + "'");
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

int run_ber_sweep(const std::string& config_path, const std::string& out_path, int workers) {
    ambc::AppConfig cfg = ambc::load_config(config_path);
    if (cfg.experiments.empty()) throw std::invalid_argument("config has no \"experiment\" section");
    std::vector<ambc::BerRecord> records;
    for (auto& spec : cfg.experiments) {
        if (workers > 0) spec.workers = static_cast<std::size_t>(workers);
        const auto part = ambc::run_sweep(spec, cfg.ofdm);
        records.insert(records.end(), part.begin(), part.end());
    }
    std::ofstream out = open_output(out_path);
    ambc::write_ber_csv(out, records);
    finish_output(out, out_path);
    return 0;
}

int run_analytic(const std::string& config_path, const std::string& out_path) {
    const ambc::AppConfig cfg = ambc::load_config(config_path);
    const auto rows = ambc::run_analytic(cfg);
    std::ofstream out = open_output(out_path);
    ambc::write_analytic_csv(out, rows);
    finish_output(out, out_path);
    return 0;
}

int run_tables(const std::string& config_path, const std::string& out_path) {
    const ambc::AppConfig cfg = ambc::load_config(config_path);
    const auto rows = ambc::run_tables(cfg);
    std::ofstream out = open_output(out_path);
    ambc::write_rate_csv(out, rows);
    finish_output(out, out_path);
    return 0;
}

int run_selftest() {
    bool ok = true;
    for (const auto& r : ambc::run_selftest()) {
        ambc::print_result(std::cout, r);
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subcarrier-wise ambient backscatter over OFDM: simulator and analytic calculator"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    int workers = 0;

    auto* sweep = app.add_subcommand("ber-sweep", "Monte Carlo BER sweep for every configured experiment");
    sweep->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out", out_path, "CSV output path")->required();
    sweep->add_option("--workers", workers, "Override the worker count of every experiment")->check(CLI::PositiveNumber);

    auto* analytic = app.add_subcommand("analytic", "Closed-form and quadrature BER, psi, rate and BRI per SNR point");
    analytic->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
    analytic->add_option("--out", out_path, "CSV output path")->required();

    auto* tables = app.add_subcommand("tables", "Rate, backscattered power and BRI tables");
    tables->add_option("--config", config_path, "JSON configuration")->required()->check(CLI::ExistingFile);
    tables->add_option("--out", out_path, "CSV output path")->required();

    auto* selftest = app.add_subcommand("selftest", "Run the fast invariant suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) return run_ber_sweep(config_path, out_path, workers);
        if (*analytic) return run_analytic(config_path, out_path);
        if (*tables) return run_tables(config_path, out_path);
        if (*selftest) return run_selftest();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
