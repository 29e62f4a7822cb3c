#include "ambc/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ambc {

namespace {

using nlohmann::json;

// Object view that records the keys read so leftovers can be reported.
class Section {
public:
    Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
        if (!j_.is_object()) throw std::invalid_argument("config: section '" + name_ + "' must be an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    template <class T>
    void read(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = raw(key).get<T>();
        } catch (const json::exception& e) {
            throw std::invalid_argument("config: " + name_ + "." + key + ": " + e.what());
        }
    }

    std::string read_string(const std::string& key, std::string fallback) {
        read(key, fallback);
        return fallback;
    }

    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!seen_.contains(key)) throw std::invalid_argument("config: unknown key " + name_ + "." + key);
    }

    const std::string& name() const { return name_; }

private:
    const json& j_;
    std::string name_;
    std::set<std::string> seen_;
};

template <class T>
void read_size(Section& s, const std::string& key, T& out) {
    if (!s.has(key)) return;
    const json& v = s.raw(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw std::invalid_argument("config: " + s.name() + "." + key + " must be a nonnegative integer");
    out = static_cast<T>(v.get<unsigned long long>());
}

std::vector<double> read_grid(Section& s, const std::string& key) {
    const json& v = s.raw(key);
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) throw std::invalid_argument("config: " + s.name() + "." + key + " must hold numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }
    Section g(v, s.name() + "." + key);
    double start = 0.0, stop = 0.0, step = 1.0;
    g.read("start", start);
    g.read("stop", stop);
    g.read("step", step);
    g.finish();
    return snr_grid(start, stop, step);
}

std::vector<std::size_t> read_size_list(Section& s, const std::string& key) {
    std::vector<std::size_t> out;
    for (const auto& x : s.raw(key)) {
        if (!x.is_number_integer() || x.get<long long>() < 0)
            throw std::invalid_argument("config: " + s.name() + "." + key + " must hold nonnegative integers");
        out.push_back(x.get<std::size_t>());
    }
    return out;
}

void parse_ofdm(Section s, AppConfig& cfg) {
    OfdmConfig& o = cfg.ofdm;
    read_size(s, "dft_size", o.dft_size);
    read_size(s, "used_subcarriers", o.used_subcarriers);
    read_size(s, "cp_len", o.cp_len);
    s.read("sample_rate", o.sample_rate);
    s.read("subcarrier_spacing", o.subcarrier_spacing);
    s.read("symbol_duration", o.symbol_duration);
    s.read("bit_energy", o.bit_energy);
    s.read("noise_psd", o.noise_psd);
    read_size(s, "n_filter", cfg.n_filter);
    read_size(s, "n_guard", cfg.n_guard);
    s.finish();
}

ChannelProfile parse_channel(Section s, ChannelProfile c) {
    if (s.has("mode")) c.mode = channel_mode_from_string(s.read_string("mode", ""));
    read_size(s, "taps_a", c.taps_a);
    read_size(s, "taps_b", c.taps_b);
    s.read("var_a", c.var_a);
    s.read("var_b", c.var_b);
    s.read("var_c", c.var_c);
    s.read("beta", c.beta);
    s.finish();
    return c;
}

ExperimentSpec parse_experiment(Section s, const ChannelProfile& base) {
    ExperimentSpec e;
    e.channel = base;
    if (s.has("scheme")) e.scheme = scheme_from_string(s.read_string("scheme", ""));
    read_size(s, "L", e.block_len);
    read_size(s, "M", e.active);
    if (s.has("channel")) e.channel = parse_channel(Section(s.raw("channel"), s.name() + ".channel"), base);
    if (s.has("csi")) e.csi = csi_mode_from_string(s.read_string("csi", ""));
    read_size(s, "pilot_frames", e.pilot_frames);
    if (s.has("snr_db")) e.snr_db = read_grid(s, "snr_db");
    read_size(s, "trials", e.trials);
    read_size(s, "max_bit_errors", e.max_bit_errors);
    read_size(s, "seed", e.seed);
    read_size(s, "workers", e.workers);
    read_size(s, "batch", e.batch);
    if (s.has("statistic")) {
        const std::string v = s.read_string("statistic", "");
        if (v == "auto") e.statistic.reset();
        else e.statistic = statistic_from_string(v);
    }
    if (s.has("mod2_metric")) e.mod2.metric = mod2_metric_from_string(s.read_string("mod2_metric", ""));
    if (s.has("mod2_search")) {
        const std::string v = s.read_string("mod2_search", "");
        if (v == "codebook") e.mod2.search = Mod2Search::codebook;
        else if (v == "all_patterns") e.mod2.search = Mod2Search::all_patterns;
        else throw std::invalid_argument("config: unknown mod2_search '" + v + "'");
    }
    if (s.has("path")) e.path = sim_path_from_string(s.read_string("path", ""));
    if (s.has("conditional")) e.conditional = conditional_model_from_string(s.read_string("conditional", ""));
    if (s.has("mu_convention")) {
        const std::string v = s.read_string("mu_convention", "");
        if (v == "sqrt_gamma") e.mu_convention = MuConvention::sqrt_gamma;
        else if (v == "sqrt_half_gamma") e.mu_convention = MuConvention::sqrt_half_gamma;
        else throw std::invalid_argument("config: unknown mu_convention '" + v + "'");
    }
    s.read("record_wall_time", e.record_wall_time);
    s.read("verbose", e.verbose);
    s.finish();
    return e;
}

SchemeEntry parse_scheme_entry(const json& j, const std::string& name) {
    SchemeEntry entry;
    if (j.is_string()) {
        entry.scheme = scheme_from_string(j.get<std::string>());
        return entry;
    }
    Section s(j, name);
    entry.scheme = scheme_from_string(s.read_string("scheme", "basis"));
    read_size(s, "L", entry.block_len);
    read_size(s, "M", entry.active);
    s.finish();
    return entry;
}

void parse_analytic(Section s, AnalyticSpec& a) {
    if (s.has("schemes")) {
        a.schemes.clear();
        std::size_t i = 0;
        for (const auto& j : s.raw("schemes"))
            a.schemes.push_back(parse_scheme_entry(j, "analytic.schemes[" + std::to_string(i++) + "]"));
    }
    if (s.has("snr_db")) a.snr_db = read_grid(s, "snr_db");
    s.read("sigma_sq", a.sigma_sq);
    read_size(s, "n_cp", a.n_cp);
    read_size(s, "channel_order", a.channel_order);
    if (s.has("mu_convention")) {
        const std::string v = s.read_string("mu_convention", "");
        if (v == "sqrt_gamma") a.mu_convention = MuConvention::sqrt_gamma;
        else if (v == "sqrt_half_gamma") a.mu_convention = MuConvention::sqrt_half_gamma;
        else throw std::invalid_argument("config: unknown mu_convention '" + v + "'");
    }
    if (s.has("conditional")) a.conditional = conditional_model_from_string(s.read_string("conditional", ""));
    s.finish();
}

void parse_tables(Section s, TablesSpec& t) {
    if (s.has("schemes")) {
        t.schemes.clear();
        for (const auto& j : s.raw("schemes")) {
            if (!j.is_string()) throw std::invalid_argument("config: tables.schemes must hold strings");
            t.schemes.push_back(scheme_from_string(j.get<std::string>()));
        }
    }
    if (s.has("n_used")) t.n_used = read_size_list(s, "n_used");
    if (s.has("L")) t.block_lens = read_size_list(s, "L");
    if (s.has("M")) t.actives = read_size_list(s, "M");
    if (s.has("power")) {
        const std::string v = s.read_string("power", "");
        if (v == "mean") t.power = PowerMode::mean;
        else if (v == "peak") t.power = PowerMode::peak;
        else throw std::invalid_argument("config: unknown tables.power '" + v + "'");
    }
    s.finish();
}

}  // namespace

std::vector<double> snr_grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("snr grid: step must be positive");
    if (stop < start) throw std::invalid_argument("snr grid: stop below start");
    std::vector<double> out;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

AppConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    Section top(root, "config");
    AppConfig cfg;
    if (top.has("ofdm")) parse_ofdm(Section(top.raw("ofdm"), "ofdm"), cfg);
    if (top.has("channel")) cfg.channel = parse_channel(Section(top.raw("channel"), "channel"), cfg.channel);
    if (top.has("experiment")) {
        const json& ex = top.raw("experiment");
        if (ex.is_array()) {
            for (std::size_t i = 0; i < ex.size(); ++i)
                cfg.experiments.push_back(
                    parse_experiment(Section(ex[i], "experiment[" + std::to_string(i) + "]"), cfg.channel));
        } else {
            cfg.experiments.push_back(parse_experiment(Section(ex, "experiment"), cfg.channel));
        }
    }
    if (top.has("analytic")) parse_analytic(Section(top.raw("analytic"), "analytic"), cfg.analytic);
    if (top.has("tables")) parse_tables(Section(top.raw("tables"), "tables"), cfg.tables);
    top.finish();
    cfg.ofdm.validate();
    return cfg;
}

AppConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace ambc
