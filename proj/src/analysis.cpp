#include "ambc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ambc/special.hpp"

namespace ambc {

namespace {

using Gk = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr unsigned kMaxDepth = 30;

// Rayleigh envelope density with E[X^2] = power.
double rayleigh_pdf(double x, double power) { return 2.0 * x / power * std::exp(-x * x / power); }

struct Integral {
    double value = 0.0;
    double error = 0.0;
};

template <class F>
Integral integrate(F f, double lo, double hi, double tol) {
    if (!(hi > lo)) return {};
    double err = 0.0;
    const double v = Gk::integrate(f, lo, hi, kMaxDepth, tol, &err);
    return {v, err};
}

}  // namespace

AwgnBer ber_awgn(double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("ber_awgn: gamma must be >= 0");
    const double approx = q_function(std::sqrt(gamma / 2.0));
    const double exact = approx + 0.5 * q_function(std::sqrt(25.0 * gamma / 2.0)) -
                         0.5 * q_function(std::sqrt(49.0 * gamma / 2.0));
    return {exact, approx};
}

double ber_awgn_numeric(double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("ber_awgn_numeric: gamma must be >= 0");
    if (gamma == 0.0) return 0.5;
    // Envelope 1 for bit 0 and 2 for bit 1 at unit bit energy, threshold 3/2,
    // in-phase noise standard deviation 1 / sqrt(2 gamma).
    const double s = 1.0 / std::sqrt(2.0 * gamma);
    auto folded = [s](double mean) {
        return [s, mean](double t) {
            const double u = (t - mean) / s;
            const double v = (t + mean) / s;
            return (std::exp(-0.5 * u * u) + std::exp(-0.5 * v * v)) / (s * std::sqrt(2.0 * std::numbers::pi));
        };
    };
    constexpr double delta = 1.5;
    const double top = 2.0 + 40.0 * s;
    const double miss0 = integrate(folded(1.0), delta, top, 1e-12).value;
    const double miss1 = integrate(folded(2.0), 0.0, delta, 1e-12).value;
    return 0.5 * (miss0 + miss1);
}

ConditionalPe conditional_pe(double a, double b, double gamma) {
    if (a < 0.0 || b < 0.0) throw std::invalid_argument("conditional_pe: magnitudes must be >= 0");
    if (gamma < 0.0) throw std::invalid_argument("conditional_pe: gamma must be >= 0");
    const double c = std::sqrt(gamma / 2.0);
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double approx = q_function((hi - lo) * c);
    // The low-envelope bit crosses the threshold on one side only; the
    // high-envelope bit can also fold across zero, which gives the two
    // correction terms.
    const double exact = approx + 0.5 * (q_function((3.0 * lo + hi) * c) - q_function((3.0 * hi + lo) * c));
    return {approx, exact};
}

ConditionalModel conditional_model_from_string(std::string_view name) {
    if (name == "approx") return ConditionalModel::approx;
    if (name == "exact") return ConditionalModel::exact;
    throw std::invalid_argument("unknown conditional model '" + std::string(name) + "'");
}

namespace {

void check_powers(double gamma, EnvelopePowers p) {
    if (gamma < 0.0) throw std::invalid_argument("ber_rayleigh_numeric: gamma must be >= 0");
    if (!(p.a > 0.0) || !(p.b > 0.0))
        throw std::invalid_argument("ber_rayleigh_numeric: envelope powers must be positive");
}

}  // namespace

QuadratureResult ber_rayleigh_numeric(double gamma, EnvelopePowers powers, ConditionalModel model,
                                      double rel_tol) {
    check_powers(gamma, powers);
    const double a_max = 10.0 * std::sqrt(powers.a);
    const double b_max = 10.0 * std::sqrt(powers.b);
    const double inner_tol = rel_tol * 1e-2;

    auto pe = [gamma, model](double a, double b) {
        const ConditionalPe c = conditional_pe(a, b, gamma);
        return model == ConditionalModel::exact ? c.exact : c.approx;
    };

    double inner_err = 0.0;
    auto outer = [&](double b) {
        auto f = [&](double a) { return pe(a, b) * rayleigh_pdf(a, powers.a); };
        const double split = std::min(b, a_max);
        const Integral below = integrate(f, 0.0, split, inner_tol);
        const Integral above = integrate(f, split, a_max, inner_tol);
        inner_err = std::max(inner_err, below.error + above.error);
        return (below.value + above.value) * rayleigh_pdf(b, powers.b);
    };

    const Integral total = integrate(outer, 0.0, b_max, rel_tol * 0.1);
    const double err = total.error + inner_err;
    if (!std::isfinite(total.value) || err > rel_tol * std::max(std::abs(total.value), 1e-300))
        throw std::runtime_error("ber_rayleigh_numeric: quadrature did not reach tolerance");
    return {total.value, err};
}

QuadratureResult ber_rayleigh_numeric_unsplit(double gamma, EnvelopePowers powers, double rel_tol) {
    check_powers(gamma, powers);
    const double a_max = 10.0 * std::sqrt(powers.a);
    const double b_max = 10.0 * std::sqrt(powers.b);
    const double c = std::sqrt(gamma / 2.0);

    double inner_err = 0.0;
    auto outer = [&](double b) {
        auto f = [&](double a) { return q_function(std::abs(b - a) * c) * rayleigh_pdf(a, powers.a); };
        const Integral in = integrate(f, 0.0, a_max, rel_tol * 1e-2);
        inner_err = std::max(inner_err, in.error);
        return in.value * rayleigh_pdf(b, powers.b);
    };

    const Integral total = integrate(outer, 0.0, b_max, rel_tol * 0.1);
    const double err = total.error + inner_err;
    if (!std::isfinite(total.value) || err > rel_tol * std::max(std::abs(total.value), 1e-300))
        throw std::runtime_error("ber_rayleigh_numeric_unsplit: quadrature did not reach tolerance");
    return {total.value, err};
}

ClosedFormTerms ClosedFormTerms::make(double mu, double sigma_sq) {
    if (!(mu >= 0.0) || !(sigma_sq > 0.0))
        throw std::domain_error("ClosedFormTerms: need mu >= 0 and sigma_sq > 0");
    ClosedFormTerms t;
    t.mu = mu;
    t.sigma_sq = sigma_sq;
    const double mu2 = mu * mu;
    t.alpha = mu2 / 2.0 + 1.0 / (2.0 * sigma_sq);
    t.kappa = mu2 / 2.0 + 1.0 / (4.0 * sigma_sq) - mu2 * mu2 / (4.0 * t.alpha * t.alpha);
    if (!(t.alpha > 0.0) || !(t.kappa > 0.0))
        throw std::domain_error("ClosedFormTerms: alpha and kappa must be positive");
    return t;
}

ClosedFormTerms ClosedFormTerms::from_gamma(double gamma, double sigma_sq, MuConvention conv) {
    if (!(gamma >= 0.0)) throw std::domain_error("ClosedFormTerms: gamma must be >= 0");
    const double mu = conv == MuConvention::sqrt_gamma ? std::sqrt(gamma) : std::sqrt(gamma / 2.0);
    return make(mu, sigma_sq);
}

ClosedFormBer ber_rayleigh_closed(const ClosedFormTerms& t, double first_param) {
    const double mu = t.mu;
    const double mu2 = mu * mu;
    const double mu3 = mu2 * mu;
    const double mu4 = mu2 * mu2;
    const double al = t.alpha;
    const double k2 = t.kappa * t.kappa;
    const double s2 = t.sigma_sq;
    const double sq2 = std::numbers::sqrt2;
    const double shift = al - mu2 / (2.0 * al);

    auto f = [first_param](double z) {
        if (!(std::abs(z) < 1.0)) return std::numeric_limits<double>::quiet_NaN();
        return hyp2f1(first_param, 0.5, 1.5, z);
    };

    ClosedFormBer out;
    out.terms[0] = 0.5;
    out.terms[1] = -(mu / std::sqrt(8.0)) * f(mu2 / (mu2 + 1.0 / (2.0 * s2))) / std::sqrt(mu2 / 2.0 + 1.0 / (4.0 * s2));
    out.terms[2] = mu / (8.0 * sq2 * al * k2 * s2);
    out.terms[3] = mu3 / (16.0 * sq2 * al * al * k2 * s2) * f(mu4 / (mu2 + 4.0 * al * al * k2)) /
                   std::sqrt(mu4 / (4.0 * al * al) + k2);
    out.terms[4] = mu * shift / (4.0 * sq2 * al * k2 * s2) * f(shift * shift / (shift * shift + k2)) /
                   std::sqrt(shift * shift + k2);
    out.value = out.terms[0] + out.terms[1] + out.terms[2] + out.terms[3] + out.terms[4];
    out.in_unit_interval = out.value >= 0.0 && out.value <= 1.0;
    return out;
}

double ber_mod1(double pe_basis, std::size_t block_len) {
    if (block_len % 2 == 0) throw std::invalid_argument("ber_mod1: L must be odd");
    if (!(pe_basis >= 0.0 && pe_basis <= 1.0)) throw std::invalid_argument("ber_mod1: pe_basis outside [0, 1]");
    const std::size_t first = (block_len + 1) / 2;
    double coef = 1.0;  // C(L, l), built up from C(L, 0)
    double sum = 0.0;
    for (std::size_t l = 0; l <= block_len; ++l) {
        if (l > 0) coef = coef * static_cast<double>(block_len - l + 1) / static_cast<double>(l);
        if (l >= first)
            sum += coef * std::pow(pe_basis, static_cast<double>(l)) *
                   std::pow(1.0 - pe_basis, static_cast<double>(block_len - l));
    }
    return sum;
}

PsiValue baseline_psi(double gamma, std::size_t n_cp, std::size_t channel_order) {
    if (n_cp < channel_order) throw std::invalid_argument("baseline_psi: N_cp < channel order");
    if (!(gamma >= 1.0)) throw std::invalid_argument("baseline_psi: gamma must be >= 1");
    const double margin = static_cast<double>(n_cp - channel_order);
    const double log2g = 2.0 * std::log(gamma);
    PsiValue out;
    if (margin > 0.0) {
        const double inner = gamma * gamma - gamma * std::sqrt(1.0 + log2g / margin);
        out.first_term = margin * inner * inner;
    }
    out.literal = std::sqrt((out.first_term + log2g) / (gamma * gamma * gamma * gamma));
    out.high_snr_limit = std::sqrt(margin + log2g);
    return out;
}

double mean_active_subcarriers(Scheme scheme, std::size_t n_used, const std::optional<BlockPlan>& plan) {
    switch (scheme) {
        case Scheme::basis: return static_cast<double>(n_used) / 2.0;
        case Scheme::mod1:
            if (!plan) throw std::invalid_argument("mean_active_subcarriers: mod1 needs a block plan");
            return static_cast<double>(plan->g_blocks * plan->block_len) / 2.0;
        case Scheme::mod2:
            if (!plan || !plan->index_modulated())
                throw std::invalid_argument("mean_active_subcarriers: mod2 needs an index-modulation plan");
            return static_cast<double>(plan->g_blocks * plan->active_per_block);
    }
    throw std::invalid_argument("mean_active_subcarriers: unknown scheme");
}

double data_rate(Scheme scheme, const OfdmConfig& cfg, const ClusterGeometry& geom,
                 const std::optional<BlockPlan>& plan) {
    const double ts = cfg.symbol_duration;
    switch (scheme) {
        case Scheme::basis: return static_cast<double>(geom.n_data) / ts;
        case Scheme::mod1:
            if (!plan) throw std::invalid_argument("data_rate: mod1 needs a block plan");
            return static_cast<double>(plan->g_blocks) / ts;
        case Scheme::mod2:
            if (!plan || !plan->index_modulated())
                throw std::invalid_argument("data_rate: mod2 needs an index-modulation plan");
            return static_cast<double>(plan->g_blocks * plan->bits_per_block) / ts;
    }
    throw std::invalid_argument("data_rate: unknown scheme");
}

double bri(Scheme scheme, double bit_energy, double symbol_duration, std::size_t n_used,
           const std::optional<BlockPlan>& plan) {
    if (!(bit_energy > 0.0)) throw std::invalid_argument("bri: bit_energy must be positive");
    if (!(symbol_duration > 0.0)) throw std::invalid_argument("bri: symbol_duration must be positive");
    double bits = 0.0;
    switch (scheme) {
        case Scheme::basis: bits = static_cast<double>(n_used); break;
        case Scheme::mod1:
            if (!plan) throw std::invalid_argument("bri: mod1 needs a block plan");
            bits = static_cast<double>(plan->g_blocks);
            break;
        case Scheme::mod2:
            if (!plan || !plan->index_modulated()) throw std::invalid_argument("bri: mod2 needs an index-modulation plan");
            bits = static_cast<double>(plan->g_blocks * plan->bits_per_block);
            break;
    }
    const double power = mean_active_subcarriers(scheme, n_used, plan) * bit_energy;
    return (bits / symbol_duration) / power;
}

}  // namespace ambc
