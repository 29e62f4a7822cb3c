#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "ambc/sysconfig.hpp"

namespace ambc {

struct AwgnBer {
    double exact = 0.0;   // Q(sqrt(g/2)) + Q(sqrt(25g/2))/2 - Q(sqrt(49g/2))/2
    double approx = 0.0;  // Q(sqrt(g/2))
};

/// BER of the energy detector on unit direct and dyadic links, gamma = E_b/N_0.
AwgnBer ber_awgn(double gamma);

/// Same quantity as AwgnBer::exact computed by numerically integrating the
/// folded Gaussian densities over the error regions; an independent route.
double ber_awgn_numeric(double gamma);

struct ConditionalPe {
    double approx = 0.0;  // Q(|B - A| sqrt(g/2))
    double exact = 0.0;   // including the Q((3 min + max) ..) and Q((3 max + min) ..) terms
};

/// Error probability of one subcarrier given its envelopes A = |h_a| and
/// B = |h_a + h_s|, averaged over equiprobable bits.
ConditionalPe conditional_pe(double a, double b, double gamma);

enum class ConditionalModel { approx, exact };

ConditionalModel conditional_model_from_string(std::string_view name);

/// Mean-square powers of the two Rayleigh envelopes entering the average.
struct EnvelopePowers {
    double a = 1.0;  // E[A^2]
    double b = 2.0;  // E[B^2]

    /// E[A^2] = sigma^2, E[B^2] = 2 sigma^2 (unit backscatter gain).
    static EnvelopePowers symmetric(double sigma_sq) { return {sigma_sq, 2.0 * sigma_sq}; }
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Rayleigh-averaged BER: nested adaptive Gauss-Kronrod quadrature of the
/// conditional error probability over independent envelopes A and B, split
/// at A = B. Outer integration is truncated at B = 10 sqrt(E[B^2]).
/// Throws std::runtime_error if the estimated error exceeds the tolerance.
QuadratureResult ber_rayleigh_numeric(double gamma, EnvelopePowers powers,
                                      ConditionalModel model = ConditionalModel::approx,
                                      double rel_tol = 1e-6);

inline QuadratureResult ber_rayleigh_numeric(double gamma, double sigma_sq,
                                             ConditionalModel model = ConditionalModel::approx) {
    return ber_rayleigh_numeric(gamma, EnvelopePowers::symmetric(sigma_sq), model);
}

/// E[Q(|B - A| sqrt(g/2))] by a single unsplit 2-D quadrature; used to check
/// the split form.
QuadratureResult ber_rayleigh_numeric_unsplit(double gamma, EnvelopePowers powers, double rel_tol = 1e-6);

/// How mu relates to gamma = E_b/N_0 in the closed form.
///  - sqrt_gamma: mu = sqrt(E_b/N_0) as introduced alongside alpha and kappa.
///  - sqrt_half_gamma: mu = sqrt(gamma/2), the substitution made inside the
///    derivation where the integrand reads Q((B - A) mu).
enum class MuConvention { sqrt_gamma, sqrt_half_gamma };

/// Auxiliary quantities of the closed form.
struct ClosedFormTerms {
    double mu = 0.0;
    double alpha = 0.0;
    double kappa = 0.0;
    double sigma_sq = 1.0;

    /// Throws std::domain_error unless alpha > 0 and kappa > 0.
    static ClosedFormTerms make(double mu, double sigma_sq);
    static ClosedFormTerms from_gamma(double gamma, double sigma_sq, MuConvention conv = MuConvention::sqrt_gamma);
};

struct ClosedFormBer {
    double value = 0.0;
    bool in_unit_interval = false;
    double terms[5] = {0.0, 0.0, 0.0, 0.0, 0.0};  // summands in order, the leading 1/2 first
};

/// Four-term hypergeometric closed form of the Rayleigh-averaged BER,
/// evaluated term by term. Every 2F1 factor takes `first_param` as its first
/// argument; the default 0 makes each factor 1.
/// The result is reported as is, flagged when it leaves [0, 1].
ClosedFormBer ber_rayleigh_closed(const ClosedFormTerms& t, double first_param = 0.0);

/// Majority-vote BER over L independent decisions each wrong with probability p.
double ber_mod1(double pe_basis, std::size_t block_len);

struct PsiValue {
    double literal = 0.0;          // square root of the full radicand over gamma^4
    double first_term = 0.0;       // (N_cp - order) (gamma^2 - gamma sqrt(1 + 2 ln g / (N_cp - order)))^2
    double high_snr_limit = 0.0;   // sqrt((N_cp - order) + 2 ln gamma)
};

/// Input of the CP-based baseline detector's BER curve. At N_cp = order the
/// first term is taken as 0: its leading factor vanishes and the inner ratio
/// is never formed.
PsiValue baseline_psi(double gamma, std::size_t n_cp, std::size_t channel_order);

/// Tag data rate in bit/s. Basis uses the cluster count N_d.
double data_rate(Scheme scheme, const OfdmConfig& cfg, const ClusterGeometry& geom,
                 const std::optional<BlockPlan>& plan);

/// Bit-rate-to-interference ratio in bit/s/W: rate over the mean backscattered
/// power with unit forward gain and equiprobable bits.
double bri(Scheme scheme, double bit_energy, double symbol_duration, std::size_t n_used,
           const std::optional<BlockPlan>& plan);

/// Mean number of active subcarriers per symbol for equiprobable payload bits.
double mean_active_subcarriers(Scheme scheme, std::size_t n_used, const std::optional<BlockPlan>& plan);

}  // namespace ambc
