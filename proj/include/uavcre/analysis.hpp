#pragma once

#include <span>
#include <vector>

#include "network.hpp"
#include "quadrature.hpp"

namespace uavcre {

// ---------------------------------------------------------------------------
// Laplace functionals of the aggregate interference, conditioned on the
// serving UAV being at slant distance r (interferers lie beyond r).
// ---------------------------------------------------------------------------

/// E[exp(-s I_lf) | r] for Rayleigh-faded omni interferers.
double laplace_lf(double s, double r, const BandConfig& lf, const QuadratureSpec& spec = {});

/// E[exp(-s I_m) | r] with Nakagami-m fading and the two-point interferer gain law
/// chosen by params.elevation_model.
double laplace_mm(double s, double r, const NetworkParams& params, const QuadratureSpec& spec = {});

/**
 * n-th s-derivative of the mmWave interference exponent J(s, r), where
 * L_m(s | r) = exp(-J(s, r)). Obtained by differentiating under the integral:
 * J^(n) = -2 pi lambda (-1)^n (m)_n Int_r^inf sum_G p_G(z) c^n (1 + s c)^(-m-n) z dz,
 * c = P G K z^-alpha / m. Order 0 returns J itself.
 */
double interference_exponent_mm(int n, double s, double r, const NetworkParams& params,
                                 const QuadratureSpec& spec = {});

/// [L, L', ..., L^(max_order)] at (s, r), combined from J', ..., J^(max_order) with
/// complete Bell polynomials. Any max_order >= 0 is accepted here.
std::vector<double> laplace_mm_derivatives(int max_order, double s, double r,
                                           const NetworkParams& params,
                                           const QuadratureSpec& spec = {});

/// i-th derivative of L_m(s | r); order must lie in [0, m - 1].
double laplace_mm_derivative(int order, double s, double r, const NetworkParams& params,
                             const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Coverage (SINR thresholds are linear here; callers convert dB once).
// ---------------------------------------------------------------------------

/// P(SINR_lf > gamma) for a user served by its nearest low-band UAV.
double coverage_lf(double gamma, const NetworkParams& params, const QuadratureSpec& spec = {});

/// P(SINR_m > gamma) for a user served by its nearest mmWave UAV (Nakagami-m sum form).
double coverage_mm(double gamma, const NetworkParams& params, const QuadratureSpec& spec = {});

/// A_lf * P_lf(gamma) + A_m * P_m(gamma) with A_m from the biased association rule.
double coverage_total(double gamma, const NetworkParams& params, double beta,
                      const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------
// Spectral efficiency and rate.
// ---------------------------------------------------------------------------

/// Kernel (1 - (1 + z)^-m) / z turning E[ln(1 + g/Y)], g ~ Gamma(m, 1/m),
/// into an integral over Laplace transforms of Y. For m = 2 it is 1/z - 1/(z (1+z)^2).
double hamdi_kernel(double z, int m);

/// E[log2(1 + SINR_lf)] in bits/s/Hz.
double se_lf(const NetworkParams& params, const QuadratureSpec& spec = {});

/// E[log2(1 + SINR_m)] in bits/s/Hz.
double se_mm(const NetworkParams& params, const QuadratureSpec& spec = {});

enum class RateModel {
    Link,       // R = A_m W_m SE_m + A_lf W_lf SE_lf
    LoadShare,  // bandwidth shared over the mean load max(1, lambda A_t / lambda_t)
};

struct BandShares
{
    double assoc_mm = 0.0;
    double se_lf = 0.0;
    double se_m = 0.0;
};

/// Average per-user rate in bit/s from association share and per-band SE.
double per_user_rate(const NetworkParams& params, const BandShares& shares, RateModel model);

/// Same, computing A_m, SE_lf and SE_m analytically for bias `beta`.
double per_user_rate(const NetworkParams& params, double beta, RateModel model,
                     const QuadratureSpec& spec = {});

// ---------------------------------------------------------------------------

enum class Provenance { Analytic, Empirical };

struct CoveragePoint
{
    double gamma_db = 0.0;
    double probability = 0.0;
};

struct MetricSet
{
    std::vector<CoveragePoint> coverage;
    double assoc_mm = 0.0;
    double se_lf = 0.0;
    double se_m = 0.0;
    double se_total = 0.0;
    double rate_per_user = 0.0;
    Provenance provenance = Provenance::Analytic;

    double assoc_lf() const { return 1.0 - assoc_mm; }
};

/// Analytic counterpart of a simulation run for a fixed bias.
MetricSet analytic_metrics(const NetworkParams& params, double beta,
                           std::span<const double> gamma_db, RateModel rate_model,
                           const QuadratureSpec& spec = {});

/// -10, -9, ..., 20 dB.
std::vector<double> default_gamma_grid_db();

} // namespace uavcre
