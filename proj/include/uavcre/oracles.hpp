#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "network.hpp"
#include "quadrature.hpp"

namespace uavcre {

// Independent estimators used to check the analytic engine. They sample the
// model directly and share no integration code with it.

struct McEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    long samples = 0;
};

/// sup |F_n(x) - F(x)| for the empirical CDF of `sample`.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic one-sample critical value sqrt(-ln(alpha / 2) / 2) / sqrt(n).
double ks_critical(long n, double alpha = 0.01);

struct LaplaceProbe
{
    double s = 0.0;  // transform argument, 1/W
    double r = 0.0;  // serving slant distance, m
};

/// E[exp(-s I) | serving at r] by explicit drops: PPP on a disk of `region_radius`,
/// interferers are the points beyond slant r, the mean interference from outside
/// the disk is added as a constant. One drop serves all probes.
std::vector<McEstimate> laplace_monte_carlo(const NetworkParams& params, Band band,
                                            std::span<const LaplaceProbe> probes,
                                            long realizations, double region_radius,
                                            std::uint64_t seed);

/// Frequency with which a mmWave UAV at slant distance `slant` covers a ground
/// probe with its main lobe, steering at surrogate targets.
McEstimate main_lobe_frequency(const NetworkParams& params, double slant, long samples,
                               std::uint64_t seed);

/// P(SINR_m > gamma) for Rayleigh mmWave links written directly as
/// Int exp(-u sigma^2) L_m(u | r) f_m(r) dr with u = gamma r^a / (P G_M K). Requires m = 1.
double coverage_mm_rayleigh(double gamma, const NetworkParams& params, const QuadratureSpec& spec = {});

/// Central finite-difference derivative of order 1 or 2 with step `step`.
double central_difference(const std::function<double(double)>& f, double x, int order,
                          double step);

} // namespace uavcre
