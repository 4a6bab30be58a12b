#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace uavcre {

/// A numeric table written as CSV with a header row.
struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    long trials = 0;   // simulated drops behind the empirical columns
    long redraws = 0;  // empty-band rejections among them
};

/// Shortest round-trip formatting, '.' decimal, '\n' line ends; locale-independent.
void write_csv(const Table& table, std::ostream& out);
std::string format_number(double v);

/// Adaptive bias and the quantities it is built from, for one parameter set.
struct BiasSummary
{
    double zeta = 0.0;
    double se_lf = 0.0;
    double se_m = 0.0;
    double tau = 0.0;
    double beta = 0.0;  // CRE bias
};

BiasSummary resolve_bias(const NetworkParams& params, const ExperimentConfig& cfg);

/// Bias the configured policy applies, given the adaptive bias.
double policy_beta(const ExperimentConfig& cfg, const BiasSummary& bias);

/// Analytic SE of the served link, A_m SE_m + A_lf SE_lf, under bias `beta`.
double analytic_se(const NetworkParams& params, const BiasSummary& bias, double beta,
                   const QuadratureSpec& spec);

/// gamma_dB, analytic_cre, analytic_simplified_gain, empirical_cre, empirical_map.
/// The "cre" columns follow the configured policy (CRE by default).
Table coverage_sweep(const ExperimentConfig& cfg);

/// density_ratio, beta, tau, rate_cre, rate_map, rate_cre_empirical, rate_map_empirical.
/// The mmWave density is ratio * lambda_lf; rates in bit/s.
Table rate_vs_density(const ExperimentConfig& cfg);

/// N, beta, se_cre, se_map, se_cre_empirical, se_map_empirical (bits/s/Hz).
Table se_vs_antennas(const ExperimentConfig& cfg);

struct Check
{
    std::string name;
    double value = 0.0;
    double bound = 0.0;  // pass iff value <= bound
    bool passed = false;
};

/// Oracle suite. Statistical bounds are the nominal tolerance or a multiple of the
/// standard error, whichever is wider, so they scale as 1/sqrt(n_trials).
std::vector<Check> validate_suite(const ExperimentConfig& cfg);
void write_checks_csv(const std::vector<Check>& checks, std::ostream& out);

} // namespace uavcre
