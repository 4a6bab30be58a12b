#include "uavcre/experiments.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "uavcre/association.hpp"
#include "uavcre/errors.hpp"
#include "uavcre/geometry.hpp"
#include "uavcre/oracles.hpp"
#include "uavcre/random.hpp"
#include "uavcre/units.hpp"

namespace uavcre {

std::string format_number(double v) { return fmt::format("{}", v); }

void write_csv(const Table& table, std::ostream& out)
{
    std::string text;
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        text += (i ? "," : "") + table.columns[i];
    text += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                text += ',';
            text += format_number(row[i]);
        }
        text += '\n';
    }
    out << text;
}

BiasSummary resolve_bias(const NetworkParams& params, const ExperimentConfig& cfg)
{
    BiasSummary b;
    b.zeta = zeta(params, cfg.quadrature);
    b.se_lf = se_lf(params, cfg.quadrature);
    b.se_m = se_mm(params, cfg.quadrature);
    b.tau = se_ratio_tau(b.se_lf, b.se_m);
    b.beta = bias_factor(cfg.beta0, cfg.growth_alpha, b.zeta, b.tau);
    return b;
}

double policy_beta(const ExperimentConfig& cfg, const BiasSummary& bias)
{
    return cfg.sim.policy.beta(bias.beta);
}

double analytic_se(const NetworkParams& params, const BiasSummary& bias, double beta,
                   const QuadratureSpec& spec)
{
    const double a_m = assoc_prob_mmwave(beta, params, spec);
    return a_m * bias.se_m + (1.0 - a_m) * bias.se_lf;
}

namespace {

std::vector<double> analytic_coverage(const NetworkParams& params, double beta,
                                      std::span<const double> gamma_db, const QuadratureSpec& spec)
{
    const MetricSet m = analytic_metrics(params, beta, gamma_db, RateModel::Link, spec);
    std::vector<double> out;
    for (const auto& p : m.coverage)
        out.push_back(p.probability);
    return out;
}

void account(Table& t, std::span<const TrialSample> trials)
{
    t.trials += static_cast<long>(trials.size());
    for (const auto& s : trials)
        t.redraws += s.redraws;
}

double empirical_rate(std::span<const TrialSample> trials, const NetworkParams& params, double beta,
                      RateModel model)
{
    return summarize(trials, params, beta, {}, model).rate_per_user;
}

} // namespace

Table coverage_sweep(const ExperimentConfig& cfg)
{
    const NetworkParams& params = cfg.network;
    const BiasSummary bias = resolve_bias(params, cfg);
    const double beta = policy_beta(cfg, bias);

    NetworkParams simplified = params;
    simplified.elevation_model = ElevationModel::UniformElevation;
    const double beta_simplified = policy_beta(cfg, resolve_bias(simplified, cfg));

    const auto analytic = analytic_coverage(params, beta, cfg.gamma_db, cfg.quadrature);
    const auto baseline = analytic_coverage(simplified, beta_simplified, cfg.gamma_db, cfg.quadrature);

    const auto trials = simulate_trials(params, cfg.sim);
    const MetricSet emp = summarize(trials, params, beta, cfg.gamma_db, cfg.rate_model);
    const MetricSet emp_map = summarize(trials, params, 1.0, cfg.gamma_db, cfg.rate_model);

    Table t{{"gamma_dB", "analytic_cre", "analytic_simplified_gain", "empirical_cre", "empirical_map"}, {}};
    account(t, trials);
    for (std::size_t i = 0; i < cfg.gamma_db.size(); ++i)
        t.rows.push_back({cfg.gamma_db[i], analytic[i], baseline[i], emp.coverage[i].probability,
                          emp_map.coverage[i].probability});
    return t;
}

Table rate_vs_density(const ExperimentConfig& cfg)
{
    Table t{{"density_ratio", "beta", "tau", "rate_cre", "rate_map", "rate_cre_empirical",
             "rate_map_empirical"},
            {}};
    for (double ratio : cfg.density_ratios) {
        NetworkParams params = cfg.network;
        params.mm.uav_density = ratio * params.lf.uav_density;
        const BiasSummary bias = resolve_bias(params, cfg);
        const double beta = policy_beta(cfg, bias);
        const auto rate = [&](double b) {
            const double a_m = assoc_prob_mmwave(b, params, cfg.quadrature);
            return per_user_rate(params, BandShares{a_m, bias.se_lf, bias.se_m}, cfg.rate_model);
        };
        const auto trials = simulate_trials(params, cfg.sim);
        account(t, trials);
        t.rows.push_back({ratio, beta, bias.tau, rate(beta), rate(1.0),
                          empirical_rate(trials, params, beta, cfg.rate_model),
                          empirical_rate(trials, params, 1.0, cfg.rate_model)});
    }
    return t;
}

Table se_vs_antennas(const ExperimentConfig& cfg)
{
    Table t{{"N", "beta", "se_cre", "se_map", "se_cre_empirical", "se_map_empirical"}, {}};
    for (int n : cfg.antenna_counts) {
        NetworkParams params = cfg.network;
        params.pattern = upa_from_count(n);
        const BiasSummary bias = resolve_bias(params, cfg);
        const double beta = policy_beta(cfg, bias);
        const auto trials = simulate_trials(params, cfg.sim);
        account(t, trials);
        t.rows.push_back({static_cast<double>(n), beta, analytic_se(params, bias, beta, cfg.quadrature),
                          analytic_se(params, bias, 1.0, cfg.quadrature),
                          summarize(trials, params, beta, {}, cfg.rate_model).se_total,
                          summarize(trials, params, 1.0, {}, cfg.rate_model).se_total});
    }
    return t;
}

// ---------------------------------------------------------------------------

namespace {

// Nominal tolerance, widened to `z` standard errors when the sample is small.
double widen(double nominal, double std_error, double z = 3.0)
{
    return std::max(nominal, z * std_error);
}

void add(std::vector<Check>& out, std::string name, double value, double bound)
{
    out.push_back({std::move(name), value, bound, std::isfinite(value) && value <= bound});
}

std::vector<LaplaceProbe> laplace_probes(const NetworkParams& params, Band band)
{
    const BandConfig& cfg = params.band(band);
    const ServingDistanceDist law = params.serving(band);
    const double gain = params.serving_gain(band);
    const double pgk = cfg.power_const() * gain;
    std::vector<LaplaceProbe> probes;
    const double quantiles[] = {0.1, 0.3, 0.5, 0.7, 0.9};
    // Thresholds keep E[exp(-s I)] away from zero so the sample mean is well resolved.
    const double offset = band == Band::LowFrequency ? -10.0 : 0.0;
    const double thresholds_db[] = {-5.0 + offset, 0.0 + offset, 5.0 + offset, 0.0 + offset, -5.0 + offset};
    for (int k = 0; k < 5; ++k) {
        const double r = law.quantile(quantiles[k]);
        const double s = cfg.fading.shape * db_to_linear(thresholds_db[k]) * std::pow(r, cfg.pathloss_exp) / pgk;
        probes.push_back({s, r});
    }
    return probes;
}

double band_se_std_error(std::span<const TrialSample> trials, Band band)
{
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& t : trials) {
        const double v = std::log2(1.0 + (band == Band::MmWave ? t.mm.sinr : t.lf.sinr));
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(trials.size());
    const double mean = sum / n;
    return std::sqrt(std::max(0.0, sum_sq / n - mean * mean) / n);
}

} // namespace

std::vector<Check> validate_suite(const ExperimentConfig& cfg)
{
    std::vector<Check> out;
    const NetworkParams& params = cfg.network;
    const long n = cfg.sim.n_trials;
    const long oracle_samples = 10 * n;
    const std::uint64_t seed = cfg.sim.master_seed;

    // Serving-distance law.
    for (Band band : {Band::LowFrequency, Band::MmWave}) {
        const ServingDistanceDist law = params.serving(band);
        RandomStream rng = make_stream(seed, 100 + static_cast<std::uint64_t>(band));
        std::vector<double> sample(static_cast<std::size_t>(oracle_samples));
        for (double& x : sample)
            x = law.sample(rng);
        add(out, std::string("ks_serving_") + band_name(band),
            ks_statistic(sample, [&](double r) { return law.cdf(r); }),
            std::max(0.01, ks_critical(oracle_samples, 0.001)));
    }

    // Laplace transforms against explicit drops.
    for (Band band : {Band::LowFrequency, Band::MmWave}) {
        const auto probes = laplace_probes(params, band);
        const double radius = band == Band::LowFrequency ? 5000.0 : 600.0;
        const auto mc = laplace_monte_carlo(params, band, probes, oracle_samples, radius, seed);
        for (std::size_t k = 0; k < probes.size(); ++k) {
            const double analytic = band == Band::LowFrequency
                                        ? laplace_lf(probes[k].s, probes[k].r, params.lf, cfg.quadrature)
                                        : laplace_mm(probes[k].s, probes[k].r, params, cfg.quadrature);
            add(out, fmt::format("laplace_{}_{}", band_name(band), k),
                std::abs(analytic - mc[k].mean) / mc[k].mean,
                widen(0.02, 4.0 * mc[k].std_error / mc[k].mean));
        }
    }

    // Nakagami sum at m = 1 against the Rayleigh form.
    {
        NetworkParams rayleigh = params;
        rayleigh.mm.fading = Fading::rayleigh();
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            const double gamma = db_to_linear(-10.0 + 3.0 * k);
            worst = std::max(worst, std::abs(coverage_mm(gamma, rayleigh, cfg.quadrature) -
                                             coverage_mm_rayleigh(gamma, rayleigh, cfg.quadrature)));
        }
        add(out, "nakagami_m1_reduction", worst, 1e-6);
    }

    // Bell-polynomial derivatives against finite differences.
    {
        QuadratureSpec tight = cfg.quadrature;
        tight.rel_tol = 1e-13;
        tight.abs_tol = 1e-300;
        const int orders = std::min(2, params.mm.fading.shape - 1);
        double worst = 0.0;
        for (const auto& p : laplace_probes(params, Band::MmWave)) {
            const auto exact = laplace_mm_derivatives(orders, p.s, p.r, params, tight);
            const auto f = [&](double s) { return laplace_mm(s, p.r, params, tight); };
            for (int order = 1; order <= orders; ++order) {
                const double step = p.s * (order == 1 ? 6e-6 : 1.2e-4);
                const double fd = central_difference(f, p.s, order, step);
                worst = std::max(worst, std::abs(exact[order] - fd) / std::abs(fd));
            }
        }
        add(out, "laplace_derivatives", worst, 1e-4);
    }

    // Bias factor properties.
    {
        const double z = zeta(params, cfg.quadrature);
        const double b0 = cfg.beta0, g = cfg.growth_alpha;
        double violations = 0.0;
        double prev = bias_factor(b0, g, z, 0.0);
        for (int i = 1; i < 100; ++i) {
            const double b = bias_factor(b0, g, z, 0.05 * i);
            violations += b > prev ? 0.0 : 1.0;
            prev = b;
        }
        add(out, "bias_at_tau_one", std::abs(bias_factor(b0, g, z, 1.0) - z) / z, 1e-9);
        add(out, "bias_limit", std::abs(bias_factor(b0, g, z, 1e3) - z * b0) / (z * b0), 1e-9);
        add(out, "bias_monotone_violations", violations, 0.0);
    }

    // Simulator against the analysis, and the two gain modes against each other.
    const BiasSummary bias = resolve_bias(params, cfg);
    SimConfig geometric = cfg.sim;
    geometric.gain_mode = GainMode::Geometric;
    SimConfig approximate = cfg.sim;
    approximate.gain_mode = GainMode::Approximate;
    const auto trials_geo = simulate_trials(params, geometric);
    const auto trials_apx = simulate_trials(params, approximate);
    const double coverage_se = 0.5 / std::sqrt(static_cast<double>(n));

    for (Band band : {Band::LowFrequency, Band::MmWave}) {
        const BandStatistics stats = band_statistics(trials_geo, band, cfg.gamma_db);
        double worst = 0.0;
        for (std::size_t i = 0; i < cfg.gamma_db.size(); ++i) {
            const double gamma = db_to_linear(cfg.gamma_db[i]);
            const double a = band == Band::LowFrequency ? coverage_lf(gamma, params, cfg.quadrature)
                                                        : coverage_mm(gamma, params, cfg.quadrature);
            worst = std::max(worst, std::abs(a - stats.coverage[i]));
        }
        add(out, std::string("coverage_gap_") + band_name(band), worst, widen(0.02, 3.0 * coverage_se));

        const double analytic_se = band == Band::LowFrequency ? bias.se_lf : bias.se_m;
        add(out, std::string("se_gap_") + band_name(band), std::abs(stats.mean_se - analytic_se) / analytic_se,
            widen(0.03, 3.0 * band_se_std_error(trials_geo, band) / analytic_se));
    }

    const double beta = policy_beta(cfg, bias);
    for (double b : {beta, 1.0}) {
        const MetricSet emp = summarize(trials_geo, params, b, cfg.gamma_db, cfg.rate_model);
        const double a_m = assoc_prob_mmwave(b, params, cfg.quadrature);
        add(out, b == beta ? "assoc_gap_policy" : "assoc_gap_map", std::abs(emp.assoc_mm - a_m),
            widen(0.01, 3.0 * std::sqrt(a_m * (1.0 - a_m) / static_cast<double>(n))));
    }
    {
        // The band mixture weights unconditional per-band coverage, so it is checked
        // for the configured policy only.
        const MetricSet emp = summarize(trials_geo, params, beta, cfg.gamma_db, cfg.rate_model);
        const auto analytic = analytic_coverage(params, beta, cfg.gamma_db, cfg.quadrature);
        double worst = 0.0;
        for (std::size_t i = 0; i < analytic.size(); ++i)
            worst = std::max(worst, std::abs(analytic[i] - emp.coverage[i].probability));
        add(out, "coverage_gap_total", worst, widen(0.05, 3.0 * coverage_se));
    }

    {
        const MetricSet geo = summarize(trials_geo, params, beta, cfg.gamma_db, cfg.rate_model);
        const MetricSet apx = summarize(trials_apx, params, beta, cfg.gamma_db, cfg.rate_model);
        double worst = 0.0;
        for (std::size_t i = 0; i < geo.coverage.size(); ++i)
            worst = std::max(worst, std::abs(geo.coverage[i].probability - apx.coverage[i].probability));
        add(out, "gain_mode_gap", worst, widen(0.05, 3.0 * std::sqrt(2.0) * coverage_se));
    }

    return out;
}

void write_checks_csv(const std::vector<Check>& checks, std::ostream& out)
{
    std::string text = "check,value,bound,status\n";
    for (const auto& c : checks)
        text += fmt::format("{},{},{},{}\n", c.name, format_number(c.value), format_number(c.bound),
                            c.passed ? "pass" : "fail");
    out << text;
}

} // namespace uavcre
