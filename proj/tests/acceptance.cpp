// Acceptance suite: one line per criterion, exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "uavcre/analysis.hpp"
#include "uavcre/association.hpp"
#include "uavcre/experiments.hpp"
#include "uavcre/oracles.hpp"
#include "uavcre/simulator.hpp"
#include "uavcre/units.hpp"

using namespace uavcre;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail)
{
    failures += pass ? 0 : 1;
    std::printf("[%s] AC-%d %s: %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
}

void info(int id, const std::string& detail)
{
    std::printf("       AC-%d info: %s\n", id, detail.c_str());
    std::fflush(stdout);
}

double closed_form_cdf(double lambda, double h, double r)
{
    return r < h ? 0.0 : 1.0 - std::exp(-M_PI * lambda * (r * r - h * h));
}

double narrow_beam_main_prob(double d, const NetworkParams& p)
{
    const double lambda = p.mm.uav_density, h = p.height, bw = p.pattern.bw_elevation;
    const double p_phi = std::min(1.0, 2.0 * M_PI * lambda * bw * std::exp(-M_PI * lambda * (d * d - h * h)) *
                                           d * d * std::sqrt(d * d - h * h) / h);
    return p.pattern.bw_azimuth / (2.0 * M_PI) * p_phi;
}

double cdf_difference_main_prob(double d, const NetworkParams& p)
{
    const double lambda = p.mm.uav_density, h = p.height, bw = p.pattern.bw_elevation;
    const double phi0 = std::acos(h / d);
    const double lo = std::max(0.0, phi0 - bw / 2.0), hi = phi0 + bw / 2.0;
    const double upper = hi >= M_PI / 2.0 ? 1.0 : closed_form_cdf(lambda, h, h / std::cos(hi));
    return p.pattern.bw_azimuth / (2.0 * M_PI) * (upper - closed_form_cdf(lambda, h, h / std::cos(lo)));
}

std::vector<double> analytic_curve(const NetworkParams& p, double beta, const std::vector<double>& grid)
{
    std::vector<double> out;
    for (const auto& c : analytic_metrics(p, beta, grid, RateModel::Link).coverage)
        out.push_back(c.probability);
    return out;
}

} // namespace

int main()
{
    const auto start = std::chrono::steady_clock::now();
    const NetworkParams ref = NetworkParams::reference();
    const ExperimentConfig cfg = default_config();
    const std::vector<double> grid = default_gamma_grid_db();
    const BiasSummary bias = resolve_bias(ref, cfg);
    std::printf("reference profile: zeta=%.6g tau=%.6g beta_cre=%.6g se_lf=%.6g se_m=%.6g\n", bias.zeta, bias.tau,
                bias.beta, bias.se_lf, bias.se_m);

    SimConfig sim;
    sim.n_trials = 10000;
    sim.master_seed = 1;
    const auto trials = simulate_trials(ref, sim);
    const MetricSet emp_cre = summarize(trials, ref, bias.beta, grid, RateModel::Link);
    const MetricSet emp_map = summarize(trials, ref, 1.0, grid, RateModel::Link);
    const std::size_t zero_db = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), 0.0) - grid.begin());

    // 1. Headline coverage at 0 dB.
    {
        const double cre = emp_cre.coverage[zero_db].probability;
        const double map = emp_map.coverage[zero_db].probability;
        const bool ok = std::abs(cre - 0.90) <= 0.05 && std::abs(map - 0.65) <= 0.05;
        report(1, ok, "empirical coverage at 0 dB, 1e4 trials",
               fmt::format("CRE {:.4f} (target 0.90+-0.05), MAP {:.4f} (target 0.65+-0.05)", cre, map));
        info(1, fmt::format("analytic CRE {:.4f}, MAP {:.4f}; A_m CRE {:.4f}, MAP {:.4f}",
                            coverage_total(1.0, ref, bias.beta), coverage_total(1.0, ref, 1.0), emp_cre.assoc_mm,
                            emp_map.assoc_mm));
    }

    // 2. Analytic against empirical coverage over the grid.
    {
        const auto analytic = analytic_curve(ref, bias.beta, grid);
        double worst = 0.0, at = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double gap = std::abs(analytic[i] - emp_cre.coverage[i].probability);
            if (gap > worst) {
                worst = gap;
                at = grid[i];
            }
        }
        report(2, worst <= 0.05, "analytic vs empirical coverage (CRE), -10..20 dB",
               fmt::format("max gap {:.4f} at {} dB (tolerance 0.05)", worst, at));
    }

    // 3. Laplace transforms against explicit drops.
    {
        bool ok = true;
        std::string detail;
        for (Band band : {Band::LowFrequency, Band::MmWave}) {
            const BandConfig& b = ref.band(band);
            const ServingDistanceDist law = ref.serving(band);
            const double pgk = b.power_const() * ref.serving_gain(band);
            const double quantiles[] = {0.1, 0.3, 0.5, 0.7, 0.9};
            const double offset = band == Band::LowFrequency ? -10.0 : 0.0;
            const double thresholds_db[] = {-5.0, 0.0, 5.0, 0.0, -5.0};
            std::vector<LaplaceProbe> probes;
            for (int k = 0; k < 5; ++k) {
                const double r = law.quantile(quantiles[k]);
                probes.push_back({b.fading.shape * db_to_linear(thresholds_db[k] + offset) * std::pow(r, b.pathloss_exp) / pgk, r});
            }
            const auto mc = laplace_monte_carlo(ref, band, probes, 100000,
                                                band == Band::LowFrequency ? 5000.0 : 600.0, 7);
            double worst = 0.0;
            for (std::size_t k = 0; k < probes.size(); ++k) {
                const double a = band == Band::LowFrequency ? laplace_lf(probes[k].s, probes[k].r, ref.lf)
                                                            : laplace_mm(probes[k].s, probes[k].r, ref);
                worst = std::max(worst, std::abs(a / mc[k].mean - 1.0));
            }
            ok = ok && worst <= 0.02;
            detail += fmt::format("{}{} max rel err {:.4f}", detail.empty() ? "" : ", ", band_name(band), worst);
        }
        report(3, ok, "Laplace transforms vs 1e5 drops, 5 probes per band", detail + " (tolerance 0.02)");
    }

    // 4. Serving-distance sampler.
    {
        bool ok = true;
        std::string detail;
        const double cases[][2] = {{5e-4, 50.0}, {1e-5, 50.0}, {2e-4, 120.0}};
        for (const auto& c : cases) {
            const ServingDistanceDist law{c[0], c[1]};
            RandomStream rng = make_stream(4, static_cast<std::uint64_t>(c[1]));
            std::vector<double> xs(100000);
            for (double& x : xs)
                x = sample_serving_distance(law, rng);
            const double d = ks_statistic(xs, [&](double r) { return closed_form_cdf(c[0], c[1], r); });
            ok = ok && d < 0.01;
            detail += fmt::format("{}(lambda={:g}, h={:g}) KS {:.5f}", detail.empty() ? "" : ", ", c[0], c[1], d);
        }
        report(4, ok, "serving-distance law, 1e5 samples", detail + " (tolerance 0.01)");
    }

    // 5. Gain model fidelity.
    {
        bool ok_hits = true;
        std::string detail, exact_detail;
        for (double ratio : {1.05, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.8, 2.0}) {
            const double d = ratio * ref.height;
            const auto mc = main_lobe_frequency(ref, d, 20000000, 5);
            const double model = narrow_beam_main_prob(d, ref);
            const double rel = mc.mean > 0.0 ? model / mc.mean - 1.0 : INFINITY;
            ok_hits = ok_hits && std::abs(rel) <= 0.20;
            detail += fmt::format("{}{:g}h {:+.3f}", detail.empty() ? "" : ", ", ratio, rel);
            const double exact = cdf_difference_main_prob(d, ref);
            exact_detail += fmt::format("{}{:g}h {:+.3f}", exact_detail.empty() ? "" : ", ", ratio,
                                        mc.mean > 0.0 ? exact / mc.mean - 1.0 : INFINITY);
        }
        SimConfig approx = sim;
        approx.gain_mode = GainMode::Approximate;
        const MetricSet apx = summarize(simulate_trials(ref, approx), ref, bias.beta, grid, RateModel::Link);
        double gap = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            gap = std::max(gap, std::abs(apx.coverage[i].probability - emp_cre.coverage[i].probability));
        report(5, ok_hits && gap <= 0.05, "main-lobe hit frequency and gain-mode gap",
               fmt::format("narrow-beam law vs 2e7 geometric draws, relative error [{}] (tolerance 0.20); "
                           "gain-mode coverage gap {:.4f} (tolerance 0.05)",
                           detail, gap));
        info(5, fmt::format("exact CDF-difference law vs the same draws: [{}]", exact_detail));
    }

    // 6. Nakagami sum at m = 1.
    {
        NetworkParams p = ref;
        p.mm.fading = Fading::rayleigh();
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            const double g = db_to_linear(-10.0 + 3.0 * k);
            worst = std::max(worst, std::abs(coverage_mm(g, p) - coverage_mm_rayleigh(g, p)));
        }
        report(6, worst <= 1e-6, "Nakagami sum at m=1 vs Rayleigh form, 10 thresholds",
               fmt::format("max abs diff {:.3e} (tolerance 1e-6)", worst));
    }

    // 7. Bell-polynomial derivatives.
    {
        const QuadratureSpec tight{1e-13, 1e-300, 4000};
        const double radii[] = {52.0, 55.0, 60.0, 70.0, 90.0};
        const double gammas_db[] = {-5.0, 0.0, 5.0, 0.0, 10.0};
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            const double r = radii[k];
            const double s = db_to_linear(gammas_db[k]) * ref.mm.fading.shape * std::pow(r, ref.mm.pathloss_exp) /
                             (ref.mm.power_const() * ref.pattern.gain_main);
            const auto exact = laplace_mm_derivatives(2, s, r, ref, tight);
            const auto f = [&](double x) { return laplace_mm(x, r, ref, tight); };
            worst = std::max(worst, std::abs(exact[1] / central_difference(f, s, 1, s * 6e-6) - 1.0));
            worst = std::max(worst, std::abs(exact[2] / central_difference(f, s, 2, s * 1.2e-4) - 1.0));
        }
        report(7, worst <= 1e-4, "Laplace derivatives (orders 1-2, m=3) vs finite differences, 5 probes",
               fmt::format("max rel err {:.3e} (tolerance 1e-4)", worst));
    }

    // 8. Bias factor.
    {
        const double z = bias.zeta, b0 = cfg.beta0, g = cfg.growth_alpha;
        const double at_one = std::abs(bias_factor(b0, g, z, 1.0) - z) / z;
        const double limit = std::abs(bias_factor(b0, g, z, 1e3) - z * b0) / (z * b0);
        int violations = 0;
        double prev = bias_factor(b0, g, z, 0.0);
        for (int i = 1; i < 100; ++i) {
            const double b = bias_factor(b0, g, z, 0.05 * i);
            violations += b > prev ? 0 : 1;
            prev = b;
        }
        report(8, at_one <= 1e-9 && limit <= 1e-9 && violations == 0, "bias factor properties",
               fmt::format("|beta(1)-zeta|/zeta {:.1e}, |beta(inf)-zeta*beta0|/(zeta*beta0) {:.1e}, "
                           "monotonicity violations on 100-point grid {} (tolerance 1e-9)",
                           at_one, limit, violations));
    }

    // 9. Rate sweep trend.
    {
        bool ok = true;
        double gap25 = 0.0, gap100 = 0.0;
        std::string detail, degenerate;
        for (double ratio : {5.0, 10.0, 25.0, 50.0, 100.0}) {
            NetworkParams p = ref;
            p.mm.uav_density = ratio * p.lf.uav_density;
            const BiasSummary b = resolve_bias(p, cfg);
            const auto rate = [&](double beta, RateModel model) {
                return per_user_rate(p, BandShares{assoc_prob_mmwave(beta, p), b.se_lf, b.se_m}, model);
            };
            const double cre = rate(b.beta, RateModel::Link), map = rate(1.0, RateModel::Link);
            ok = ok && cre >= map;
            if (ratio == 25.0)
                gap25 = cre - map;
            if (ratio == 100.0)
                gap100 = cre - map;
            detail += fmt::format("{}{:g}: {:.4g}/{:.4g}", detail.empty() ? "" : ", ", ratio, cre / 1e6, map / 1e6);
            degenerate += fmt::format("{}{:g}: {:.4g}/{:.4g}", degenerate.empty() ? "" : ", ", ratio,
                                      rate(b.beta, RateModel::LoadShare) / 1e6, rate(1.0, RateModel::LoadShare) / 1e6);
        }
        ok = ok && gap100 < gap25;
        report(9, ok, "per-user rate CRE >= MAP, gap(100) < gap(25)",
               fmt::format("CRE/MAP Mbit/s [{}]; gap 25: {:.4g}, gap 100: {:.4g} Mbit/s", detail, gap25 / 1e6,
                           gap100 / 1e6));
        info(9, fmt::format("load-share model CRE/MAP Mbit/s [{}]", degenerate));
    }

    // 10. SE against array size.
    {
        bool ok = true;
        double prev_cre = 0.0, prev_map = 0.0, gap16 = 0.0, gap256 = 0.0;
        std::string detail;
        for (int n : {16, 64, 256}) {
            NetworkParams p = ref;
            p.pattern = upa_from_count(n);
            const BiasSummary b = resolve_bias(p, cfg);
            const double cre = analytic_se(p, b, b.beta, cfg.quadrature);
            const double map = analytic_se(p, b, 1.0, cfg.quadrature);
            ok = ok && cre >= prev_cre && map >= prev_map;
            prev_cre = cre;
            prev_map = map;
            if (n == 16)
                gap16 = cre - map;
            if (n == 256)
                gap256 = cre - map;
            detail += fmt::format("{}N={}: {:.4f}/{:.4f}", detail.empty() ? "" : ", ", n, cre, map);
        }
        ok = ok && gap256 <= gap16;
        report(10, ok, "SE non-decreasing in N, gap(256) <= gap(16)",
               fmt::format("CRE/MAP bit/s/Hz [{}]; gap 16: {:.4f}, gap 256: {:.4f}", detail, gap16, gap256));
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of 10 criteria failed (%.0f s)\n", failures, seconds);
    return failures == 0 ? 0 : 1;
}
