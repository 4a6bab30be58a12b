#include "uavcre/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "uavcre/analysis.hpp"
#include "uavcre/antenna.hpp"
#include "uavcre/errors.hpp"
#include "uavcre/geometry.hpp"
#include "uavcre/random.hpp"
#include "uavcre/simulator.hpp"
#include "uavcre/units.hpp"

namespace uavcre {

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf)
{
    if (sample.empty())
        throw ParameterError("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double ks_critical(long n, double alpha)
{
    if (n < 1 || !(alpha > 0.0 && alpha < 1.0))
        throw ParameterError("ks_critical: need n >= 1 and alpha in (0, 1)");
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

std::vector<McEstimate> laplace_monte_carlo(const NetworkParams& params, Band band,
                                            std::span<const LaplaceProbe> probes,
                                            long realizations, double region_radius,
                                            std::uint64_t seed)
{
    params.validate();
    if (realizations < 2)
        throw ParameterError("laplace_monte_carlo: need at least two realizations");
    const BandConfig& cfg = params.band(band);
    const double h = params.height;
    const double pk = cfg.power_const();
    const double alpha = cfg.pathloss_exp;
    const int m = cfg.fading.shape;
    const double tail = tail_interference(params, band, region_radius);

    std::vector<double> sum(probes.size(), 0.0), sum_sq(probes.size(), 0.0), interference(probes.size());
    const Ppp2D proc{cfg.uav_density, region_radius, 0};
    RandomStream rng = make_stream(seed, static_cast<std::uint64_t>(band));
    std::poisson_distribution<long> count{proc.mean_count()};
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::gamma_distribution<double> fading{static_cast<double>(m), 1.0 / m};

    for (long t = 0; t < realizations; ++t) {
        std::fill(interference.begin(), interference.end(), tail);
        const long n = count(rng);
        for (long i = 0; i < n; ++i) {
            const double rho = region_radius * std::sqrt(unit(rng));
            const double z = std::sqrt(rho * rho + h * h);
            double gain = 1.0;
            if (band == Band::MmWave) {
                const auto law = interferer_gain_dist(z, cfg.uav_density, h, params.pattern,
                                                      params.elevation_model);
                gain = unit(rng) < law.p_main ? law.gain_main : law.gain_side;
            }
            const double power = pk * gain * fading(rng) * std::pow(z, -alpha);
            for (std::size_t k = 0; k < probes.size(); ++k)
                if (z >= probes[k].r)
                    interference[k] += power;
        }
        for (std::size_t k = 0; k < probes.size(); ++k) {
            const double v = std::exp(-probes[k].s * interference[k]);
            sum[k] += v;
            sum_sq[k] += v * v;
        }
    }

    std::vector<McEstimate> out(probes.size());
    const double n = static_cast<double>(realizations);
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const double mean = sum[k] / n;
        const double var = std::max(0.0, (sum_sq[k] - n * mean * mean) / (n - 1.0));
        out[k] = {mean, std::sqrt(var / n), realizations};
    }
    return out;
}

McEstimate main_lobe_frequency(const NetworkParams& params, double slant, long samples,
                               std::uint64_t seed)
{
    params.validate();
    const double h = params.height;
    if (!(slant >= h))
        throw ParameterError("main_lobe_frequency: slant distance below the UAV height");
    if (samples < 1)
        throw ParameterError("main_lobe_frequency: need at least one sample");
    const double planar = std::sqrt(slant * slant - h * h);
    RandomStream rng = make_stream(seed, 0);
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        // The bearing to the probe is irrelevant by symmetry; randomize it anyway.
        const double phi = 2.0 * kPi * unit(rng);
        const Point2 uav{planar * std::cos(phi), planar * std::sin(phi)};
        const Point2 target = sample_steer_target(uav, params, rng);
        if (in_main_lobe({uav.x, uav.y, h}, target, {0.0, 0.0}, params.pattern))
            ++hits;
    }
    const double p = static_cast<double>(hits) / samples;
    return {p, std::sqrt(p * (1.0 - p) / samples), samples};
}

double coverage_mm_rayleigh(double gamma, const NetworkParams& params, const QuadratureSpec& spec)
{
    params.validate();
    if (!params.mm.fading.is_rayleigh())
        throw ParameterError("coverage_mm_rayleigh: mmWave fading must be Rayleigh");
    const BandConfig& mm = params.mm;
    const ServingDistanceDist law = params.serving(Band::MmWave);
    const double pgk = mm.power_const() * params.pattern.gain_main;
    return integrate_semi_infinite(
        [&](double r) {
            const double f = law.pdf(r);
            if (f == 0.0)
                return 0.0;
            const double u = gamma * std::pow(r, mm.pathloss_exp) / pgk;
            // Rayleigh interferers: E[1 - 1/(1 + u P G K z^-a)] over the two-level gain.
            const double j = integrate_semi_infinite(
                [&](double z) {
                    const InterfererGainDist g = interferer_gain_dist(z, mm.uav_density, params.height,
                                                                      params.pattern, params.elevation_model);
                    const double x = u * mm.power_const() * std::pow(z, -mm.pathloss_exp);
                    const double main = x * g.gain_main, side = x * g.gain_side;
                    return (g.p_main * main / (1.0 + main) + g.p_side * side / (1.0 + side)) * z;
                },
                r, spec.inner(), r);
            return std::exp(-u * mm.noise_power - 2.0 * M_PI * mm.uav_density * j) * f;
        },
        params.height, spec, law.length_scale());
}

double central_difference(const std::function<double(double)>& f, double x, int order, double step)
{
    if (!(step > 0.0))
        throw ParameterError("central_difference: step must be positive");
    switch (order) {
    case 1:
        return (f(x + step) - f(x - step)) / (2.0 * step);
    case 2:
        return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step);
    default:
        throw ParameterError("central_difference: order must be 1 or 2");
    }
}

} // namespace uavcre
