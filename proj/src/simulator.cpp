#include "uavcre/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "uavcre/errors.hpp"
#include "uavcre/parallel.hpp"
#include "uavcre/units.hpp"

namespace uavcre {

namespace {

constexpr int kMaxRedraws = 64;
constexpr std::uint64_t kFadingStream = 1u << 20;

// Uniform grid over the simulation square for nearest-UAV queries.
class NearestIndex
{
  public:
    NearestIndex(const std::vector<Point2>& pts, double radius, double cell)
        : pts_(pts), origin_(-radius), cell_(cell),
          dim_(std::max(1, static_cast<int>(std::ceil(2.0 * radius / cell)))),
          buckets_(static_cast<std::size_t>(dim_) * dim_)
    {
        for (std::size_t i = 0; i < pts.size(); ++i)
            buckets_[bucket(cell_of(pts[i].x), cell_of(pts[i].y))].push_back(i);
    }

    std::size_t nearest(const Point2& q) const
    {
        const int cx = cell_of(q.x), cy = cell_of(q.y);
        std::size_t best = pts_.size();
        double best_d2 = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring <= dim_; ++ring) {
            // Every point outside the ring-th shell is at least (ring) cells away.
            const double reach = std::max(0, ring - 1) * cell_;
            if (reach * reach > best_d2)
                break;
            for (int ix = cx - ring; ix <= cx + ring; ++ix)
                for (int iy = cy - ring; iy <= cy + ring; ++iy) {
                    if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring)
                        continue;
                    if (ix < 0 || iy < 0 || ix >= dim_ || iy >= dim_)
                        continue;
                    for (std::size_t i : buckets_[bucket(ix, iy)]) {
                        const double dx = pts_[i].x - q.x, dy = pts_[i].y - q.y;
                        const double d2 = dx * dx + dy * dy;
                        if (d2 < best_d2) {
                            best_d2 = d2;
                            best = i;
                        }
                    }
                }
        }
        return best;
    }

  private:
    int cell_of(double v) const
    {
        return std::clamp(static_cast<int>(std::floor((v - origin_) / cell_)), 0, dim_ - 1);
    }
    std::size_t bucket(int ix, int iy) const { return static_cast<std::size_t>(ix) * dim_ + iy; }

    const std::vector<Point2>& pts_;
    double origin_;
    double cell_;
    int dim_;
    std::vector<std::vector<std::size_t>> buckets_;
};

Point2 surrogate_target(const Point2& uav, const ServingDistanceDist& law, double h,
                        RandomStream& rng)
{
    const double slant = law.sample(rng);
    const double planar = std::sqrt(std::max(0.0, slant * slant - h * h));
    const double phi = 2.0 * kPi * std::uniform_real_distribution<double>{0.0, 1.0}(rng);
    return {uav.x + planar * std::cos(phi), uav.y + planar * std::sin(phi)};
}

// Each UAV steers at one user drawn uniformly from the users whose nearest UAV it is.
std::vector<Point2> user_ppp_targets(const std::vector<Point2>& uavs, const NetworkParams& params,
                                     const SimConfig& sim, RandomStream& rng)
{
    const ServingDistanceDist law = params.serving(Band::MmWave);
    std::vector<Point2> targets(uavs.size());
    std::vector<long> seen(uavs.size(), 0);
    if (uavs.empty())
        return targets;
    const NearestIndex index{uavs, sim.region_radius, 1.0 / std::sqrt(params.mm.uav_density)};
    const Ppp2D users{params.user_density, sim.region_radius, 0};
    const auto count = std::poisson_distribution<long>{users.mean_count()}(rng);
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    for (long u = 0; u < count; ++u) {
        const double rho = sim.region_radius * std::sqrt(unit(rng));
        const double phi = 2.0 * kPi * unit(rng);
        const Point2 user{rho * std::cos(phi), rho * std::sin(phi)};
        const std::size_t k = index.nearest(user);
        // Reservoir sampling keeps a uniform pick among the cell's users.
        if (++seen[k] == 1 || unit(rng) * seen[k] < 1.0)
            targets[k] = user;
    }
    for (std::size_t k = 0; k < uavs.size(); ++k)
        if (seen[k] == 0)
            targets[k] = surrogate_target(uavs[k], law, params.height, rng);
    return targets;
}

} // namespace

Point2 sample_steer_target(const Point2& uav, const NetworkParams& params, RandomStream& rng)
{
    return surrogate_target(uav, params.serving(Band::MmWave), params.height, rng);
}

void SimConfig::validate() const
{
    if (n_trials < 1)
        throw ParameterError("simulation needs at least one trial");
    if (!std::isfinite(region_radius) || region_radius <= 0.0)
        throw ParameterError("simulation region radius must be finite and positive");
    if (policy.kind == AssociationPolicy::Kind::FixedBeta && !(policy.fixed_beta > 0.0))
        throw ParameterError("fixed bias must be positive");
}

NetworkRealization drop_network(const NetworkParams& params, const SimConfig& sim,
                                std::uint64_t trial_seed)
{
    params.validate();
    sim.validate();
    NetworkRealization real;
    real.trial_seed = trial_seed;
    for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
        RandomStream rng = make_stream(trial_seed, static_cast<std::uint64_t>(attempt));
        real.uavs_lf = sample_ppp({params.lf.uav_density, sim.region_radius, 0}, rng);
        real.uavs_m = sample_ppp({params.mm.uav_density, sim.region_radius, 0}, rng);
        if (real.uavs_lf.empty() || real.uavs_m.empty()) {
            ++real.redraws;
            continue;
        }
        real.steer_targets.clear();
        if (sim.gain_mode == GainMode::Geometric) {
            if (sim.steering == SteeringMode::UserPpp) {
                real.steer_targets = user_ppp_targets(real.uavs_m, params, sim, rng);
            }
            else {
                const ServingDistanceDist law = params.serving(Band::MmWave);
                real.steer_targets.reserve(real.uavs_m.size());
                for (const Point2& p : real.uavs_m)
                    real.steer_targets.push_back(surrogate_target(p, law, params.height, rng));
            }
        }
        return real;
    }
    throw ConfigError("every drop left a band without UAVs; enlarge the region or densities");
}

BandSample sinr_from_links(std::span<const Link> links, const BandConfig& band, double serving_gain,
                           double extra_interference)
{
    if (links.empty())
        throw ParameterError("sinr_from_links: band has no transmitters");
    std::size_t serving = 0;
    for (std::size_t i = 1; i < links.size(); ++i)
        if (links[i].distance < links[serving].distance)
            serving = i;
    const double pk = band.power_const();
    double interference = extra_interference;
    for (std::size_t i = 0; i < links.size(); ++i)
        if (i != serving)
            interference += pk * links[i].gain * links[i].fading *
                            std::pow(links[i].distance, -band.pathloss_exp);
    const Link& s = links[serving];
    const double signal = pk * serving_gain * s.fading * std::pow(s.distance, -band.pathloss_exp);
    return {signal / (band.noise_power + interference), s.distance, interference};
}

double tail_interference(const NetworkParams& params, Band band, double region_radius)
{
    const BandConfig& cfg = params.band(band);
    const double edge = slant_distance(region_radius, params.height);
    double gain = 1.0;
    if (band == Band::MmWave)
        gain = interferer_gain_dist(edge, cfg.uav_density, params.height, params.pattern,
                                    params.elevation_model)
                   .mean_gain();
    return 2.0 * kPi * cfg.uav_density * cfg.power_const() * gain *
           std::pow(edge, 2.0 - cfg.pathloss_exp) / (cfg.pathloss_exp - 2.0);
}

BandSample sinr_at_typical(const NetworkRealization& real, Band band, const NetworkParams& params,
                           const SimConfig& sim, RandomStream& rng)
{
    const BandConfig& cfg = params.band(band);
    const std::vector<Point2>& uavs = band == Band::LowFrequency ? real.uavs_lf : real.uavs_m;
    if (uavs.empty())
        throw ParameterError("sinr_at_typical: realization has no UAV in this band");
    const double h = params.height;
    const int m = cfg.fading.shape;
    std::gamma_distribution<double> fading{static_cast<double>(m), 1.0 / m};
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    const Point2 origin{};

    std::vector<Link> links(uavs.size());
    for (std::size_t i = 0; i < uavs.size(); ++i) {
        Link& l = links[i];
        l.distance = slant_distance(planar_norm(uavs[i]), h);
        l.fading = fading(rng);
        if (band == Band::LowFrequency)
            continue;
        if (sim.gain_mode == GainMode::Geometric) {
            l.gain = geometric_gain({uavs[i].x, uavs[i].y, h}, real.steer_targets.at(i), origin,
                                    params.pattern);
        }
        else {
            const InterfererGainDist g = interferer_gain_dist(
                l.distance, cfg.uav_density, h, params.pattern, params.elevation_model);
            l.gain = unit(rng) < g.p_main ? g.gain_main : g.gain_side;
        }
    }
    const double tail = sim.tail_compensation ? tail_interference(params, band, sim.region_radius) : 0.0;
    return sinr_from_links(links, cfg, params.serving_gain(band), tail);
}

TrialSample run_trial(const NetworkParams& params, const SimConfig& sim, long index)
{
    const std::uint64_t seed = derive_seed(sim.master_seed, static_cast<std::uint64_t>(index));
    const NetworkRealization real = drop_network(params, sim, seed);
    RandomStream lf_rng = make_stream(seed, kFadingStream);
    RandomStream mm_rng = make_stream(seed, kFadingStream + 1);
    TrialSample t;
    t.lf = sinr_at_typical(real, Band::LowFrequency, params, sim, lf_rng);
    t.mm = sinr_at_typical(real, Band::MmWave, params, sim, mm_rng);
    t.redraws = real.redraws;
    return t;
}

std::vector<TrialSample> simulate_trials(const NetworkParams& params, const SimConfig& sim)
{
    params.validate();
    sim.validate();
    std::vector<TrialSample> out(static_cast<std::size_t>(sim.n_trials));
    parallel_for(out.size(), [&](std::size_t i) { out[i] = run_trial(params, sim, static_cast<long>(i)); });
    return out;
}

std::vector<TrialSample> simulate_trials_serial(const NetworkParams& params, const SimConfig& sim)
{
    params.validate();
    sim.validate();
    std::vector<TrialSample> out;
    out.reserve(static_cast<std::size_t>(sim.n_trials));
    for (long i = 0; i < sim.n_trials; ++i)
        out.push_back(run_trial(params, sim, i));
    return out;
}

TrialResult apply_association(const TrialSample& t, double beta, const NetworkParams& params)
{
    const AssociationOutcome a =
        associate(t.lf.serving_distance, t.mm.serving_distance, beta, params);
    const BandSample& s = a.band == Band::MmWave ? t.mm : t.lf;
    return {a.band, s.sinr, std::log2(1.0 + s.sinr), s.serving_distance};
}

MetricSet summarize(std::span<const TrialSample> trials, const NetworkParams& params, double beta,
                    std::span<const double> gamma_db, RateModel rate_model)
{
    if (trials.empty())
        throw ParameterError("summarize: no trials");
    std::vector<double> thresholds;
    for (double g : gamma_db)
        thresholds.push_back(db_to_linear(g));
    std::vector<long> covered(thresholds.size(), 0);
    long n_mm = 0;
    double se_sum_lf = 0.0, se_sum_m = 0.0;
    for (const TrialSample& t : trials) {
        const TrialResult r = apply_association(t, beta, params);
        if (r.band == Band::MmWave) {
            ++n_mm;
            se_sum_m += r.se_sample;
        }
        else {
            se_sum_lf += r.se_sample;
        }
        for (std::size_t k = 0; k < thresholds.size(); ++k)
            if (r.sinr > thresholds[k])
                ++covered[k];
    }
    const double n = static_cast<double>(trials.size());
    const long n_lf = static_cast<long>(trials.size()) - n_mm;
    MetricSet out;
    out.provenance = Provenance::Empirical;
    for (std::size_t k = 0; k < thresholds.size(); ++k)
        out.coverage.push_back({gamma_db[k], covered[k] / n});
    out.assoc_mm = n_mm / n;
    out.se_m = n_mm > 0 ? se_sum_m / n_mm : 0.0;
    out.se_lf = n_lf > 0 ? se_sum_lf / n_lf : 0.0;
    out.se_total = (se_sum_m + se_sum_lf) / n;
    out.rate_per_user = per_user_rate(params, {out.assoc_mm, out.se_lf, out.se_m}, rate_model);
    return out;
}

BandStatistics band_statistics(std::span<const TrialSample> trials, Band band,
                               std::span<const double> gamma_db)
{
    BandStatistics s;
    s.coverage.assign(gamma_db.size(), 0.0);
    if (trials.empty())
        return s;
    double se = 0.0;
    for (const TrialSample& t : trials) {
        const BandSample& b = band == Band::MmWave ? t.mm : t.lf;
        se += std::log2(1.0 + b.sinr);
        for (std::size_t k = 0; k < gamma_db.size(); ++k)
            if (b.sinr > db_to_linear(gamma_db[k]))
                s.coverage[k] += 1.0;
    }
    const double n = static_cast<double>(trials.size());
    for (double& c : s.coverage)
        c /= n;
    s.mean_se = se / n;
    return s;
}

EmpiricalRun run_experiment(const NetworkParams& params, const SimConfig& sim,
                            std::span<const double> gamma_db, RateModel rate_model, double cre_beta)
{
    EmpiricalRun run;
    run.beta = sim.policy.beta(cre_beta);
    const std::vector<TrialSample> trials = simulate_trials(params, sim);
    run.metrics = summarize(trials, params, run.beta, gamma_db, rate_model);
    run.trials = static_cast<long>(trials.size());
    for (const TrialSample& t : trials)
        run.redraws += t.redraws;
    return run;
}

} // namespace uavcre
