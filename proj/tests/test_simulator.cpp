#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "uavcre/analysis.hpp"
#include "uavcre/association.hpp"
#include "uavcre/errors.hpp"
#include "uavcre/simulator.hpp"
#include "uavcre/units.hpp"

using namespace uavcre;

namespace {

const NetworkParams kRef = NetworkParams::reference();

// Reference profile thinned so ensembles of runs stay cheap.
NetworkParams light()
{
    NetworkParams p = kRef;
    p.mm.uav_density = per_km2(50.0);
    return p;
}

SimConfig small(long n, std::uint64_t seed = 1)
{
    SimConfig s;
    s.n_trials = n;
    s.master_seed = seed;
    return s;
}

// One shared 1e4-trial run at the reference profile.
const std::vector<TrialSample>& reference_trials()
{
    static const std::vector<TrialSample> trials = simulate_trials(kRef, small(10000, 2024));
    return trials;
}

} // namespace

TEST_CASE("drops are reproducible and sized like the PPP")
{
    const SimConfig sim = small(1);
    const auto a = drop_network(kRef, sim, 99);
    const auto b = drop_network(kRef, sim, 99);
    REQUIRE(a.uavs_m.size() == b.uavs_m.size());
    REQUIRE(a.uavs_lf.size() == b.uavs_lf.size());
    for (std::size_t i = 0; i < a.uavs_m.size(); ++i) {
        CHECK(a.uavs_m[i].x == b.uavs_m[i].x);
        CHECK(a.steer_targets[i].y == b.steer_targets[i].y);
    }
    CHECK(a.steer_targets.size() == a.uavs_m.size());
    const double mu = per_km2(500.0) * M_PI * 2000.0 * 2000.0;
    CHECK(mu == doctest::Approx(6283.2).epsilon(1e-4));
    CHECK(std::abs(static_cast<double>(a.uavs_m.size()) - mu) < 5.0 * std::sqrt(mu));
    for (const auto& p : a.uavs_m)
        CHECK(planar_norm(p) <= 2000.0);

    SimConfig approx = sim;
    approx.gain_mode = GainMode::Approximate;
    CHECK(drop_network(kRef, approx, 99).steer_targets.empty());
}

TEST_CASE("invalid simulation settings")
{
    SimConfig s = small(0);
    CHECK_THROWS_AS(simulate_trials(kRef, s), ParameterError);
    s = small(10);
    s.region_radius = 0.0;
    CHECK_THROWS_AS(drop_network(kRef, s, 1), ParameterError);
}

TEST_CASE("serial reference and OpenMP runs are bit-identical")
{
    const SimConfig sim = small(64, 77);
    const auto par = simulate_trials(kRef, sim);
    const auto ser = simulate_trials_serial(kRef, sim);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].lf.sinr == ser[i].lf.sinr);
        CHECK(par[i].mm.sinr == ser[i].mm.sinr);
        CHECK(par[i].mm.interference == ser[i].mm.interference);
        CHECK(par[i].lf.serving_distance == ser[i].lf.serving_distance);
    }
    // A single trial does not depend on which others ran.
    const TrialSample t = run_trial(kRef, sim, 17);
    CHECK(t.mm.sinr == par[17].mm.sinr);
}

TEST_CASE("single transmitter SINR is exact")
{
    const BandConfig& b = kRef.mm;
    const Link only{70.0, 1.0, 1.0};
    const BandSample s = sinr_from_links({&only, 1}, b, kRef.pattern.gain_main);
    const double expected = b.power_const() * kRef.pattern.gain_main * std::pow(70.0, -b.pathloss_exp) / b.noise_power;
    CHECK(s.sinr == doctest::Approx(expected).epsilon(1e-14));
    CHECK(s.serving_distance == 70.0);
    CHECK(s.interference == 0.0);
}

TEST_CASE("an extra interferer lowers the SINR")
{
    std::vector<Link> links = {{60.0, 1.0, 0.7}, {150.0, 0.76, 1.3}};
    const double before = sinr_from_links(links, kRef.mm, 64.0).sinr;
    links.push_back({400.0, 0.76, 0.2});
    const double after = sinr_from_links(links, kRef.mm, 64.0).sinr;
    CHECK(after < before);
    CHECK(sinr_from_links(links, kRef.mm, 64.0, 1e-12).sinr < after);
}

TEST_CASE("tail term matches the mean interference beyond the disk")
{
    const double r = 2000.0;
    const double edge = std::sqrt(r * r + kRef.height * kRef.height);
    const double expected = 2.0 * M_PI * kRef.lf.uav_density * kRef.lf.power_const() *
                            std::pow(edge, 2.0 - kRef.lf.pathloss_exp) / (kRef.lf.pathloss_exp - 2.0);
    CHECK(tail_interference(kRef, Band::LowFrequency, r) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("infinite bias sends everyone to mmWave")
{
    SimConfig s = small(200);
    s.policy = AssociationPolicy::fixed(std::numeric_limits<double>::infinity());
    const EmpiricalRun run = run_experiment(kRef, s, default_gamma_grid_db(), RateModel::Link, 8.0);
    CHECK(run.metrics.assoc_mm == 1.0);
    CHECK(run.metrics.provenance == Provenance::Empirical);
    CHECK(run.trials == 200);
}

TEST_CASE("empty bands are redrawn and counted")
{
    NetworkParams sparse = light();
    sparse.lf.uav_density = 1.0 / (M_PI * 2000.0 * 2000.0);  // one UAV per disk on average
    const auto trials = simulate_trials(sparse, small(400));
    long redraws = 0;
    for (const auto& t : trials)
        redraws += t.redraws;
    CHECK(redraws > 0);

    sparse.lf.uav_density = 1e-15;
    CHECK_THROWS_AS(simulate_trials(sparse, small(4)), ConfigError);
}

TEST_CASE("exact steering mode runs and agrees with the surrogate")
{
    NetworkParams p = light();
    p.user_density = per_km2(2000.0);
    SimConfig exact = small(300, 5);
    exact.steering = SteeringMode::UserPpp;
    exact.region_radius = 800.0;
    SimConfig surrogate = exact;
    surrogate.steering = SteeringMode::Surrogate;
    const auto a = band_statistics(simulate_trials(p, exact), Band::MmWave, std::vector<double>{0.0});
    const auto b = band_statistics(simulate_trials(p, surrogate), Band::MmWave, std::vector<double>{0.0});
    CHECK(std::abs(a.coverage[0] - b.coverage[0]) < 0.1);
}

TEST_CASE("per-band statistics match the analysis at 1e4 drops")
{
    const auto& trials = reference_trials();
    const std::vector<double> zero_db{0.0};
    const auto lf = band_statistics(trials, Band::LowFrequency, zero_db);
    const auto mm = band_statistics(trials, Band::MmWave, zero_db);
    CHECK(std::abs(lf.coverage[0] - coverage_lf(1.0, kRef)) < 0.02);
    CHECK(std::abs(mm.coverage[0] - coverage_mm(1.0, kRef)) < 0.02);
    CHECK(std::abs(lf.mean_se / se_lf(kRef) - 1.0) < 0.05);
    CHECK(std::abs(mm.mean_se / se_mm(kRef) - 1.0) < 0.05);
    CHECK(std::abs((mm.mean_se / lf.mean_se) / se_ratio_tau(kRef) - 1.0) < 0.05);
}

TEST_CASE("summaries condition SE on the association")
{
    const auto& trials = reference_trials();
    const double beta = CrePolicy::from_network(kRef, 5.0, 5.0).beta();
    const MetricSet m = summarize(trials, kRef, beta, default_gamma_grid_db(), RateModel::Link);
    double total = 0.0;
    long n_mm = 0;
    for (const auto& t : trials) {
        const TrialResult r = apply_association(t, beta, kRef);
        total += r.se_sample;
        n_mm += r.band == Band::MmWave ? 1 : 0;
        CHECK(r.sinr >= 0.0);
    }
    CHECK(m.assoc_mm == static_cast<double>(n_mm) / trials.size());
    CHECK(m.se_total == doctest::Approx(total / trials.size()).epsilon(1e-12));
    CHECK(m.se_total == doctest::Approx(m.assoc_mm * m.se_m + m.assoc_lf() * m.se_lf).epsilon(1e-12));
    for (std::size_t i = 1; i < m.coverage.size(); ++i)
        CHECK(m.coverage[i].probability <= m.coverage[i - 1].probability);
}

TEST_CASE("coverage standard error shrinks like 1/sqrt(n)")
{
    const NetworkParams p = light();
    const double beta = 1.0;
    const std::vector<double> zero_db{0.0};
    const auto spread = [&](long n) {
        const int seeds = 200;
        double sum = 0.0, sum_sq = 0.0;
        for (int s = 0; s < seeds; ++s) {
            SimConfig sim = small(n, 10000 + s);
            sim.gain_mode = GainMode::Approximate;
            const double c = summarize(simulate_trials(p, sim), p, beta, zero_db, RateModel::Link).coverage[0].probability;
            sum += c;
            sum_sq += c * c;
        }
        const double mean = sum / seeds;
        return std::sqrt((sum_sq - seeds * mean * mean) / (seeds - 1));
    };
    const double ratio = spread(50) / spread(100);
    // sqrt(2) = 1.414; the ratio of two 200-seed spreads has about 7% relative noise.
    CHECK(ratio > 1.2);
    CHECK(ratio < 1.65);
}
