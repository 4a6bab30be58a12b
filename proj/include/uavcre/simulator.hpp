#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "analysis.hpp"
#include "association.hpp"
#include "network.hpp"

namespace uavcre {

/// How an interfering mmWave UAV's gain toward the typical user is obtained.
enum class GainMode {
    Geometric,    // sector test against the UAV's actual steering direction
    Approximate,  // draw from the two-point law at the interferer's slant distance
};

/// How each mmWave UAV's steering target is placed (geometric mode).
enum class SteeringMode {
    Surrogate,  // serving-distance draw at a uniform azimuth around the UAV
    UserPpp,    // full user PPP; each UAV serves a random user of its own cell (slow)
};

struct SimConfig
{
    long n_trials = 10000;
    GainMode gain_mode = GainMode::Geometric;
    SteeringMode steering = SteeringMode::Surrogate;
    AssociationPolicy policy = AssociationPolicy::cre();
    double region_radius = 2000.0;  // m, disk around the typical user
    bool tail_compensation = true;  // add the mean interference from beyond the disk
    std::uint64_t master_seed = 1;

    void validate() const;
};

/// One sampled drop; the typical user sits at the origin.
struct NetworkRealization
{
    std::vector<Point2> uavs_lf;
    std::vector<Point2> uavs_m;
    std::vector<Point2> steer_targets;  // one per mmWave UAV (empty in approximate mode)
    std::uint64_t trial_seed = 0;
    int redraws = 0;  // empty-band rejections before this drop was accepted
};

/// A transmitter as seen from the typical user.
struct Link
{
    double distance = 0.0;  // slant, m
    double gain = 1.0;      // array gain toward the user
    double fading = 1.0;    // power fading draw
};

struct BandSample
{
    double sinr = 0.0;
    double serving_distance = 0.0;
    double interference = 0.0;  // W, including any tail term
};

/// Both bands' observations for one drop; association is applied afterwards.
struct TrialSample
{
    BandSample lf;
    BandSample mm;
    int redraws = 0;
};

struct TrialResult
{
    Band band = Band::LowFrequency;
    double sinr = 0.0;
    double se_sample = 0.0;  // log2(1 + sinr)
    double serving_distance = 0.0;
};

/// Surrogate steering target for a mmWave UAV at `uav`: a serving-distance draw at a
/// uniform azimuth around it.
Point2 sample_steer_target(const Point2& uav, const NetworkParams& params, RandomStream& rng);

NetworkRealization drop_network(const NetworkParams& params, const SimConfig& sim,
                                std::uint64_t trial_seed);

/// SINR of the strongest-on-average (nearest) link in `links` against the rest plus noise
/// and `extra_interference`. `serving_gain` replaces that link's gain.
BandSample sinr_from_links(std::span<const Link> links, const BandConfig& band,
                           double serving_gain, double extra_interference = 0.0);

/// Mean interference from same-band UAVs beyond the simulation disk.
double tail_interference(const NetworkParams& params, Band band, double region_radius);

/// SINR at the typical user for one band of a realization, drawing fading (and,
/// in approximate mode, interferer gains) from `rng`.
BandSample sinr_at_typical(const NetworkRealization& real, Band band, const NetworkParams& params,
                           const SimConfig& sim, RandomStream& rng);

/// One complete trial: drop, then both bands' SINR. Pure in (params, sim, index).
TrialSample run_trial(const NetworkParams& params, const SimConfig& sim, long index);

/// All trials on the OpenMP team.
std::vector<TrialSample> simulate_trials(const NetworkParams& params, const SimConfig& sim);
/// Reference: same trials in index order on the calling thread.
std::vector<TrialSample> simulate_trials_serial(const NetworkParams& params, const SimConfig& sim);

TrialResult apply_association(const TrialSample& t, double beta, const NetworkParams& params);

/// Empirical metrics under bias `beta`. SE per band is conditioned on the association.
MetricSet summarize(std::span<const TrialSample> trials, const NetworkParams& params, double beta,
                    std::span<const double> gamma_db, RateModel rate_model);

/// Unconditional per-band statistics (each band's user served by its nearest UAV).
struct BandStatistics
{
    std::vector<double> coverage;  // aligned with the gamma grid
    double mean_se = 0.0;
};
BandStatistics band_statistics(std::span<const TrialSample> trials, Band band,
                               std::span<const double> gamma_db);

struct EmpiricalRun
{
    MetricSet metrics;
    double beta = 1.0;
    long trials = 0;
    long redraws = 0;
};

/// Full protocol: resolve the policy's bias (`cre_beta` is the adaptive bias,
/// computed once by the caller, e.g. CrePolicy::from_network), simulate, summarize.
EmpiricalRun run_experiment(const NetworkParams& params, const SimConfig& sim,
                            std::span<const double> gamma_db, RateModel rate_model,
                            double cre_beta);

} // namespace uavcre
