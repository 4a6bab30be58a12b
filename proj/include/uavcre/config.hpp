#pragma once

#include <string>
#include <vector>

#include "analysis.hpp"
#include "network.hpp"
#include "quadrature.hpp"
#include "simulator.hpp"

namespace uavcre {

/// Everything one CLI run needs. Built from the reference profile, then
/// overlaid with a YAML file and finally with command-line flags.
struct ExperimentConfig
{
    NetworkParams network = NetworkParams::reference();
    int antennas = 64;
    double beta0 = 5.0;
    double growth_alpha = 5.0;

    std::vector<double> gamma_db = default_gamma_grid_db();
    std::vector<double> density_ratios = {5.0, 10.0, 25.0, 50.0, 100.0};
    std::vector<int> antenna_counts = {16, 64, 256};

    SimConfig sim;
    QuadratureSpec quadrature;
    RateModel rate_model = RateModel::Link;
    std::string output_path;  // empty: stdout

    void validate() const;
};

ExperimentConfig default_config();

/// Parses YAML text over the defaults. Unknown keys and invalid values raise
/// ConfigError carrying the offending line.
ExperimentConfig parse_config(const std::string& yaml_text);
ExperimentConfig load_config(const std::string& path);

const char* to_string(GainMode m);
const char* to_string(SteeringMode m);
const char* to_string(ElevationModel m);
const char* to_string(RateModel m);
GainMode parse_gain_mode(const std::string& s);
SteeringMode parse_steering_mode(const std::string& s);
ElevationModel parse_elevation_model(const std::string& s);
RateModel parse_rate_model(const std::string& s);

} // namespace uavcre
