#include "uavcre/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "uavcre/errors.hpp"
#include "uavcre/units.hpp"

namespace uavcre {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : -1; }

void require_map(const YAML::Node& n, const std::string& where)
{
    if (!n.IsMap())
        throw ConfigError(where + " must be a mapping", line_of(n));
}

// Rejects any key of `n` outside `allowed`.
void check_keys(const YAML::Node& n, const std::string& where, const std::set<std::string>& allowed)
{
    require_map(n, where);
    for (const auto& kv : n) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + key + "' in " + where, line_of(kv.first));
    }
}

template <class T>
T scalar(const YAML::Node& n, const std::string& key)
{
    if (!n.IsScalar())
        throw ConfigError(key + " must be a scalar", line_of(n));
    try {
        return n.as<T>();
    }
    catch (const YAML::Exception&) {
        throw ConfigError(key + ": cannot parse '" + n.Scalar() + "'", line_of(n));
    }
}

double number(const YAML::Node& n, const std::string& key)
{
    const double v = scalar<double>(n, key);
    if (!std::isfinite(v))
        throw ConfigError(key + " must be finite", line_of(n));
    return v;
}

double positive(const YAML::Node& n, const std::string& key)
{
    const double v = number(n, key);
    if (v <= 0.0)
        throw ConfigError(key + " must be positive, got " + n.Scalar(), line_of(n));
    return v;
}

int positive_int(const YAML::Node& n, const std::string& key)
{
    const double v = number(n, key);
    if (v < 1.0 || v != std::floor(v) || v > 2e9)
        throw ConfigError(key + " must be a positive integer, got " + n.Scalar(), line_of(n));
    return static_cast<int>(v);
}

// Applies handlers for the keys present in a mapping.
using Handlers = std::map<std::string, std::function<void(const YAML::Node&)>>;

void apply(const YAML::Node& n, const std::string& where, const Handlers& handlers)
{
    std::set<std::string> allowed;
    for (const auto& [k, _] : handlers)
        allowed.insert(k);
    check_keys(n, where, allowed);
    for (const auto& kv : n)
        handlers.at(kv.first.as<std::string>())(kv.second);
}

void read_band(const YAML::Node& n, const std::string& where, BandConfig& b, bool allow_fading)
{
    Handlers h{
        {"carrier_freq_hz", [&](const YAML::Node& v) { b.carrier_freq = positive(v, where + ".carrier_freq_hz"); }},
        {"tx_power_dbm", [&](const YAML::Node& v) { b.tx_power = dbm_to_watt(number(v, where + ".tx_power_dbm")); }},
        {"bandwidth_hz", [&](const YAML::Node& v) { b.bandwidth = positive(v, where + ".bandwidth_hz"); }},
        {"noise_power_dbm", [&](const YAML::Node& v) { b.noise_power = dbm_to_watt(number(v, where + ".noise_power_dbm")); }},
        {"pathloss_exponent",
         [&](const YAML::Node& v) {
             b.pathloss_exp = number(v, where + ".pathloss_exponent");
             if (b.pathloss_exp <= 2.0)
                 throw ConfigError(where + ".pathloss_exponent must exceed 2", line_of(v));
         }},
        {"uav_density_per_km2", [&](const YAML::Node& v) { b.uav_density = per_km2(positive(v, where + ".uav_density_per_km2")); }},
    };
    if (allow_fading)
        h["nakagami_m"] = [&](const YAML::Node& v) { b.fading = Fading::nakagami(positive_int(v, where + ".nakagami_m")); };
    apply(n, where, h);
}

std::vector<double> number_list(const YAML::Node& n, const std::string& key, bool require_positive)
{
    if (!n.IsSequence() || n.size() == 0)
        throw ConfigError(key + " must be a non-empty list", line_of(n));
    std::vector<double> out;
    for (const auto& item : n)
        out.push_back(require_positive ? positive(item, key) : number(item, key));
    return out;
}

void read_gamma_grid(const YAML::Node& n, ExperimentConfig& cfg)
{
    if (n.IsSequence()) {
        cfg.gamma_db = number_list(n, "sweeps.gamma_db", false);
        return;
    }
    double start = -10.0, stop = 20.0, step = 1.0;
    apply(n, "sweeps.gamma_db",
          {{"start", [&](const YAML::Node& v) { start = number(v, "sweeps.gamma_db.start"); }},
           {"stop", [&](const YAML::Node& v) { stop = number(v, "sweeps.gamma_db.stop"); }},
           {"step", [&](const YAML::Node& v) { step = positive(v, "sweeps.gamma_db.step"); }}});
    if (stop < start)
        throw ConfigError("sweeps.gamma_db: stop must not be below start", line_of(n));
    cfg.gamma_db.clear();
    const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i)
        cfg.gamma_db.push_back(start + i * step);
}

template <class Parse>
auto enum_value(const YAML::Node& n, const std::string& key, Parse parse)
{
    const std::string s = scalar<std::string>(n, key);
    try {
        return parse(s);
    }
    catch (const ParameterError& e) {
        throw ConfigError(key + ": " + e.what(), line_of(n));
    }
}

} // namespace

void ExperimentConfig::validate() const
{
    try {
        network.validate();
        sim.validate();
        quadrature.validate();
        bias_factor(beta0, growth_alpha, 1.0, 1.0);
    }
    catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (gamma_db.empty())
        throw ConfigError("gamma grid is empty");
    for (int n : antenna_counts) {
        try {
            upa_from_count(n);
        }
        catch (const ParameterError& e) {
            throw ConfigError(std::string("sweeps.antenna_counts: ") + e.what());
        }
    }
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig parse_config(const std::string& text)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    }
    catch (const YAML::ParserException& e) {
        throw ConfigError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : -1);
    }
    ExperimentConfig cfg = default_config();
    if (root.IsNull())
        return cfg;

    apply(root, "config",
          {
              {"bands",
               [&](const YAML::Node& n) {
                   apply(n, "bands",
                         {{"low_frequency", [&](const YAML::Node& b) { read_band(b, "bands.low_frequency", cfg.network.lf, false); }},
                          {"mmwave", [&](const YAML::Node& b) { read_band(b, "bands.mmwave", cfg.network.mm, true); }}});
               }},
              {"uav_height_m", [&](const YAML::Node& v) { cfg.network.height = positive(v, "uav_height_m"); }},
              {"user_density_per_km2", [&](const YAML::Node& v) { cfg.network.user_density = per_km2(positive(v, "user_density_per_km2")); }},
              {"antennas",
               [&](const YAML::Node& v) {
                   cfg.antennas = positive_int(v, "antennas");
                   try {
                       cfg.network.pattern = upa_from_count(cfg.antennas);
                   }
                   catch (const ParameterError& e) {
                       throw ConfigError(std::string("antennas: ") + e.what(), line_of(v));
                   }
               }},
              {"cre",
               [&](const YAML::Node& n) {
                   apply(n, "cre",
                         {{"beta0",
                           [&](const YAML::Node& v) {
                               cfg.beta0 = number(v, "cre.beta0");
                               if (cfg.beta0 <= 1.0)
                                   throw ConfigError("cre.beta0 must exceed 1", line_of(v));
                           }},
                          {"growth_alpha", [&](const YAML::Node& v) { cfg.growth_alpha = positive(v, "cre.growth_alpha"); }}});
               }},
              {"analysis",
               [&](const YAML::Node& n) {
                   apply(n, "analysis",
                         {{"elevation_model", [&](const YAML::Node& v) { cfg.network.elevation_model = enum_value(v, "analysis.elevation_model", parse_elevation_model); }},
                          {"rel_tol", [&](const YAML::Node& v) { cfg.quadrature.rel_tol = positive(v, "analysis.rel_tol"); }},
                          {"abs_tol", [&](const YAML::Node& v) { cfg.quadrature.abs_tol = positive(v, "analysis.abs_tol"); }},
                          {"max_subdivisions", [&](const YAML::Node& v) { cfg.quadrature.max_subdivisions = positive_int(v, "analysis.max_subdivisions"); }},
                          {"rate_model", [&](const YAML::Node& v) { cfg.rate_model = enum_value(v, "analysis.rate_model", parse_rate_model); }}});
               }},
              {"sweeps",
               [&](const YAML::Node& n) {
                   apply(n, "sweeps",
                         {{"gamma_db", [&](const YAML::Node& v) { read_gamma_grid(v, cfg); }},
                          {"density_ratios", [&](const YAML::Node& v) { cfg.density_ratios = number_list(v, "sweeps.density_ratios", true); }},
                          {"antenna_counts",
                           [&](const YAML::Node& v) {
                               cfg.antenna_counts.clear();
                               for (double x : number_list(v, "sweeps.antenna_counts", true)) {
                                   const int n_ant = static_cast<int>(x);
                                   try {
                                       if (x != n_ant)
                                           throw ParameterError("antenna count must be an integer");
                                       upa_from_count(n_ant);
                                   }
                                   catch (const ParameterError& e) {
                                       throw ConfigError(std::string("sweeps.antenna_counts: ") + e.what(), line_of(v));
                                   }
                                   cfg.antenna_counts.push_back(n_ant);
                               }
                           }}});
               }},
              {"simulation",
               [&](const YAML::Node& n) {
                   apply(n, "simulation",
                         {{"trials", [&](const YAML::Node& v) { cfg.sim.n_trials = positive_int(v, "simulation.trials"); }},
                          {"seed", [&](const YAML::Node& v) { cfg.sim.master_seed = scalar<std::uint64_t>(v, "simulation.seed"); }},
                          {"region_radius_m", [&](const YAML::Node& v) { cfg.sim.region_radius = positive(v, "simulation.region_radius_m"); }},
                          {"gain_mode", [&](const YAML::Node& v) { cfg.sim.gain_mode = enum_value(v, "simulation.gain_mode", parse_gain_mode); }},
                          {"steering", [&](const YAML::Node& v) { cfg.sim.steering = enum_value(v, "simulation.steering", parse_steering_mode); }},
                          {"tail_compensation", [&](const YAML::Node& v) { cfg.sim.tail_compensation = scalar<bool>(v, "simulation.tail_compensation"); }},
                          {"policy", [&](const YAML::Node& v) { cfg.sim.policy = enum_value(v, "simulation.policy", AssociationPolicy::parse); }}});
               }},
              {"output", [&](const YAML::Node& v) { cfg.output_path = scalar<std::string>(v, "output"); }},
          });
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

const char* to_string(GainMode m) { return m == GainMode::Geometric ? "geometric" : "approximate"; }
const char* to_string(SteeringMode m) { return m == SteeringMode::Surrogate ? "surrogate" : "user_ppp"; }
const char* to_string(RateModel m) { return m == RateModel::Link ? "link" : "load_share"; }
const char* to_string(ElevationModel m)
{
    switch (m) {
    case ElevationModel::NarrowBeam:
        return "narrow_beam";
    case ElevationModel::CdfDifference:
        return "cdf_difference";
    case ElevationModel::UniformElevation:
        return "uniform_elevation";
    }
    return "?";
}

GainMode parse_gain_mode(const std::string& s)
{
    if (s == "geometric")
        return GainMode::Geometric;
    if (s == "approximate")
        return GainMode::Approximate;
    throw ParameterError("gain mode must be 'geometric' or 'approximate', got '" + s + "'");
}

SteeringMode parse_steering_mode(const std::string& s)
{
    if (s == "surrogate")
        return SteeringMode::Surrogate;
    if (s == "user_ppp")
        return SteeringMode::UserPpp;
    throw ParameterError("steering must be 'surrogate' or 'user_ppp', got '" + s + "'");
}

ElevationModel parse_elevation_model(const std::string& s)
{
    if (s == "narrow_beam")
        return ElevationModel::NarrowBeam;
    if (s == "cdf_difference")
        return ElevationModel::CdfDifference;
    if (s == "uniform_elevation")
        return ElevationModel::UniformElevation;
    throw ParameterError("elevation model must be narrow_beam, cdf_difference or uniform_elevation, got '" + s + "'");
}

RateModel parse_rate_model(const std::string& s)
{
    if (s == "link")
        return RateModel::Link;
    if (s == "load_share")
        return RateModel::LoadShare;
    throw ParameterError("rate model must be 'link' or 'load_share', got '" + s + "'");
}

} // namespace uavcre
