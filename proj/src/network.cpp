#include "uavcre/network.hpp"

#include <cmath>

#include "uavcre/errors.hpp"
#include "uavcre/units.hpp"

namespace uavcre {

double BandConfig::pathloss_const() const
{
    const double k = kSpeedOfLight / (4.0 * kPi * carrier_freq);
    return k * k;
}

void BandConfig::validate(const std::string& name) const
{
    auto positive = [&](double v, const char* field) {
        if (!std::isfinite(v) || v <= 0.0)
            throw ParameterError(name + "." + field + " must be finite and positive");
    };
    positive(carrier_freq, "carrier_freq");
    positive(tx_power, "tx_power");
    positive(bandwidth, "bandwidth");
    positive(noise_power, "noise_power");
    positive(uav_density, "uav_density");
    if (!std::isfinite(pathloss_exp) || pathloss_exp <= 2.0)
        throw ParameterError(name + ".pathloss_exp must exceed 2 (finite aggregate interference)");
    if (fading.shape < 1)
        throw ParameterError(name + ".fading shape must be a positive integer");
}

const char* band_name(Band b) { return b == Band::LowFrequency ? "low-frequency" : "mmwave"; }

void NetworkParams::validate() const
{
    lf.validate("low_frequency");
    mm.validate("mmwave");
    if (!lf.fading.is_rayleigh())
        throw ParameterError("low_frequency band analysis assumes Rayleigh fading");
    if (!std::isfinite(height) || height <= 0.0)
        throw ParameterError("UAV height must be finite and positive");
    if (!std::isfinite(user_density) || user_density <= 0.0)
        throw ParameterError("user density must be finite and positive");
    if (!(pattern.gain_main > 0.0) || !(pattern.gain_side > 0.0) || !(pattern.bw_azimuth > 0.0) ||
        !(pattern.bw_elevation > 0.0))
        throw ParameterError("antenna pattern gains and beamwidths must be positive");
}

NetworkParams NetworkParams::reference()
{
    NetworkParams p;
    p.lf.carrier_freq = 2e9;
    p.lf.tx_power = dbm_to_watt(30.0);
    p.lf.bandwidth = 20e6;
    p.lf.noise_power = dbm_to_watt(-91.0);
    p.lf.pathloss_exp = 2.5;
    p.lf.uav_density = per_km2(10.0);
    p.lf.fading = Fading::rayleigh();

    p.mm.carrier_freq = 60e9;
    p.mm.tx_power = dbm_to_watt(40.0);
    p.mm.bandwidth = 600e6;
    p.mm.noise_power = dbm_to_watt(-76.0);
    p.mm.pathloss_exp = 3.0;
    p.mm.uav_density = per_km2(500.0);
    p.mm.fading = Fading::nakagami(3);

    p.height = 50.0;
    p.user_density = per_km2(5e4);
    p.pattern = upa_from_count(64);
    p.elevation_model = ElevationModel::NarrowBeam;
    return p;
}

} // namespace uavcre
