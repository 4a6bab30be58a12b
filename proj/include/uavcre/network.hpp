#pragma once

#include <string>

#include "antenna.hpp"
#include "geometry.hpp"

namespace uavcre {

/// Small-scale fading power law: Gamma(shape, 1/shape). Shape 1 is Rayleigh.
struct Fading
{
    int shape = 1;

    static Fading rayleigh() { return {1}; }
    static Fading nakagami(int m) { return {m}; }
    bool is_rayleigh() const { return shape == 1; }
};

/// Radio parameters of one band. All quantities SI (Hz, W, per m^2).
struct BandConfig
{
    double carrier_freq = 0.0;
    double tx_power = 0.0;
    double bandwidth = 0.0;
    double noise_power = 0.0;
    double pathloss_exp = 0.0;
    double uav_density = 0.0;
    Fading fading;

    /// Free-space constant K = (c / (4 pi f_c))^2.
    double pathloss_const() const;
    /// Transmit power times K; received mean power at slant r is this * gain * r^-alpha.
    double power_const() const { return tx_power * pathloss_const(); }
    void validate(const std::string& name) const;
};

enum class Band { LowFrequency, MmWave };

const char* band_name(Band b);

/// Everything that defines the two-band network seen by the typical user.
struct NetworkParams
{
    BandConfig lf;
    BandConfig mm;
    double height = 50.0;          // m
    double user_density = 5e-2;    // per m^2
    UpaPattern pattern;            // mmWave UAV array
    ElevationModel elevation_model = ElevationModel::NarrowBeam;

    void validate() const;

    const BandConfig& band(Band b) const { return b == Band::LowFrequency ? lf : mm; }
    ServingDistanceDist serving(Band b) const { return {band(b).uav_density, height}; }
    /// Serving-link array gain: G_M for mmWave, unity for the omni low band.
    double serving_gain(Band b) const { return b == Band::MmWave ? pattern.gain_main : 1.0; }

    /// Reference parameter set: 2/60 GHz, 30/40 dBm, 20/600 MHz, h = 50 m,
    /// 10 and 500 UAVs/km^2, 5e4 users/km^2, N = 64, -91/-76 dBm noise, exponents 2.5/3, m = 3.
    static NetworkParams reference();
};

} // namespace uavcre
