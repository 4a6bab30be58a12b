#pragma once

#include "geometry.hpp"

namespace uavcre {

/// Sectorized planar-array pattern: gain_main inside a bw_azimuth x bw_elevation
/// window around the steering direction, gain_side everywhere else.
struct UpaPattern
{
    int n_antennas = 0;
    double bw_azimuth = 0.0;    // rad
    double bw_elevation = 0.0;  // rad
    double gain_main = 1.0;
    double gain_side = 1.0;

    /// Degenerate pattern with the same gain in every direction (no beamforming).
    static UpaPattern uniform(double gain = 1.0);
};

/// Square UPA of N half-wavelength-spaced elements: beamwidth sqrt(3/N), G_M = N
/// and the matching side-lobe gain. N must be a perfect square >= 4.
UpaPattern upa_from_count(int n_antennas);

/// Two-point law of the gain an interfering UAV points at the typical user.
struct InterfererGainDist
{
    double p_main = 0.0;
    double p_side = 1.0;
    double gain_main = 1.0;
    double gain_side = 1.0;

    double mean_gain() const { return p_main * gain_main + p_side * gain_side; }
};

/// How the probability that the victim falls inside the elevation beam is modelled.
enum class ElevationModel {
    NarrowBeam,        // closed form after the narrow-beam / mean-value approximation (default)
    CdfDifference,     // exact difference of serving-distance CDFs at the beam edges
    UniformElevation,  // elevation of the steered beam uniform on [0, pi/2)
};

/// P(victim at slant distance d lies in the elevation beam), narrow-beam closed form
/// 2 pi lambda_m bw exp(-pi lambda_m (d^2 - h^2)) d^2 sqrt(d^2 - h^2) / h, clamped to [0, 1].
double p_elevation(double d, double lambda_m, double h, const UpaPattern& pattern);

/// Same probability as F(h / cos(phi0 + bw/2)) - F(h / cos(phi0 - bw/2)), phi0 = acos(h/d),
/// with the beam edges clipped to [0, pi/2).
double p_elevation_cdf(double d, double lambda_m, double h, const UpaPattern& pattern);

/// bw / (pi/2), clamped to [0, 1]; independent of d.
double p_elevation_uniform(const UpaPattern& pattern);

double p_elevation(double d, double lambda_m, double h, const UpaPattern& pattern,
                   ElevationModel model);

InterfererGainDist interferer_gain_dist(double d, double lambda_m, double h,
                                        const UpaPattern& pattern,
                                        ElevationModel model = ElevationModel::NarrowBeam);

/// Gain of a UAV at `uav` (z = height) whose beam is steered at ground point `steer_target`,
/// seen by a ground user at `probe`. Elevation is measured from nadir.
double geometric_gain(const Point3& uav, const Point2& steer_target, const Point2& probe,
                      const UpaPattern& pattern);

/// True iff `probe` is inside the main lobe (the predicate behind geometric_gain).
bool in_main_lobe(const Point3& uav, const Point2& steer_target, const Point2& probe,
                  const UpaPattern& pattern);

} // namespace uavcre
