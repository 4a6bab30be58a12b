#include "uavcre/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavcre/errors.hpp"
#include "uavcre/units.hpp"

namespace uavcre {

namespace {

void check_distance(double d, double h, const char* where)
{
    if (!std::isfinite(d) || !std::isfinite(h) || h <= 0.0)
        throw ParameterError(std::string(where) + ": distance and height must be finite, h > 0");
    if (d < h)
        throw ParameterError(std::string(where) + ": slant distance below UAV height");
}

// Shorter-arc difference of two angles, in [0, pi].
double angle_gap(double a, double b)
{
    double diff = std::fmod(std::abs(a - b), 2.0 * kPi);
    return diff > kPi ? 2.0 * kPi - diff : diff;
}

} // namespace

UpaPattern UpaPattern::uniform(double gain)
{
    if (!(gain > 0.0) || !std::isfinite(gain))
        throw ParameterError("uniform pattern: gain must be positive");
    return {0, 2.0 * kPi, 0.5 * kPi, gain, gain};
}

UpaPattern upa_from_count(int n)
{
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(std::max(n, 0)))));
    if (n < 4 || side * side != n)
        throw ParameterError("UPA antenna count must be a perfect square >= 4, got " +
                             std::to_string(n));
    const double nn = n;
    const double root = std::sqrt(nn);
    const double k = std::sqrt(3.0) / (2.0 * kPi);
    const double s = std::sin(std::sqrt(3.0) / (2.0 * root));
    UpaPattern p;
    p.n_antennas = n;
    p.bw_azimuth = p.bw_elevation = std::sqrt(3.0 / nn);
    p.gain_main = nn;
    p.gain_side = (root - k * nn * s) / (root - k * s);
    return p;
}

double p_elevation(double d, double lambda_m, double h, const UpaPattern& pattern)
{
    check_distance(d, h, "p_elevation");
    const double excess = d * d - h * h;
    const double v = 2.0 * kPi * lambda_m * pattern.bw_elevation * std::exp(-kPi * lambda_m * excess) *
                     d * d * std::sqrt(excess) / h;
    return std::clamp(v, 0.0, 1.0);
}

double p_elevation_cdf(double d, double lambda_m, double h, const UpaPattern& pattern)
{
    check_distance(d, h, "p_elevation_cdf");
    const ServingDistanceDist law{lambda_m, h};
    const double phi0 = std::acos(std::min(1.0, h / d));
    const double lo = std::max(0.0, phi0 - 0.5 * pattern.bw_elevation);
    const double hi = phi0 + 0.5 * pattern.bw_elevation;
    const double upper = hi >= 0.5 * kPi ? 1.0 : law.cdf(h / std::cos(hi));
    return std::clamp(upper - law.cdf(h / std::cos(lo)), 0.0, 1.0);
}

double p_elevation_uniform(const UpaPattern& pattern)
{
    return std::clamp(pattern.bw_elevation / (0.5 * kPi), 0.0, 1.0);
}

double p_elevation(double d, double lambda_m, double h, const UpaPattern& pattern,
                   ElevationModel model)
{
    switch (model) {
    case ElevationModel::NarrowBeam:
        return p_elevation(d, lambda_m, h, pattern);
    case ElevationModel::CdfDifference:
        return p_elevation_cdf(d, lambda_m, h, pattern);
    case ElevationModel::UniformElevation:
        check_distance(d, h, "p_elevation");
        return p_elevation_uniform(pattern);
    }
    throw ParameterError("unknown elevation model");
}

InterfererGainDist interferer_gain_dist(double d, double lambda_m, double h,
                                        const UpaPattern& pattern, ElevationModel model)
{
    const double p_theta = pattern.bw_azimuth / (2.0 * kPi);
    InterfererGainDist g;
    g.p_main = std::clamp(p_theta * p_elevation(d, lambda_m, h, pattern, model), 0.0, 1.0);
    g.p_side = 1.0 - g.p_main;
    g.gain_main = pattern.gain_main;
    g.gain_side = pattern.gain_side;
    return g;
}

bool in_main_lobe(const Point3& uav, const Point2& steer_target, const Point2& probe,
                  const UpaPattern& pattern)
{
    if (!(uav.z > 0.0) || !std::isfinite(uav.x) || !std::isfinite(uav.y) ||
        !std::isfinite(uav.z) || !std::isfinite(steer_target.x) ||
        !std::isfinite(steer_target.y) || !std::isfinite(probe.x) || !std::isfinite(probe.y))
        throw ParameterError("geometric_gain: points must be finite and UAV height positive");

    const double bx = steer_target.x - uav.x, by = steer_target.y - uav.y;
    const double px = probe.x - uav.x, py = probe.y - uav.y;
    const double beam_planar = std::hypot(bx, by);
    const double probe_planar = std::hypot(px, py);
    const double beam_elev = std::atan2(beam_planar, uav.z);
    const double probe_elev = std::atan2(probe_planar, uav.z);

    // A nadir direction has no azimuth; the sector test then reduces to the elevation window.
    if (probe_planar == 0.0)
        return beam_elev <= 0.5 * pattern.bw_elevation;
    if (beam_planar == 0.0)
        return probe_elev <= 0.5 * pattern.bw_elevation;

    if (std::abs(probe_elev - beam_elev) > 0.5 * pattern.bw_elevation)
        return false;
    return angle_gap(std::atan2(py, px), std::atan2(by, bx)) <= 0.5 * pattern.bw_azimuth;
}

double geometric_gain(const Point3& uav, const Point2& steer_target, const Point2& probe,
                      const UpaPattern& pattern)
{
    return in_main_lobe(uav, steer_target, probe, pattern) ? pattern.gain_main : pattern.gain_side;
}

} // namespace uavcre
