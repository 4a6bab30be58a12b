#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "quadrature.hpp"
#include "random.hpp"

namespace uavcre {

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double planar_norm(const Point2& p) { return std::hypot(p.x, p.y); }

/// Slant (3D) distance from a ground point at planar offset `planar` to a UAV at height `h`.
inline double slant_distance(double planar, double h) { return std::sqrt(planar * planar + h * h); }

/// Homogeneous PPP restricted to a disk centred on the origin.
struct Ppp2D
{
    double density = 0.0;        // points per m^2
    double region_radius = 0.0;  // m
    std::uint64_t seed = 0;

    void validate() const;
    double mean_count() const;
};

/// Poisson(density * pi * R^2) i.i.d. uniform points on the disk.
std::vector<Point2> sample_ppp(const Ppp2D& proc, RandomStream& rng);
/// Same, drawing from a stream seeded by `proc.seed`.
std::vector<Point2> sample_ppp(const Ppp2D& proc);

/// Law of the slant distance from the origin to the nearest point of a PPP
/// of UAVs hovering at height h: f(r) = 2 pi lambda r exp(-pi lambda (r^2 - h^2)), r >= h.
class ServingDistanceDist
{
  public:
    ServingDistanceDist(double density, double height);

    double density() const noexcept { return density_; }
    double height() const noexcept { return height_; }

    double pdf(double r) const;
    double cdf(double r) const;
    double survival(double r) const;
    /// Inverse CDF on [0, 1).
    double quantile(double p) const;

    /// Inverse-CDF draw r = sqrt(h^2 - ln(U) / (pi lambda)), U on (0, 1].
    double sample(RandomStream& rng) const;
    double sample_from_uniform(double u) const;

    /// Width of the bulk of r - h; the natural quadrature scale for integrals against pdf().
    double length_scale() const;

  private:
    double density_;
    double height_;
};

double serving_pdf(const ServingDistanceDist& d, double r);
double serving_cdf(const ServingDistanceDist& d, double r);
double sample_serving_distance(const ServingDistanceDist& d, RandomStream& rng);

/// E[R^-alpha] under the serving-distance law, by quadrature.
double mean_inverse_pathloss(const ServingDistanceDist& d, double alpha,
                             const QuadratureSpec& spec = {});

} // namespace uavcre
