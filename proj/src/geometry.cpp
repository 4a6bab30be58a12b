#include "uavcre/geometry.hpp"

#include <algorithm>
#include <random>

#include "uavcre/errors.hpp"
#include "uavcre/units.hpp"

namespace uavcre {

void Ppp2D::validate() const
{
    if (!std::isfinite(density) || density <= 0.0)
        throw ParameterError("PPP density must be finite and positive");
    if (!std::isfinite(region_radius) || region_radius <= 0.0)
        throw ParameterError("PPP region radius must be finite and positive");
}

double Ppp2D::mean_count() const { return density * kPi * region_radius * region_radius; }

std::vector<Point2> sample_ppp(const Ppp2D& proc, RandomStream& rng)
{
    proc.validate();
    const auto count = std::poisson_distribution<long>{proc.mean_count()}(rng);
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::vector<Point2> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        const double rho = proc.region_radius * std::sqrt(unit(rng));
        const double phi = 2.0 * kPi * unit(rng);
        pts.push_back({rho * std::cos(phi), rho * std::sin(phi)});
    }
    return pts;
}

std::vector<Point2> sample_ppp(const Ppp2D& proc)
{
    RandomStream rng{proc.seed};
    return sample_ppp(proc, rng);
}

ServingDistanceDist::ServingDistanceDist(double density, double height)
    : density_(density), height_(height)
{
    if (!std::isfinite(density) || density <= 0.0)
        throw ParameterError("serving distance: density must be finite and positive");
    if (!std::isfinite(height) || height < 0.0)
        throw ParameterError("serving distance: height must be finite and non-negative");
}

double ServingDistanceDist::pdf(double r) const
{
    if (r < height_)
        return 0.0;
    return 2.0 * kPi * density_ * r * std::exp(-kPi * density_ * (r * r - height_ * height_));
}

double ServingDistanceDist::survival(double r) const
{
    if (r <= height_)
        return 1.0;
    return std::exp(-kPi * density_ * (r * r - height_ * height_));
}

double ServingDistanceDist::cdf(double r) const
{
    if (r <= height_)
        return 0.0;
    return -std::expm1(-kPi * density_ * (r * r - height_ * height_));
}

double ServingDistanceDist::quantile(double p) const
{
    if (!(p >= 0.0 && p < 1.0))
        throw ParameterError("serving distance quantile: p must lie in [0, 1)");
    return std::sqrt(height_ * height_ - std::log1p(-p) / (kPi * density_));
}

double ServingDistanceDist::sample_from_uniform(double u) const
{
    return std::sqrt(height_ * height_ - std::log(u) / (kPi * density_));
}

double ServingDistanceDist::sample(RandomStream& rng) const
{
    return sample_from_uniform(uniform_open0(rng));
}

double ServingDistanceDist::length_scale() const
{
    // r^2 - h^2 ~ 2h(r - h) near h, so the decay length is the smaller of the two regimes.
    const double unit_disk = 1.0 / std::sqrt(kPi * density_);
    if (height_ <= 0.0)
        return unit_disk;
    return std::min(unit_disk, 1.0 / (2.0 * kPi * density_ * height_));
}

double serving_pdf(const ServingDistanceDist& d, double r) { return d.pdf(r); }
double serving_cdf(const ServingDistanceDist& d, double r) { return d.cdf(r); }
double sample_serving_distance(const ServingDistanceDist& d, RandomStream& rng)
{
    return d.sample(rng);
}

double mean_inverse_pathloss(const ServingDistanceDist& d, double alpha, const QuadratureSpec& spec)
{
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw ParameterError("mean_inverse_pathloss: alpha must be finite and non-negative");
    if (d.height() <= 0.0 && alpha >= 2.0)
        throw ParameterError("mean_inverse_pathloss: E[r^-alpha] diverges for h = 0, alpha >= 2");
    const double lower = d.height();
    return integrate_semi_infinite(
        [&](double r) { return std::pow(r, -alpha) * d.pdf(r); }, lower, spec, d.length_scale());
}

} // namespace uavcre
