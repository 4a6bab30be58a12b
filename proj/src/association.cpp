#include "uavcre/association.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "uavcre/analysis.hpp"
#include "uavcre/errors.hpp"

namespace uavcre {

double bias_factor(double beta0, double growth_alpha, double zeta, double tau)
{
    if (!(beta0 > 1.0) || !std::isfinite(beta0))
        throw ParameterError("bias_factor: beta0 must exceed 1");
    if (!(growth_alpha > 0.0) || !std::isfinite(growth_alpha))
        throw ParameterError("bias_factor: growth rate must be positive");
    if (!(zeta > 0.0) || !std::isfinite(zeta))
        throw ParameterError("bias_factor: zeta must be positive");
    if (!(tau >= 0.0))
        throw ParameterError("bias_factor: tau must be non-negative");
    // exp underflows to 0 for large tau, giving the saturation value exactly.
    return zeta * beta0 / (1.0 + (beta0 - 1.0) * std::exp(growth_alpha * (1.0 - tau)));
}

double zeta(const NetworkParams& params, const QuadratureSpec& spec)
{
    params.validate();
    const double e_lf =
        mean_inverse_pathloss(params.serving(Band::LowFrequency), params.lf.pathloss_exp, spec);
    const double e_m =
        mean_inverse_pathloss(params.serving(Band::MmWave), params.mm.pathloss_exp, spec);
    return params.lf.power_const() * e_lf /
           (params.mm.power_const() * params.pattern.gain_main * e_m);
}

double se_ratio_tau(double se_low, double se_m)
{
    if (!(se_low > 0.0))
        throw NumericError("se_ratio_tau: low-frequency SE is zero (degenerate configuration)",
                           se_low, 0.0);
    return se_m / se_low;
}

double se_ratio_tau(const NetworkParams& params, const QuadratureSpec& spec)
{
    const double low = se_lf(params, spec);
    return se_ratio_tau(low, se_mm(params, spec));
}

CrePolicy::CrePolicy(double beta0, double growth_alpha, double zeta, double tau)
    : beta0_(beta0), growth_(growth_alpha), zeta_(zeta), tau_(tau),
      beta_(bias_factor(beta0, growth_alpha, zeta, tau))
{
}

CrePolicy CrePolicy::from_network(const NetworkParams& params, double beta0, double growth_alpha,
                                  const QuadratureSpec& spec)
{
    return CrePolicy{beta0, growth_alpha, uavcre::zeta(params, spec), se_ratio_tau(params, spec)};
}

AssociationOutcome associate(double dist_lf, double dist_m, double beta, const NetworkParams& params)
{
    if (!(dist_lf >= params.height) || !(dist_m >= params.height))
        throw ParameterError("associate: serving distances must be >= UAV height");
    if (!(beta >= 0.0))
        throw ParameterError("associate: bias must be non-negative");
    const double s_lf = params.lf.power_const() * std::pow(dist_lf, -params.lf.pathloss_exp);
    const double s_m = params.mm.power_const() * params.pattern.gain_main *
                       std::pow(dist_m, -params.mm.pathloss_exp);
    if (std::isinf(beta) || beta * s_m >= s_lf)
        return {Band::MmWave, dist_m};
    return {Band::LowFrequency, dist_lf};
}

double assoc_prob_mmwave(double beta, const NetworkParams& params, const QuadratureSpec& spec)
{
    params.validate();
    if (!(beta > 0.0))
        throw ParameterError("assoc_prob_mmwave: bias must be positive");
    if (std::isinf(beta))
        return 1.0;
    const ServingDistanceDist law_lf = params.serving(Band::LowFrequency);
    const ServingDistanceDist law_m = params.serving(Band::MmWave);
    const double a_lf = params.lf.pathloss_exp;
    const double a_m = params.mm.pathloss_exp;
    const double eta =
        params.lf.power_const() / (beta * params.mm.power_const() * params.pattern.gain_main);
    const double root_eta = std::pow(eta, 1.0 / a_lf);
    const double h = params.height;
    const double v = integrate_semi_infinite(
        [&](double r) {
            const double f = law_m.pdf(r);
            if (f == 0.0)
                return 0.0;
            const double edge = std::max(h, root_eta * std::pow(r, a_m / a_lf));
            return law_lf.survival(edge) * f;
        },
        h, spec, law_m.length_scale());
    return std::clamp(v, 0.0, 1.0);
}

AssociationPolicy AssociationPolicy::parse(const std::string& text)
{
    if (text == "cre")
        return cre();
    if (text == "map")
        return map();
    constexpr std::string_view prefix = "beta=";
    if (text.rfind(prefix, 0) == 0) {
        const std::string_view num = std::string_view(text).substr(prefix.size());
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
        if (ec == std::errc{} && ptr == num.data() + num.size() && v > 0.0)
            return fixed(v);
        if (num == "inf")
            return fixed(std::numeric_limits<double>::infinity());
    }
    throw ParameterError("policy must be 'cre', 'map' or 'beta=<positive float>', got '" + text + "'");
}

std::string AssociationPolicy::to_string() const
{
    switch (kind) {
    case Kind::Cre:
        return "cre";
    case Kind::Map:
        return "map";
    case Kind::FixedBeta:
        return "beta=" + std::to_string(fixed_beta);
    }
    return "?";
}

double AssociationPolicy::beta(double cre_beta) const
{
    switch (kind) {
    case Kind::Cre:
        return cre_beta;
    case Kind::Map:
        return 1.0;
    case Kind::FixedBeta:
        return fixed_beta;
    }
    return 1.0;
}

} // namespace uavcre
