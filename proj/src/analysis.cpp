#include "uavcre/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uavcre/association.hpp"
#include "uavcre/errors.hpp"
#include "uavcre/parallel.hpp"
#include "uavcre/units.hpp"

namespace uavcre {

namespace {

void check_s_r(double s, double r, double h, const char* where)
{
    if (!std::isfinite(s) || s < 0.0)
        throw ParameterError(std::string(where) + ": s must be finite and non-negative");
    if (!std::isfinite(r) || r < h)
        throw ParameterError(std::string(where) + ": exclusion radius must be finite and >= h");
}

// 1 - (1 + x)^-m without cancellation for small x.
double one_minus_pow_neg(double x, int m) { return -std::expm1(-m * std::log1p(x)); }

// (m)_n, the rising factorial.
double rising_factorial(int m, int n)
{
    double v = 1.0;
    for (int k = 0; k < n; ++k)
        v *= m + k;
    return v;
}

double binomial(int n, int k)
{
    double v = 1.0;
    for (int j = 1; j <= k; ++j)
        v = v * (n - k + j) / j;
    return v;
}

/*
 * Shared core of both bands' interference exponents. `gains(z)` yields the
 * two-point gain law of an interferer at slant distance z.
 */
template <class GainLaw>
double exponent_derivative(int n, double s, double r, const BandConfig& band, int m,
                           GainLaw&& gains, const QuadratureSpec& spec)
{
    const double pk = band.power_const() / m;
    const double alpha = band.pathloss_exp;
    double integral = 0.0;
    if (n == 0) {
        if (s == 0.0)
            return 0.0;
        integral = integrate_semi_infinite(
            [&](double z) {
                const InterfererGainDist g = gains(z);
                const double base = s * pk * std::pow(z, -alpha);
                double acc = g.p_side * one_minus_pow_neg(base * g.gain_side, m);
                if (g.p_main > 0.0)
                    acc += g.p_main * one_minus_pow_neg(base * g.gain_main, m);
                return acc * z;
            },
            r, spec, r);
        return 2.0 * kPi * band.uav_density * integral;
    }
    integral = integrate_semi_infinite(
        [&](double z) {
            const InterfererGainDist g = gains(z);
            const double cz = pk * std::pow(z, -alpha);
            auto term = [&](double gain) {
                const double c = cz * gain;
                return std::pow(c, n) * std::pow(1.0 + s * c, -m - n);
            };
            double acc = g.p_side * term(g.gain_side);
            if (g.p_main > 0.0)
                acc += g.p_main * term(g.gain_main);
            return acc * z;
        },
        r, spec, r);
    const double sign = (n % 2 == 0) ? -1.0 : 1.0;   // -(-1)^n
    return sign * 2.0 * kPi * band.uav_density * rising_factorial(m, n) * integral;
}

auto mm_gain_law(const NetworkParams& p)
{
    return [&p](double z) {
        return interferer_gain_dist(z, p.mm.uav_density, p.height, p.pattern, p.elevation_model);
    };
}

double exponent_lf(double s, double r, const BandConfig& lf, const QuadratureSpec& spec)
{
    const InterfererGainDist omni{0.0, 1.0, 1.0, 1.0};
    return exponent_derivative(0, s, r, lf, lf.fading.shape, [&](double) { return omni; }, spec);
}

// Complete Bell polynomials B_0..B_n of x_1..x_n (x[0] unused).
std::vector<double> bell_polynomials(const std::vector<double>& x, int n)
{
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    b[0] = 1.0;
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j)
            acc += binomial(k, j) * b[k - j] * x[j + 1];
        b[k + 1] = acc;
    }
    return b;
}

} // namespace

double laplace_lf(double s, double r, const BandConfig& lf, const QuadratureSpec& spec)
{
    if (r == std::numeric_limits<double>::infinity())
        return 1.0;
    check_s_r(s, r, 0.0, "laplace_lf");
    return std::exp(-exponent_lf(s, r, lf, spec));
}

double interference_exponent_mm(int n, double s, double r, const NetworkParams& params,
                                const QuadratureSpec& spec)
{
    check_s_r(s, r, params.height, "laplace_mm");
    if (n < 0)
        throw ParameterError("interference exponent: derivative order must be >= 0");
    return exponent_derivative(n, s, r, params.mm, params.mm.fading.shape, mm_gain_law(params), spec);
}

double laplace_mm(double s, double r, const NetworkParams& params, const QuadratureSpec& spec)
{
    if (r == std::numeric_limits<double>::infinity())
        return 1.0;
    return std::exp(-interference_exponent_mm(0, s, r, params, spec));
}

std::vector<double> laplace_mm_derivatives(int max_order, double s, double r,
                                           const NetworkParams& params, const QuadratureSpec& spec)
{
    if (max_order < 0)
        throw ParameterError("laplace derivative order must be >= 0");
    const double value = laplace_mm(s, r, params, spec);
    std::vector<double> x(static_cast<std::size_t>(max_order) + 1, 0.0);
    for (int k = 1; k <= max_order; ++k)
        x[k] = -interference_exponent_mm(k, s, r, params, spec);
    std::vector<double> out = bell_polynomials(x, max_order);
    for (double& v : out)
        v *= value;
    return out;
}

double laplace_mm_derivative(int order, double s, double r, const NetworkParams& params,
                             const QuadratureSpec& spec)
{
    const int m = params.mm.fading.shape;
    if (order < 0 || order > m - 1)
        throw ParameterError("laplace_mm_derivative: order " + std::to_string(order) +
                             " outside [0, m-1] for m = " + std::to_string(m));
    return laplace_mm_derivatives(order, s, r, params, spec)[order];
}

double coverage_lf(double gamma, const NetworkParams& params, const QuadratureSpec& spec)
{
    params.validate();
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ParameterError("coverage_lf: threshold must be finite and positive");
    const ServingDistanceDist law = params.serving(Band::LowFrequency);
    const BandConfig& lf = params.lf;
    const QuadratureSpec inner = spec.inner();
    return integrate_semi_infinite(
        [&](double r) {
            const double f = law.pdf(r);
            if (f == 0.0)
                return 0.0;
            const double u = gamma * std::pow(r, lf.pathloss_exp) / lf.power_const();
            const double noise = std::exp(-lf.noise_power * u);
            if (noise == 0.0)
                return 0.0;
            return noise * laplace_lf(u, r, lf, inner) * f;
        },
        params.height, spec, law.length_scale());
}

double coverage_mm(double gamma, const NetworkParams& params, const QuadratureSpec& spec)
{
    params.validate();
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ParameterError("coverage_mm: threshold must be finite and positive");
    const ServingDistanceDist law = params.serving(Band::MmWave);
    const BandConfig& mm = params.mm;
    const int m = mm.fading.shape;
    const double signal = mm.power_const() * params.pattern.gain_main;
    const QuadratureSpec inner = spec.inner();

    std::vector<double> inv_factorial(static_cast<std::size_t>(m), 1.0);
    for (int k = 1; k < m; ++k)
        inv_factorial[k] = inv_factorial[k - 1] / k;

    return integrate_semi_infinite(
        [&](double r) {
            const double f = law.pdf(r);
            if (f == 0.0)
                return 0.0;
            const double u = gamma * m * std::pow(r, mm.pathloss_exp) / signal;
            const double x = u * mm.noise_power;
            const double noise = std::exp(-x);
            if (noise == 0.0)
                return 0.0;
            const std::vector<double> d = laplace_mm_derivatives(m - 1, u, r, params, inner);
            // (-u)^i L^(i): E[(u I)^i exp(-u I)].
            std::vector<double> moment(d.size());
            double pw = 1.0;
            for (std::size_t i = 0; i < d.size(); ++i) {
                moment[i] = pw * d[i];
                pw *= -u;
            }
            double sum = 0.0;
            for (int k = 0; k < m; ++k) {
                double inner_sum = 0.0;
                for (int i = 0; i <= k; ++i)
                    inner_sum += binomial(k, i) * std::pow(x, k - i) * moment[i];
                sum += inv_factorial[k] * inner_sum;
            }
            return sum * noise * f;
        },
        params.height, spec, law.length_scale());
}

double coverage_total(double gamma, const NetworkParams& params, double beta,
                      const QuadratureSpec& spec)
{
    const double a_m = assoc_prob_mmwave(beta, params, spec);
    double total = 0.0;
    if (a_m < 1.0)
        total += (1.0 - a_m) * coverage_lf(gamma, params, spec);
    if (a_m > 0.0)
        total += a_m * coverage_mm(gamma, params, spec);
    return total;
}

double hamdi_kernel(double z, int m)
{
    if (m < 1)
        throw ParameterError("hamdi_kernel: m must be a positive integer");
    if (!(z >= 0.0))
        throw ParameterError("hamdi_kernel: z must be non-negative");
    if (z == 0.0)
        return m;
    return one_minus_pow_neg(z, m) / z;
}

double se_lf(const NetworkParams& params, const QuadratureSpec& spec)
{
    params.validate();
    const ServingDistanceDist law = params.serving(Band::LowFrequency);
    const BandConfig& lf = params.lf;
    const QuadratureSpec mid = spec.inner();
    const QuadratureSpec deep = mid.inner();
    return integrate_semi_infinite(
        [&](double r) {
            const double f = law.pdf(r);
            if (f == 0.0)
                return 0.0;
            const double scale = std::pow(r, lf.pathloss_exp) / lf.power_const();
            // P(log2(1 + SINR) > t) integrated over t >= 0.
            const double bits = integrate_semi_infinite(
                [&](double t) {
                    const double v = std::expm1(t * std::numbers::ln2) * scale;
                    const double noise = std::exp(-lf.noise_power * v);
                    if (noise == 0.0 || !std::isfinite(v))
                        return 0.0;
                    return noise * laplace_lf(v, r, lf, deep);
                },
                0.0, mid, 1.0);
            return bits * f;
        },
        params.height, spec, law.length_scale());
}

double se_mm(const NetworkParams& params, const QuadratureSpec& spec)
{
    params.validate();
    const ServingDistanceDist law = params.serving(Band::MmWave);
    const BandConfig& mm = params.mm;
    const int m = mm.fading.shape;
    const double signal = mm.power_const() * params.pattern.gain_main;
    const QuadratureSpec mid = spec.inner();
    const QuadratureSpec deep = mid.inner();
    const double nats = integrate_semi_infinite(
        [&](double r) {
            const double f = law.pdf(r);
            if (f == 0.0)
                return 0.0;
            const double scale = m * std::pow(r, mm.pathloss_exp) / signal;
            const double inner = integrate_semi_infinite(
                [&](double z) {
                    const double v = z * scale;
                    const double noise = std::exp(-mm.noise_power * v);
                    if (noise == 0.0 || !std::isfinite(v))
                        return 0.0;
                    return hamdi_kernel(z, m) * laplace_mm(v, r, params, deep) * noise;
                },
                0.0, mid, 1.0);
            return inner * f;
        },
        params.height, spec, law.length_scale());
    return nats / std::numbers::ln2;
}

double per_user_rate(const NetworkParams& params, const BandShares& s, RateModel model)
{
    if (!(s.assoc_mm >= 0.0 && s.assoc_mm <= 1.0))
        throw ParameterError("per_user_rate: association probability outside [0, 1]");
    const double a_lf = 1.0 - s.assoc_mm;
    double load_m = 1.0, load_lf = 1.0;
    if (model == RateModel::LoadShare) {
        if (!(params.user_density > 0.0))
            throw ParameterError("per_user_rate: user density must be positive");
        load_m = std::max(1.0, params.user_density * s.assoc_mm / params.mm.uav_density);
        load_lf = std::max(1.0, params.user_density * a_lf / params.lf.uav_density);
    }
    return s.assoc_mm * params.mm.bandwidth / load_m * s.se_m +
           a_lf * params.lf.bandwidth / load_lf * s.se_lf;
}

double per_user_rate(const NetworkParams& params, double beta, RateModel model,
                     const QuadratureSpec& spec)
{
    BandShares s;
    s.assoc_mm = assoc_prob_mmwave(beta, params, spec);
    s.se_lf = se_lf(params, spec);
    s.se_m = se_mm(params, spec);
    return per_user_rate(params, s, model);
}

MetricSet analytic_metrics(const NetworkParams& params, double beta,
                           std::span<const double> gamma_db, RateModel rate_model,
                           const QuadratureSpec& spec)
{
    MetricSet out;
    out.provenance = Provenance::Analytic;
    out.assoc_mm = assoc_prob_mmwave(beta, params, spec);
    out.se_lf = se_lf(params, spec);
    out.se_m = se_mm(params, spec);
    out.se_total = out.assoc_mm * out.se_m + out.assoc_lf() * out.se_lf;
    out.rate_per_user = per_user_rate(params, {out.assoc_mm, out.se_lf, out.se_m}, rate_model);
    out.coverage.resize(gamma_db.size());
    parallel_for(gamma_db.size(), [&](std::size_t i) {
        const double g = db_to_linear(gamma_db[i]);
        const double p_lf = out.assoc_mm < 1.0 ? coverage_lf(g, params, spec) : 0.0;
        const double p_m = out.assoc_mm > 0.0 ? coverage_mm(g, params, spec) : 0.0;
        out.coverage[i] = {gamma_db[i], out.assoc_lf() * p_lf + out.assoc_mm * p_m};
    });
    return out;
}

std::vector<double> default_gamma_grid_db()
{
    std::vector<double> g;
    for (int db = -10; db <= 20; ++db)
        g.push_back(db);
    return g;
}

} // namespace uavcre
