#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "errors.hpp"

namespace uavcre {

struct QuadratureSpec
{
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;

    void validate() const;

    /// Spec for a nested (inner) integral: one decade tighter.
    QuadratureSpec inner() const
    {
        QuadratureSpec s = *this;
        s.rel_tol /= 10.0;
        s.abs_tol /= 10.0;
        return s;
    }
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    long evaluations = 0;
};

namespace detail {

// 21-point Gauss-Kronrod rule (QUADPACK qk21); Gauss nodes are the odd entries.
inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208292343590, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment
{
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod21(F& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double res_k = fc * kKronrodWeights[10];
    double res_g = 0.0;
    double res_abs = std::abs(res_k);
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double sum = f1[j] + f2[j];
        res_k += kKronrodWeights[j] * sum;
        res_abs += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1)
            res_g += kGaussWeights[j / 2] * sum;
    }
    const double mean = 0.5 * res_k;
    double res_asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j)
        res_asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = res_k * half;
    res_abs *= std::abs(half);
    res_asc *= std::abs(half);
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0)
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * res_abs, err);
    if (!std::isfinite(value) || !std::isfinite(err))
        throw NumericError("non-finite integrand value on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "]",
                           value, err);
    return {a, b, value, err};
}

template <class F>
QuadratureResult adaptive(F& f, double a, double b, const QuadratureSpec& spec, const char* what)
{
    constexpr int kInitial = 4;
    std::priority_queue<Segment> heap;
    double total = 0.0, total_err = 0.0;
    const double step = (b - a) / kInitial;
    for (int i = 0; i < kInitial; ++i) {
        const double lo = a + step * i;
        const double hi = (i + 1 == kInitial) ? b : a + step * (i + 1);
        Segment s = gauss_kronrod21(f, lo, hi);
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }
    int subdivisions = kInitial;
    std::vector<Segment> settled;   // too narrow to split further
    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (total_err > tolerance() && !heap.empty()) {
        if (subdivisions >= spec.max_subdivisions)
            throw NumericError(std::string(what) + ": no convergence after " +
                                   std::to_string(subdivisions) + " subdivisions",
                               total, total_err);
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            std::abs(worst.b - worst.a) < 1e3 * std::numeric_limits<double>::epsilon() *
                                              std::max(std::abs(worst.a), std::abs(worst.b))) {
            settled.push_back(worst);
            if (heap.empty())
                break;
            continue;
        }
        const Segment left = gauss_kronrod21(f, worst.a, mid);
        const Segment right = gauss_kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum to shed the drift of the running totals.
    QuadratureResult out;
    out.subdivisions = subdivisions;
    out.evaluations = 21L * (2L * subdivisions - kInitial);
    while (!heap.empty()) {
        settled.push_back(heap.top());
        heap.pop();
    }
    std::sort(settled.begin(), settled.end(),
              [](const Segment& x, const Segment& y) { return x.a < y.a; });
    for (const Segment& s : settled) {
        out.value += s.value;
        out.error += s.error;
    }
    if (out.error > std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value)) * 1.0001)
        throw NumericError(std::string(what) + ": roundoff limits accuracy", out.value,
                           out.error);
    return out;
}

} // namespace detail

/// Adaptive Gauss-Kronrod integral of `f` over the finite interval [a, b].
template <class F>
QuadratureResult integrate_detailed(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    spec.validate();
    if (!std::isfinite(a) || !std::isfinite(b))
        throw ParameterError("integrate: bounds must be finite");
    if (a == b)
        return {};
    return detail::adaptive(f, a, b, spec, "integrate");
}

template <class F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    return integrate_detailed(std::forward<F>(f), a, b, spec).value;
}

/**
 * Integral of `f` over [lower, inf).
 *
 * The half line is mapped onto (0, 1] by z = lower + scale * (1/u^2 - 1),
 * which turns algebraic tails z^-p into u^(2p-3) and keeps exponential tails
 * smooth. `scale` should be the length over which `f` varies near `lower`;
 * zero picks max(|lower|, 1).
 */
template <class F>
QuadratureResult integrate_semi_infinite_detailed(F&& f, double lower, const QuadratureSpec& spec = {},
                                                  double scale = 0.0)
{
    spec.validate();
    if (!std::isfinite(lower))
        throw ParameterError("integrate_semi_infinite: lower bound must be finite");
    if (scale == 0.0)
        scale = std::max(std::abs(lower), 1.0);
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw ParameterError("integrate_semi_infinite: scale must be positive");
    auto mapped = [&](double u) {
        const double inv = 1.0 / u;
        const double z = lower + scale * (inv * inv - 1.0);
        const double fz = f(z);
        if (fz == 0.0)
            return 0.0;
        return fz * 2.0 * scale * inv * inv * inv;
    };
    return detail::adaptive(mapped, 0.0, 1.0, spec, "integrate_semi_infinite");
}

template <class F>
double integrate_semi_infinite(F&& f, double lower, const QuadratureSpec& spec = {},
                               double scale = 0.0)
{
    return integrate_semi_infinite_detailed(std::forward<F>(f), lower, spec, scale).value;
}

} // namespace uavcre
