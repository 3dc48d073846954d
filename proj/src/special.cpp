#include "levy/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levy/error.hpp"
#include "levy/quadrature.hpp"

namespace levy
{
namespace
{

constexpr double kSeriesLoss = 6;     // max |w| - max(Re w, 0) for the series
constexpr double kSeriesRadius = 60;  // max |w| for the series
constexpr double kAsymptoticRe = 45;  // min Re w for the e^w/w expansion

cplx series(cplx w)
{
    cplx term = 1;  // w^n / n!
    cplx sum = 0;
    double const aw = std::abs(w);
    for (int n = 1; n < 1000; ++n)
    {
        term *= w / static_cast<double>(n);
        cplx const add = term / static_cast<double>(n);
        sum += add;
        if (n > aw && std::abs(add) <= 1e-17 * std::abs(sum))
            return sum;
    }
    throw QuadratureError("entire_expint series did not converge");
}

//! e^{w-s}/w * sum_k k!/w^k, truncated at the smallest term
cplx asymptotic_dominant(cplx w, double s)
{
    cplx sum = 1;
    cplx term = 1;
    double prev = 1;
    for (int k = 1; k < 200; ++k)
    {
        term *= static_cast<double>(k) / w;
        double const mag = std::abs(term);
        if (mag > prev)
            break;
        sum += term;
        if (mag < 1e-17)
            break;
        prev = mag;
    }
    return std::exp(w - s) / w * sum;
}

//! Lentz evaluation of e^{z} E1(z) = 1/(z+1- 1/(z+3- 4/(z+5- ...)))
cplx e1_fraction(cplx z)
{
    constexpr double tiny = 1e-300;
    cplx b = z + 1.0;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 20000; ++i)
    {
        double const an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        cplx const del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return h;
    }
    throw QuadratureError("E1 continued fraction did not converge");
}

}  // namespace

cplx expint_e1(cplx z)
{
    return std::exp(-z) * e1_fraction(z);
}

cplx entire_expint_scaled(cplx w, double s)
{
    double const aw = std::abs(w);
    if (aw == 0)
        return 0;
    double const re = w.real();
    if (aw <= 2 || (aw - std::max(re, 0.0) <= kSeriesLoss && aw <= kSeriesRadius))
        return series(w) * std::exp(-s);

    if (re > kAsymptoticRe)
    {
        // Subdominant constant: only matters off the positive axis, and even
        // there sits below the rounding of e^w/w.
        cplx konst = std::log(w) + kEulerGamma;
        if (std::fabs(w.imag()) > re)
            konst -= cplx(0, std::copysign(std::numbers::pi, w.imag()));
        return asymptotic_dominant(w, s) - konst * std::exp(-s);
    }

    // F(w) = -E1(-w) - log(-w) - gamma with E1(-w) = e^{w} * fraction
    cplx const zeta = -w;
    cplx const frac = e1_fraction(zeta);
    return -std::exp(w - s) * frac - (std::log(zeta) + kEulerGamma) * std::exp(-s);
}

namespace
{
void moment_series(cplx z, double a, double b, double s, int first, std::span<cplx> out)
{
    double const scale = std::exp(-s);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        cplx term = 1;  // z^n / n!
        double pb = std::pow(b, static_cast<double>(k + 1));
        double pa = std::pow(a, static_cast<double>(k + 1));
        cplx sum = first == 0 ? cplx((pb - pa) / static_cast<double>(k + 1)) : cplx(0);
        for (int n = 1; n < 60; ++n)
        {
            term *= z / static_cast<double>(n);
            pb *= b;
            pa *= a;
            cplx const add = term * (pb - pa) / static_cast<double>(n + k + 1);
            sum += add;
            if (std::abs(add) <= 1e-18 * std::abs(sum))
                break;
        }
        out[k] = sum * scale;
    }
}
}  // namespace

void scaled_moments_expm1(cplx z, double a, double b, double s, std::span<cplx> out)
{
    if (std::abs(z) * std::max(std::fabs(a), std::fabs(b)) <= 1)
    {
        moment_series(z, a, b, s, 1, out);
        return;
    }
    scaled_moments(z, a, b, s, out);
    double const scale = std::exp(-s);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        double const e = static_cast<double>(k + 1);
        out[k] -= scale * (std::pow(b, e) - std::pow(a, e)) / e;
    }
}

void scaled_moments(cplx z, double a, double b, double s, std::span<cplx> out)
{
    if (out.empty())
        return;
    std::size_t const kmax = out.size() - 1;
    double const az = std::abs(z);
    double const reach = az * std::max(std::fabs(a), std::fabs(b));

    if (reach <= 1)
    {
        moment_series(z, a, b, s, 0, out);
        return;
    }

    if (az * (b - a) >= 1 && az >= static_cast<double>(kmax + 1))
    {
        cplx const eb = std::exp(z * b - s);
        cplx const ea = std::exp(z * a - s);
        out[0] = (eb - ea) / z;
        double bk = 1, ak = 1;
        for (std::size_t k = 1; k <= kmax; ++k)
        {
            bk *= b;
            ak *= a;
            out[k] = (bk * eb - ak * ea - static_cast<double>(k) * out[k - 1]) / z;
        }
        return;
    }

    auto const& rule = gauss_legendre(40);
    double const mid = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    std::fill(out.begin(), out.end(), cplx(0));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    {
        double const x = mid + half * rule.nodes[i];
        cplx v = rule.weights[i] * half * std::exp(z * x - s);
        for (std::size_t k = 0; k <= kmax; ++k)
        {
            out[k] += v;
            v *= x;
        }
    }
}

double expm1_over_x(double b, double x)
{
    double const bx = b * x;
    if (std::fabs(bx) < 1e-4)
        return b * (1 + bx / 2 * (1 + bx / 3 * (1 + bx / 4)));
    return std::expm1(bx) / x;
}

}  // namespace levy
