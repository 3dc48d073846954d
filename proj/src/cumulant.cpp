#include "levy/cumulant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "levy/error.hpp"
#include "levy/quadrature.hpp"

namespace levy
{
namespace
{

constexpr double kMaxLog = 709.0;
constexpr double kMinScale = -600.0;

struct Parts
{
    cplx c, dc, d2c, intensity;
    double s{0};
};

Parts evaluate(LevyDensitySpec const& spec, cplx z)
{
    Parts out;
    // Largest exponent of e^{zx} over the support, so the moments stay <= 1.
    // Capped below so that the -1 terms of C do not overflow the mantissa.
    out.s = z.real() >= 0 ? z.real() : std::max(z.real() * spec.support_lo(), kMinScale);
    double const s = out.s;
    double const scale = std::exp(-s);

    std::vector<cplx> m, mx;
    for (auto const& p : spec.pieces())
    {
        double const a = p.lo, b = p.hi;
        std::size_t const deg1 = p.poly.size();  // number of coefficients
        m.assign(std::max<std::size_t>(deg1 + 2, 2), cplx(0));
        scaled_moments(z, a, b, s, m);

        if (p.inv_coeff > 0)
        {
            double const c = p.inv_coeff;
            cplx const fb = entire_expint_scaled(z * b, s);
            cplx const fa = a > 0 ? entire_expint_scaled(z * a, s) : cplx(0);
            out.c += c * (fb - fa);
            out.dc += c * m[0];
            out.d2c += c * m[1];
            if (a > 0)
                out.intensity += c * (fb - fa + scale * std::log(b / a));
        }
        if (deg1 == 0)
            continue;
        mx.assign(deg1, cplx(0));
        scaled_moments_expm1(z, a, b, s, mx);
        for (std::size_t k = 0; k < deg1; ++k)
        {
            double const pk = p.poly[k];
            out.c += pk * mx[k];
            out.intensity += pk * m[k];
            out.dc += pk * m[k + 1];
            out.d2c += pk * m[k + 2];
        }
    }
    if (!spec.finite_mass())
        out.intensity = 0;
    return out;
}

double checked_exp(double mant, double log_scale, char const* what)
{
    if (mant == 0)
        return 0;
    double const lg = std::log(std::fabs(mant)) + log_scale;
    if (lg > kMaxLog)
        throw OverflowError(std::string(what) + " exceeds the double range (log "
                            + std::to_string(lg) + ")");
    return mant * std::exp(log_scale);
}

}  // namespace

double ScaledTriple::log_c1() const
{
    return std::log(c1) + log_scale;
}

double ScaledTriple::log_c2() const
{
    return std::log(c2) + log_scale;
}

double ScaledTriple::log_c0() const
{
    if (!(c0 > 0))
        return std::numeric_limits<double>::quiet_NaN();
    return std::log(c0) + log_scale;
}

CharacteristicParts characteristic_parts(LevyDensitySpec const& spec,
                                         double beta,
                                         double tau)
{
    auto p = evaluate(spec, cplx(beta, std::fabs(tau)));
    if (tau < 0)
        return {std::conj(p.c), std::conj(p.dc), std::conj(p.intensity), p.s};
    return {p.c, p.dc, p.intensity, p.s};
}

ScaledTriple cumulant_triple_scaled(LevyDensitySpec const& spec, double beta)
{
    auto p = evaluate(spec, cplx(beta, 0));
    return {p.c.real(), p.dc.real(), p.d2c.real(), p.s};
}

CumulantTriple cumulant_triple(LevyDensitySpec const& spec, double beta)
{
    auto t = cumulant_triple_scaled(spec, beta);
    return {checked_exp(t.c0, t.log_scale, "C(beta)"),
            checked_exp(t.c1, t.log_scale, "C'(beta)"),
            checked_exp(t.c2, t.log_scale, "C''(beta)")};
}

ComplexCumulant complex_cumulant(LevyDensitySpec const& spec, double beta, double tau)
{
    auto p = characteristic_parts(spec, beta, tau);
    return {checked_exp(p.c.real(), p.log_scale, "Re C(z)"),
            checked_exp(p.c.imag(), p.log_scale, "Im C(z)")};
}

double oscillation_deficit(LevyDensitySpec const& spec, double beta, double tau)
{
    if (tau == 0)
        return 0;
    // int e^{beta x} 2 sin^2(tau x / 2) g(x) dx: positive integrand, so no
    // cancellation between C(beta) and Re C(beta - i tau)
    double const s = std::max(beta, 0.0);
    double const half = 0.5 * tau;
    double total = 0;
    for (auto const& p : spec.pieces())
    {
        auto f = [&](double x) {
            double const sn = std::sin(half * x);
            double const gx = x > 0 ? p(x) : 0;
            double v = 2 * sn * sn * gx;
            if (x == 0 && p.inv_coeff > 0)
                v = 0;
            return std::exp(beta * x - s) * v;
        };
        // Oscillation period sets the initial partition
        int const cells = std::max(1, static_cast<int>(std::ceil(std::fabs(tau) * (p.hi - p.lo))));
        std::vector<double> cuts;
        for (int i = 1; i < cells; ++i)
            cuts.push_back(p.lo + (p.hi - p.lo) * i / cells);
        total += integrate_adaptive(f, p.lo, p.hi, 1e-13, 0, 1 << 14, cuts).value;
    }
    return checked_exp(std::max(total, 0.0), s, "H(tau)");
}

double log_tilted_mass(LevyDensitySpec const& spec, double beta)
{
    if (!spec.finite_mass())
        return std::numeric_limits<double>::infinity();
    auto p = evaluate(spec, cplx(beta, 0));
    return std::log(p.intensity.real()) + p.s;
}

double log_atom_mass(LevyDensitySpec const& spec, double beta)
{
    double const lm = log_tilted_mass(spec, beta);
    if (std::isinf(lm))
        return -std::numeric_limits<double>::infinity();
    if (lm > kMaxLog)
        return -std::numeric_limits<double>::infinity();
    return -std::exp(lm);
}

double atom_mass(LevyDensitySpec const& spec, double beta)
{
    return std::exp(log_atom_mass(spec, beta));
}

}  // namespace levy
