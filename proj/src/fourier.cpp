#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "levy/asymptotics.hpp"
#include "levy/cumulant.hpp"
#include "levy/error.hpp"
#include "levy/kernels.hpp"
#include "levy/oracles.hpp"
#include "levy/parallel.hpp"
#include "levy/saddle.hpp"

namespace levy
{
namespace
{

constexpr std::size_t kChunk = 4096;
constexpr std::size_t kMaxChunksPerRound = 128;

struct Setup
{
    LevyDensitySpec const* spec;
    double beta;
    CharacteristicParts base;
    double lambda;      //!< tilted mass (finite only)
    double log_atom;    //!< -lambda
};

// Integrand of the t-weighted inversion with arrival counts 1..J+1 removed
cplx integrand(Setup const& s, double tau, int J)
{
    auto p = characteristic_parts(*s.spec, s.beta, tau);
    double const scale = std::exp(p.log_scale);
    cplx const psi = p.dc * scale;
    cplx const logphi = (p.c - s.base.c) * scale;
    if (J < 0)
        return psi * std::exp(logphi);

    cplx const Phi = p.intensity * scale;
    if (s.log_atom < -740)
        return psi * std::exp(logphi);
    double const atom = std::exp(s.log_atom);
    cplx rem;
    if (std::abs(Phi) <= 0.5)
    {
        // sum_{n > J} Phi^n / n!
        cplx term = 1;
        for (int n = 1; n <= J; ++n)
            term *= Phi / static_cast<double>(n);
        rem = 0;
        for (int n = J + 1; n < J + 40; ++n)
        {
            term *= Phi / static_cast<double>(n);
            rem += term;
            if (std::abs(term) < 1e-18 * std::abs(rem))
                break;
        }
        rem *= atom;
    }
    else
    {
        cplx partial = 0, term = 1;
        for (int n = 0; n <= J; ++n)
        {
            if (n > 0)
                term *= Phi / static_cast<double>(n);
            partial += term;
        }
        rem = std::exp(logphi) - atom * partial;
    }
    return psi * rem;
}

struct Group
{
    int J;          //!< arrival subtraction order (-1: none)
    double p;       //!< power decay of the integrand
    std::vector<std::size_t> index;
};

}  // namespace

double TiltedInversion::untilted(std::size_t i) const
{
    return std::exp(c_at_beta - beta * t[i]) * f[i];
}

double TiltedInversion::untilted_err(std::size_t i) const
{
    return std::exp(c_at_beta - beta * t[i]) * err[i];
}

TiltedInversion fourier_tilted(LevyDensitySpec const& spec,
                               double beta,
                               std::span<double const> ts,
                               FourierOptions const& opts)
{
    auto const& cls = spec.classification();
    if (cls.theorem == Theorem::rejected)
        throw PreconditionError("no density inversion for '" + spec.label() + "': " + cls.diagnostic);
    bool const finite = spec.finite_mass();
    for (double t : ts)
    {
        if (!(t > 0))
            throw DomainError("inversion points must be positive");
        if (!finite && t < 2)
            throw DomainError("inversion for infinite mass needs t >= 2 (got "
                              + std::to_string(t) + ")");
    }

    Setup s{&spec, beta, characteristic_parts(spec, beta, 0), 0, 0};
    double const base_scale = std::exp(s.base.log_scale);
    auto triple = cumulant_triple_scaled(spec, beta);

    TiltedInversion out;
    out.beta = beta;
    out.mean = triple.c1 * std::exp(triple.log_scale);
    out.sigma = std::exp(0.5 * triple.log_c2());
    out.c_at_beta = triple.c0 * std::exp(triple.log_scale);
    out.t.assign(ts.begin(), ts.end());
    out.f.assign(ts.size(), 0.0);
    out.err.assign(ts.size(), 0.0);
    if (finite)
    {
        s.lambda = s.base.intensity.real() * base_scale;
        s.log_atom = -s.lambda;
        out.atom = std::exp(s.log_atom);
    }
    if (ts.empty())
        return out;

    double const t_hi = *std::max_element(ts.begin(), ts.end());
    double const period = std::max(t_hi + 1, out.mean + 40 * out.sigma + 40);
    double const delta = 2 * std::numbers::pi / period;
    double const tol_abs = opts.tol_rel / (std::sqrt(2 * std::numbers::pi) * out.sigma);
    double const tau_min = std::max(8 * std::sqrt(std::log(1 / opts.tol_rel)) / out.sigma,
                                    std::numbers::pi);

    std::vector<Group> groups;
    if (finite)
    {
        // below t = 2 the one- and two-arrival densities are added back exactly
        for (int J = 1; J <= 2; ++J)
        {
            Group g{J, static_cast<double>(J + 2), {}};
            for (std::size_t i = 0; i < ts.size(); ++i)
            {
                int const want = ts[i] < 3 ? 1 : 2;
                if (want == J)
                    g.index.push_back(i);
            }
            if (!g.index.empty())
                groups.push_back(std::move(g));
        }
    }
    else
    {
        Group g{-1, 1 + spec.singular_coeff(), {}};
        for (std::size_t i = 0; i < ts.size(); ++i)
            g.index.push_back(i);
        groups.push_back(std::move(g));
    }

    for (auto const& g : groups)
    {
        std::vector<double> tg;
        for (auto i : g.index)
            tg.push_back(ts[i]);
        double const t_lo = *std::min_element(tg.begin(), tg.end());
        std::vector<double> sum(tg.size(), 0.0);
        double abs_sum = 0;
        std::size_t used = 0;
        std::size_t per_round = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::ceil(tau_min / delta / kChunk)));
        bool done = false;
        double tail = 0;
        while (!done)
        {
            if (used >= opts.max_samples)
                throw TailBoundError("tilted inversion at beta = " + std::to_string(beta)
                                     + " did not certify its truncation within "
                                     + std::to_string(opts.max_samples) + " samples");
            std::size_t const rounds = std::min(per_round, (opts.max_samples - used) / kChunk + 1);
            std::vector<std::vector<double>> re(rounds), im(rounds), part(rounds);
            std::vector<double> bmax(rounds, 0.0), babs(rounds, 0.0);
            parallel_for(rounds, [&](std::size_t r) {
                std::size_t const k0 = used + r * kChunk;
                re[r].resize(kChunk);
                im[r].resize(kChunk);
                for (std::size_t k = 0; k < kChunk; ++k)
                {
                    double const tau = static_cast<double>(k0 + k) * delta;
                    cplx v = integrand(s, tau, g.J);
                    if (k0 + k == 0)
                        v *= 0.5;
                    re[r][k] = v.real();
                    im[r][k] = v.imag();
                    double const mag = std::abs(v);
                    babs[r] += mag;
                    if (tau > 0)
                        bmax[r] = std::max(bmax[r], mag * std::pow(tau, g.p));
                }
                part[r].resize(tg.size());
                kernels::phase_sum(re[r].data(), im[r].data(), kChunk, static_cast<double>(k0), delta,
                                   tg.data(), tg.size(), part[r].data());
            });
            for (std::size_t r = 0; r < rounds && !done; ++r)
            {
                for (std::size_t j = 0; j < tg.size(); ++j)
                    sum[j] += part[r][j];
                abs_sum += babs[r];
                used += kChunk;
                double const tau_end = static_cast<double>(used) * delta;
                tail = 2 * bmax[r] / ((g.p - 1) * std::pow(tau_end, g.p - 1)) / (std::numbers::pi * t_lo);
                if (tau_end >= tau_min && tail <= tol_abs)
                    done = true;
                if (!std::isfinite(tail))
                    throw TailBoundError("non-finite integrand bound at beta = " + std::to_string(beta));
            }
            per_round = std::min(per_round * 2, kMaxChunksPerRound);
        }
        out.samples = std::max(out.samples, used);
        out.tau_max = std::max(out.tau_max, static_cast<double>(used) * delta);
        for (std::size_t j = 0; j < tg.size(); ++j)
        {
            std::size_t const i = g.index[j];
            double const t = tg[j];
            double f = delta * sum[j] / (std::numbers::pi * t);
            double const rounding = 64 * std::numeric_limits<double>::epsilon() * delta * abs_sum
                                    / (std::numbers::pi * t);
            if (finite && t < 2)
            {
                double const one = t <= 1 && t >= spec.support_lo() ? eval_g(spec, t) : 0.0;
                double const two = 0.5 * self_convolution(spec, t);
                f += std::exp(s.log_atom + beta * t) * (one + two);
            }
            out.f[i] = std::max(f, 0.0);
            out.err[i] = tail * t_lo / t + rounding;
        }
    }
    return out;
}

FourierResult fourier_density(LevyDensitySpec const& spec, double u, FourierOptions const& opts)
{
    if (!spec.finite_mass() && u < 2)
        throw DomainError("Fourier oracle for infinite mass needs u >= 2, got " + std::to_string(u));
    auto const sp = solve_saddle(spec, u);
    double const t[1] = {u};
    auto inv = fourier_tilted(spec, sp.beta, t, opts);
    return {inv.untilted(0), inv.untilted_err(0), sp.beta, inv.f[0], inv.samples};
}

std::vector<FourierResult> fourier_density_at(LevyDensitySpec const& spec,
                                              double beta,
                                              std::span<double const> t,
                                              FourierOptions const& opts)
{
    auto inv = fourier_tilted(spec, beta, t, opts);
    std::vector<FourierResult> out;
    for (std::size_t i = 0; i < t.size(); ++i)
        out.push_back({inv.untilted(i), inv.untilted_err(i), beta, inv.f[i], inv.samples});
    return out;
}

DensityGrid fourier_grid(LevyDensitySpec const& spec, double t_lo, double t_max, double h,
                         double beta, FourierOptions const& opts)
{
    std::size_t const n = static_cast<std::size_t>(std::floor(t_max / h + 1e-9)) + 1;
    std::vector<double> pts;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
    {
        double const t = static_cast<double>(k) * h;
        if (t >= t_lo && t > 0)
        {
            pts.push_back(t);
            idx.push_back(k);
        }
    }
    auto res = fourier_density_at(spec, beta, pts, opts);
    DensityGrid grid;
    grid.h = h;
    grid.t_max = static_cast<double>(n - 1) * h;
    grid.values.assign(n, std::numeric_limits<double>::quiet_NaN());
    grid.errors.assign(n, std::numeric_limits<double>::quiet_NaN());
    grid.atom = spec.finite_mass() ? spec.classification().atom_mass_at_beta0 : 0.0;
    grid.method = OracleMethod::fourier;
    for (std::size_t j = 0; j < idx.size(); ++j)
    {
        grid.values[idx[j]] = res[j].f;
        grid.errors[idx[j]] = res[j].err_bound;
        grid.err_bound = std::max(grid.err_bound, res[j].err_bound);
    }
    return grid;
}

TailValue fourier_tail(LevyDensitySpec const& spec, double u, double span, FourierOptions const& opts)
{
    auto const sp = solve_saddle(spec, u);
    if (!(sp.beta > 0))
        throw DomainError("Fourier tail needs u above the mean");
    double const sigma = std::sqrt(sp.sigma2);
    // e^{-beta (t - u)} f_beta(t) on [u, u + span sigma], Simpson with a
    // step resolving both the Gaussian scale and the exponential decay
    double const len = span * sigma;
    double const step0 = std::min(sigma / 32, 1 / (16 * sp.beta));
    std::size_t cells = static_cast<std::size_t>(std::ceil(len / step0));
    cells = (cells + 3) / 4 * 4;
    double const step = len / static_cast<double>(cells);
    std::vector<double> pts(cells + 1);
    for (std::size_t j = 0; j <= cells; ++j)
        pts[j] = u + static_cast<double>(j) * step;
    auto inv = fourier_tilted(spec, sp.beta, pts, opts);
    double s = 0, e = 0, s2 = 0;
    for (std::size_t j = 0; j <= cells; ++j)
    {
        double const w = (j == 0 || j == cells) ? 1 : (j % 2 ? 4 : 2);
        double const damp = std::exp(-sp.beta * (pts[j] - u));
        s += w * damp * inv.f[j];
        e += w * damp * inv.err[j];
        if (j % 2 == 0)
        {
            double const w2 = (j == 0 || j == cells) ? 1 : ((j / 2) % 2 ? 4 : 2);
            s2 += w2 * damp * inv.f[j];
        }
    }
    s *= step / 3;
    e *= step / 3;
    s2 *= 2 * step / 3;
    double const pref = std::exp(sp.c_at_beta - sp.beta * u);
    // beyond the window: f_beta <= its value at the end, times the damped length
    double const beyond = inv.f[cells] * std::exp(-sp.beta * len) / sp.beta;
    double const simpson_err = std::fabs(s - s2);
    return {pref * s, pref * (e + simpson_err + beyond)};
}

}  // namespace levy
