#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "levy/asymptotics.hpp"
#include "levy/cumulant.hpp"
#include "levy/error.hpp"
#include "levy/kernels.hpp"
#include "levy/oracles.hpp"
#include "levy/parallel.hpp"
#include "levy/quadrature.hpp"
#include "levy/saddle.hpp"
#include "levy/special.hpp"

namespace levy
{
namespace
{

// g with zero outside the support; right limits at breakpoints
double g_or_zero(LevyDensitySpec const& spec, double x)
{
    if (x < spec.support_lo() || x > 1 || x <= 0)
        return 0;
    return eval_g(spec, x);
}

// Interior breakpoints of g (excluding the support ends)
std::vector<double> breakpoints(LevyDensitySpec const& spec)
{
    std::vector<double> b;
    for (std::size_t i = 1; i < spec.pieces().size(); ++i)
        b.push_back(spec.pieces()[i].lo);
    return b;
}

/*!
 * W_j = int_0^1 z g(z) Lambda_j(z) dz for the hat functions of step h,
 * j = 0..m. Exact: x g(x) is a polynomial on each piece.
 */
std::vector<double> hat_weights(LevyDensitySpec const& spec, double h, std::size_t m)
{
    std::vector<double> w(m + 1, 0.0);
    std::size_t max_deg = 0;
    for (auto const& p : spec.pieces())
        max_deg = std::max(max_deg, p.poly.size() + 1);
    auto const& rule = gauss_legendre(static_cast<int>(max_deg / 2 + 2));

    auto integrate = [&](DensityPiece const& p, double a, double b, double cell_lo, std::size_t i) {
        double const mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double left = 0, right = 0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        {
            double const z = mid + half * rule.nodes[q];
            double const v = rule.weights[q] * half * p.xg(z);
            double const frac = (z - cell_lo) / h;
            left += v * (1 - frac);
            right += v * frac;
        }
        w[i] += left;
        if (i + 1 <= m)
            w[i + 1] += right;
    };

    for (std::size_t i = 0; i < m; ++i)
    {
        double const cl = static_cast<double>(i) * h;
        double const cr = std::min(cl + h, 1.0);
        for (auto const& p : spec.pieces())
        {
            double const a = std::max(cl, p.lo), b = std::min(cr, p.hi);
            if (b > a)
                integrate(p, a, b, cl, i);
        }
    }
    return w;
}

struct March
{
    std::vector<double> f;          //!< total density (finite mass: P0 g + cont)
    std::vector<double> continuous; //!< part marched numerically
};

March march(LevyDensitySpec const& spec, double t_max, double h, std::vector<double> const* kernel,
            std::size_t kernel_stride)
{
    std::size_t const n = static_cast<std::size_t>(std::floor(t_max / h + 1e-9)) + 1;
    std::size_t const m = static_cast<std::size_t>(std::ceil(1 / h - 1e-9));
    auto const w = hat_weights(spec, h, m);
    // reversed weights W_m .. W_1 so the convolution is a forward dot product
    std::vector<double> wr(m);
    for (std::size_t i = 0; i < m; ++i)
        wr[i] = w[m - i];

    March out;
    out.f.assign(n, 0.0);
    out.continuous.assign(n, 0.0);
    auto& c = out.continuous;

    if (spec.finite_mass())
    {
        double const p0 = spec.classification().atom_mass_at_beta0;
        for (std::size_t k = 1; k < n; ++k)
        {
            double const tk = static_cast<double>(k) * h;
            double const force = k * kernel_stride < kernel->size() ? p0 * (*kernel)[k * kernel_stride] : 0.0;
            double conv;
            if (k >= m)
                conv = kernels::dot(wr.data(), c.data() + (k - m), m);
            else
                conv = kernels::dot(wr.data() + (m - k), c.data(), k);
            c[k] = std::max(0.0, (force + conv) / (tk - w[0]));
        }
        for (std::size_t k = 0; k < n; ++k)
            out.f[k] = p0 * g_or_zero(spec, static_cast<double>(k) * h) + c[k];
        return out;
    }

    // g = 1/x: f = e^{-gamma} on (0, 1], then t f(t) = int_{t-1}^t f
    double const seed = std::exp(-kEulerGamma);
    for (std::size_t k = 0; k <= std::min(m, n - 1); ++k)
        c[k] = seed;
    for (std::size_t k = m + 1; k < n; ++k)
    {
        double const tk = static_cast<double>(k) * h;
        double const conv = kernels::dot(wr.data(), c.data() + (k - m), m);
        c[k] = std::max(0.0, conv / (tk - w[0]));
    }
    out.f = c;
    return out;
}

void check_march_inputs(LevyDensitySpec const& spec, double t_max, double h)
{
    if (!(h > 0) || h > kMaxStep)
        throw DomainError("step h must lie in (0, 2^-8], got " + std::to_string(h));
    if (!(t_max >= 2))
        throw DomainError("t_max must be at least 2, got " + std::to_string(t_max));
    if (t_max / h > kMaxGridPoints)
        throw DomainError("grid of t_max/h = " + std::to_string(t_max / h)
                          + " points exceeds the limit of 2^22");
    if (!spec.finite_mass() && !is_dickman(spec))
        throw ModeError("the march needs a known seed: only finite mass or g = 1/x; use the "
                        "Fourier oracle for '" + spec.label() + "'");
}

std::vector<double> kernel_table(LevyDensitySpec const& spec, double h)
{
    if (!spec.finite_mass())
        return {};
    // nonzero only on [2 lo, 2]
    std::size_t const nk = static_cast<std::size_t>(std::ceil(2 / h)) + 2;
    std::vector<double> k(nk, 0.0);
    parallel_for(nk, [&](std::size_t i) {
        k[i] = self_convolution(spec, static_cast<double>(i) * h, true);
    });
    return k;
}

}  // namespace

double self_convolution(LevyDensitySpec const& spec, double t, bool size_biased)
{
    double const lo = spec.support_lo();
    double const a = std::max(lo, t - 1), b = std::min(1.0, t - lo);
    if (!(b > a))
        return 0;
    std::vector<double> cuts;
    for (double x : breakpoints(spec))
    {
        cuts.push_back(x);
        cuts.push_back(t - x);
    }
    auto f = [&](double z) {
        double const v = g_or_zero(spec, z) * g_or_zero(spec, t - z);
        return size_biased ? z * v : v;
    };
    return integrate_adaptive(f, a, b, 1e-13, 1e-300, 1 << 14, cuts).value;
}

char const* to_string(OracleMethod m)
{
    switch (m)
    {
        case OracleMethod::fourier:
            return "fourier";
        case OracleMethod::delay:
            return "delay";
        case OracleMethod::volterra:
            break;
    }
    return "volterra";
}

double DensityGrid::at(double t) const
{
    if (values.empty())
        return 0;
    double const x = t / h;
    auto const k = static_cast<std::size_t>(std::clamp(std::floor(x), 0.0, static_cast<double>(size() - 1)));
    if (k + 1 >= size())
        return values.back();
    double const frac = x - static_cast<double>(k);
    return values[k] * (1 - frac) + values[k + 1] * frac;
}

double DensityGrid::error_at(double t) const
{
    if (errors.empty())
        return err_bound;
    auto const k = static_cast<std::size_t>(std::clamp(std::floor(t / h), 0.0, static_cast<double>(size() - 1)));
    if (k + 1 >= size())
        return errors.back();
    return std::max(errors[k], errors[k + 1]);
}

void DensityGrid::write_csv(std::ostream& os) const
{
    os << std::setprecision(17);
    os << "# h=" << h << "\n# atom=" << atom << "\n# method=" << to_string(method)
       << "\n# err_bound=" << err_bound << "\nt,f\n";
    for (std::size_t k = 0; k < size(); ++k)
        os << t(k) << ',' << values[k] << '\n';
}

DensityGrid volterra_march(LevyDensitySpec const& spec, double t_max, double h)
{
    check_march_inputs(spec, t_max, h);
    auto const kern = kernel_table(spec, h);
    auto run = march(spec, t_max, h, &kern, 1);
    DensityGrid grid;
    grid.h = h;
    grid.t_max = static_cast<double>(run.f.size() - 1) * h;
    grid.values = std::move(run.f);
    grid.errors.assign(grid.values.size(), 0.0);
    grid.atom = spec.finite_mass() ? spec.classification().atom_mass_at_beta0 : 0.0;
    grid.method = OracleMethod::volterra;
    return grid;
}

DensityGrid volterra_density(LevyDensitySpec const& spec, double t_max, double h)
{
    check_march_inputs(spec, t_max, h);
    auto const kern = kernel_table(spec, h);
    auto fine = march(spec, t_max, h, &kern, 1);
    auto coarse = march(spec, t_max, 2 * h, &kern, 2);

    DensityGrid grid;
    grid.h = h;
    grid.t_max = static_cast<double>(fine.f.size() - 1) * h;
    grid.atom = spec.finite_mass() ? spec.classification().atom_mass_at_beta0 : 0.0;
    grid.method = OracleMethod::volterra;
    std::size_t const n = fine.f.size();
    grid.errors.assign(n, 0.0);
    for (std::size_t j = 0; 2 * j < n && j < coarse.continuous.size(); ++j)
        grid.errors[2 * j] = std::fabs(fine.continuous[2 * j] - coarse.continuous[j]);
    for (std::size_t k = 1; k < n; k += 2)
    {
        double const right = k + 1 < n ? grid.errors[k + 1] : grid.errors[k - 1];
        grid.errors[k] = std::max(grid.errors[k - 1], right);
    }
    grid.err_bound = *std::max_element(grid.errors.begin(), grid.errors.end());
    grid.values = std::move(fine.f);
    if (grid.err_bound > kStepErrorLimit)
        throw StepError("Richardson estimate " + std::to_string(grid.err_bound)
                        + " exceeds 1e-6; reduce h");
    return grid;
}

namespace
{

std::vector<double> rho_march(double u_max, double h)
{
    std::size_t const m = static_cast<std::size_t>(std::llround(1 / h));
    std::size_t const n = static_cast<std::size_t>(std::floor(u_max / h + 1e-9)) + 1;
    std::vector<double> r(n, 1.0);
    // rho(s - 1) at the cell midpoint between nodes i and i+1, cubic through
    // nodes of the same unit interval (rho has kinks at the integers)
    auto mid_delayed = [&](std::size_t i) {
        std::size_t const cell_lo = (i / m) * m;
        std::size_t const cell_hi = cell_lo + m;
        if (i >= cell_lo + 1 && i + 2 <= cell_hi)
            return (-r[i - 1] + 9 * r[i] + 9 * r[i + 1] - r[i + 2]) / 16;
        if (i < cell_lo + 1)
            return 0.3125 * r[i] + 0.9375 * r[i + 1] - 0.3125 * r[i + 2] + 0.0625 * r[i + 3];
        return 0.0625 * r[i - 2] - 0.3125 * r[i - 1] + 0.9375 * r[i] + 0.3125 * r[i + 1];
    };
    for (std::size_t k = m; k + 1 < n; ++k)
    {
        double const u0 = static_cast<double>(k) * h;
        double const u1 = u0 + h;
        double const q0 = r[k - m] / u0;
        double const qm = mid_delayed(k - m) / (u0 + 0.5 * h);
        double const q1 = r[k + 1 - m] / u1;
        r[k + 1] = r[k] - h / 6 * (q0 + 4 * qm + q1);
    }
    return r;
}

}  // namespace

DensityGrid dickman_rho(double u_max, double h)
{
    if (!(h > 0) || h > kMaxStep)
        throw DomainError("step h must lie in (0, 2^-8], got " + std::to_string(h));
    if (std::fabs(1 / h - std::round(1 / h)) > 1e-9)
        throw DomainError("1/h must be an integer so the kinks at integers sit on the grid");
    if (!(u_max >= 2))
        throw DomainError("u_max must be at least 2, got " + std::to_string(u_max));
    if (u_max / h > kMaxGridPoints)
        throw DomainError("grid of u_max/h = " + std::to_string(u_max / h)
                          + " points exceeds the limit of 2^22");
    DensityGrid grid;
    grid.h = h;
    grid.values = rho_march(u_max, h);
    grid.t_max = static_cast<double>(grid.values.size() - 1) * h;
    grid.method = OracleMethod::delay;
    grid.errors.assign(grid.values.size(), 0.0);
    if (std::fmod(std::round(1 / h), 2.0) == 0 && 2 * h <= kMaxStep * 2)
    {
        auto const coarse = rho_march(u_max, 2 * h);
        std::size_t const n = grid.values.size();
        for (std::size_t j = 0; 2 * j < n && j < coarse.size(); ++j)
            grid.errors[2 * j] = std::fabs(grid.values[2 * j] - coarse[j]);
        for (std::size_t k = 1; k < n; k += 2)
            grid.errors[k] = std::max(grid.errors[k - 1], k + 1 < n ? grid.errors[k + 1] : 0.0);
    }
    grid.err_bound = *std::max_element(grid.errors.begin(), grid.errors.end());
    if (grid.err_bound > kStepErrorLimit)
        throw StepError("Richardson estimate " + std::to_string(grid.err_bound)
                        + " exceeds 1e-6; reduce h");
    return grid;
}

namespace
{

// int_a^1 g exactly (a >= support_lo > 0 or finite-mass spec)
double upper_mass(LevyDensitySpec const& spec, double a)
{
    double total = 0;
    for (auto const& p : spec.pieces())
    {
        double const lo = std::max(a, p.lo), hi = p.hi;
        if (!(hi > lo))
            continue;
        if (p.inv_coeff > 0)
            total += p.inv_coeff * std::log(hi / lo);
        for (std::size_t k = 0; k < p.poly.size(); ++k)
        {
            double const e = static_cast<double>(k + 1);
            total += p.poly[k] * (std::pow(hi, e) - std::pow(lo, e)) / e;
        }
    }
    return total;
}

// Trapezoid of y on [u, t_max] with the given stride (in grid steps)
double trapezoid_from(std::vector<double> const& y, double h, double u, std::size_t stride)
{
    double const H = h * static_cast<double>(stride);
    std::size_t const n = (y.size() - 1) / stride + 1;
    auto node = [&](std::size_t j) { return y[j * stride]; };
    double const x = u / H;
    auto j0 = static_cast<std::size_t>(std::floor(x));
    if (j0 + 1 >= n)
        return 0;
    double const frac = x - static_cast<double>(j0);
    double const yu = node(j0) * (1 - frac) + node(j0 + 1) * frac;
    double s = 0.5 * (yu + node(j0 + 1)) * (1 - frac) * H;
    for (std::size_t j = j0 + 1; j + 1 < n; ++j)
        s += 0.5 * (node(j) + node(j + 1)) * H;
    return s;
}

}  // namespace

TailValue oracle_tail(DensityGrid const& grid, double u, LevyDensitySpec const& spec)
{
    if (!(u >= 0))
        throw DomainError("tail point must be nonnegative, got " + std::to_string(u));
    // below the mean the untilted spread is the relevant scale
    double const beta = u > spec.first_moment() ? solve_saddle(spec, u).beta : 0.0;
    double const sigma = std::sqrt(cumulant_triple(spec, beta).c2);
    if (u > grid.t_max - 10 * sigma)
        throw DomainError("tail at u = " + std::to_string(u) + " needs t_max >= u + 10 sigma = "
                          + std::to_string(u + 10 * sigma));

    bool const split = spec.finite_mass() && grid.method != OracleMethod::delay;
    std::vector<double> y = grid.values;
    double exact = 0;
    if (split)
    {
        double const p0 = grid.atom;
        for (std::size_t k = 0; k < y.size(); ++k)
            y[k] -= p0 * g_or_zero(spec, grid.t(k));
        exact = p0 * upper_mass(spec, std::max(u, spec.support_lo()));
    }
    double const fine = trapezoid_from(y, grid.h, u, 1);
    double const coarse = trapezoid_from(y, grid.h, u, 2);

    double grid_err = 0;
    for (std::size_t k = 0; k < grid.size(); ++k)
        if (grid.t(k) + grid.h >= u)
            grid_err += grid.errors.empty() ? grid.err_bound : grid.errors[k];
    grid_err *= grid.h;

    double remainder = 0;
    if (grid.t_max > spec.first_moment())
        remainder = tail_asymptote(spec, grid.t_max).tail_hat;
    return {exact + fine, std::fabs(fine - coarse) + grid_err + remainder};
}

TailValue grid_mass(DensityGrid const& grid, LevyDensitySpec const& spec)
{
    auto tail = oracle_tail(grid, 0, spec);
    return {grid.atom + tail.value, tail.err_bound};
}

}  // namespace levy
