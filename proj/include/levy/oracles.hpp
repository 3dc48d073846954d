#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "levy/density_model.hpp"

namespace levy
{

enum class OracleMethod
{
    volterra,
    fourier,
    delay  //!< Dickman rho from the delay equation
};

char const* to_string(OracleMethod m);

//---------------------------------------------------------------------------//
/*!
 * Density values f(k h), k = 0..t_max/h, with the atom P(T = 0) kept apart.
 *
 * At jumps of g the grid stores right limits. \c errors holds the per-point
 * Richardson estimate and \c err_bound its maximum.
 */
struct DensityGrid
{
    double h{0};
    double t_max{0};
    std::vector<double> values;
    std::vector<double> errors;
    double atom{0};
    OracleMethod method{OracleMethod::volterra};
    double err_bound{0};

    std::size_t size() const { return values.size(); }
    double t(std::size_t k) const { return static_cast<double>(k) * h; }
    //! Linear interpolation; t must lie in [0, t_max]
    double at(double t) const;
    double error_at(double t) const;

    void write_csv(std::ostream& os) const;
};

//! Step size contract shared by the marching oracles
inline constexpr double kMaxStep = 1.0 / 256;
inline constexpr double kStepErrorLimit = 1e-6;
inline constexpr double kMaxGridPoints = 1 << 22;

/*!
 * Forward march of the size-bias identity
 *
 *   t f(t) = P0 t g(t) + int_0^1 z g(z) f(t - z) dz.
 *
 * For finite mass the single-arrival part P0 g is split off exactly and the
 * remainder (two or more arrivals, continuous) is marched with product
 * trapezoid weights. For g = 1/x the seed f = e^{-gamma} on (0, 1] is used.
 * Error estimates come from a second march at step 2h.
 */
DensityGrid volterra_density(LevyDensitySpec const& spec, double t_max, double h);

// Same march without the 2h companion; errors are left at zero
DensityGrid volterra_march(LevyDensitySpec const& spec, double t_max, double h);

// Dickman rho on [0, u_max] from u rho'(u) = -rho(u - 1)
DensityGrid dickman_rho(double u_max, double h);

struct FourierOptions
{
    double tol_rel{1e-6};              //!< of the tilted peak 1/(sqrt(2 pi) sigma)
    std::size_t max_samples{1u << 25};
};

//! Tilted densities f_beta(t) from one inversion at fixed beta
struct TiltedInversion
{
    double beta{0};
    double mean{0};         //!< E T_beta
    double sigma{0};
    double c_at_beta{0};    //!< C(beta), for untilting
    double atom{0};         //!< P(T_beta = 0)
    std::vector<double> t;
    std::vector<double> f;
    std::vector<double> err;
    std::size_t samples{0};
    double tau_max{0};

    //! f(t_i) = e^{C(beta) - beta t_i} f_beta(t_i)
    double untilted(std::size_t i) const;
    double untilted_err(std::size_t i) const;
};

/*!
 * Invert E e^{i tau T_beta} for the continuous part of the tilted density at
 * the points t (all > 0), using the t-weighted transform
 *
 *   int t f_beta(t) e^{i tau t} dt = C'(beta + i tau) e^{C(beta + i tau) - C(beta)}
 *
 * with low arrival counts subtracted for finite mass so the integrand decays
 * like a power of tau. Truncation is certified a posteriori from that decay;
 * TailBoundError is raised when the sample budget runs out first.
 */
TiltedInversion fourier_tilted(LevyDensitySpec const& spec,
                               double beta,
                               std::span<double const> t,
                               FourierOptions const& opts = {});

struct FourierResult
{
    double f{0};
    double err_bound{0};
    double beta{0};
    double f_tilted{0};
    std::size_t samples{0};
};

// f(u) by inversion at the saddle tilt beta(u)
FourierResult fourier_density(LevyDensitySpec const& spec, double u,
                              FourierOptions const& opts = {});

// Untilted f on a set of points from one inversion at tilt beta
std::vector<FourierResult> fourier_density_at(LevyDensitySpec const& spec,
                                              double beta,
                                              std::span<double const> t,
                                              FourierOptions const& opts = {});

// Fourier grid with the same layout as the marching oracles (t >= t_lo only)
DensityGrid fourier_grid(LevyDensitySpec const& spec, double t_lo, double t_max, double h,
                         double beta, FourierOptions const& opts = {});

struct TailValue
{
    double value{0};
    double err_bound{0};
};

/*!
 * P(T >= u) from a density grid: trapezoid on [u, t_max], with the
 * single-arrival part integrated exactly for finite mass. The asymptotic tail
 * beyond t_max goes into the error bound.
 */
TailValue oracle_tail(DensityGrid const& grid, double u, LevyDensitySpec const& spec);

}  // namespace levy

namespace levy
{

// (g * g)(t) and (x g * g)(t), by adaptive quadrature split at the breakpoints
double self_convolution(LevyDensitySpec const& spec, double t, bool size_biased = false);

// atom + integral of the grid density (single arrivals integrated exactly)
TailValue grid_mass(DensityGrid const& grid, LevyDensitySpec const& spec);

// P(T >= u) by integrating the inverted tilted density on [u, u + span sigma]
TailValue fourier_tail(LevyDensitySpec const& spec, double u, double span = 15,
                       FourierOptions const& opts = {});

}  // namespace levy
