#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "levy/density_model.hpp"

namespace levy
{

struct SampleBatch
{
    std::size_t n{0};
    std::uint64_t seed{0};
    std::vector<double> values;
    double truncation_bias_bound{0};
    std::string spec_label;
    double beta{0};
    //! Sum of arrivals below the split point (sample_split only)
    std::vector<double> lower;

    double mean() const;
    double variance() const;

    void write_csv(std::ostream& os) const;
};

/*!
 * Arrival sampler for the density proportional to e^{beta x} g(x) on a
 * finite-mass spec: one uniform picks the piece and the position through
 * equal-probability quantile tables, interpolated by cubic Hermite
 * polynomials using the exact density at the knots.
 */
class ArrivalSampler
{
  public:
    static constexpr std::size_t kKnots = 4096;

    ArrivalSampler(LevyDensitySpec const& spec, double beta);

    double mass() const { return mass_; }
    double quantile(double p) const;

  private:
    struct Table
    {
        double lo, hi;
        std::vector<double> q;      //!< quantiles at j / kKnots
        std::vector<double> slope;  //!< dq/dp at the knots
    };
    std::vector<Table> tables_;
    std::vector<double> cum_;  //!< cumulative piece probabilities
    double mass_{0};
};

inline constexpr double kMaxSampledMass = 1e9;

// T_beta by Poisson(lambda_beta) arrivals from e^{beta x} g / lambda_beta
SampleBatch sample_finite(LevyDensitySpec const& spec, double beta, std::size_t n,
                          std::uint64_t seed);

// T for g = 1/x as sum_i e^{-S_i}, truncated below tol and compensated by tol
SampleBatch sample_dickman(std::size_t n, std::uint64_t seed, double tol = 1e-12);

/*!
 * T_beta = T1 + T2, arrivals below and above a. T2 uses sample_finite on the
 * restriction to [a, 1]; T1 thins the dominating intensity L M dx/x on (0, a),
 * L = sup x g(x), M = max(e^{beta a}, 1), and replaces arrivals below tol by
 * their mean.
 */
SampleBatch sample_split(LevyDensitySpec const& spec, double a, double beta, std::size_t n,
                         std::uint64_t seed, double tol = 1e-12);

struct CltDiagnostic
{
    double ks_statistic{0};
    double mean_err{0};   //!< (sample mean - C'(beta)) in standard errors
    double var_ratio{0};  //!< sample variance / C''(beta)
    std::size_t n{0};
};

CltDiagnostic clt_diagnostic(LevyDensitySpec const& spec, double beta, std::size_t n,
                             std::uint64_t seed);

struct GammaTailRow
{
    double t{0};
    double empirical{0};
    double bound{0};  //!< 1 / Gamma(1 + t)
    double std_error{0};
    bool respected{false};
};

std::vector<GammaTailRow> gamma_tail_check(LevyDensitySpec const& spec, std::size_t n,
                                           std::uint64_t seed);

}  // namespace levy
