#pragma once

#include <span>
#include <vector>

#include "levy/density_model.hpp"

namespace levy
{

struct SaddlePoint
{
    double u{0};
    double beta{0};
    double c_at_beta{0};     //!< C(beta)
    double sigma2{0};        //!< C''(beta)
    double beta_prime{0};    //!< 1 / sigma2
    double log_prefactor{0}; //!< C(beta) - u beta
    double log_sigma2{0};
    int iterations{0};
};

inline constexpr double kSaddleBetaFloor = -2048;
inline constexpr double kSaddleTolerance = 1e-11;
inline constexpr int kSaddleMaxIterations = 200;

// Solve C'(beta) = u by bracketed Newton on log C'
SaddlePoint solve_saddle(LevyDensitySpec const& spec, double u);

struct SaddleGrowthRow
{
    double u{0};
    double beta{0};
    double eb_over_u{0};     //!< e^beta / u
    double eb_over_u11{0};   //!< e^beta / u^{1.1}
    double sigma2_over_u{0};
};

std::vector<SaddleGrowthRow> saddle_growth_report(LevyDensitySpec const& spec,
                                                  std::span<double const> u_list);

}  // namespace levy
