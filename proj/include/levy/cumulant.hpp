#pragma once

#include "levy/density_model.hpp"
#include "levy/special.hpp"

namespace levy
{

struct CumulantTriple
{
    double c0{0};  //!< C(beta)
    double c1{0};  //!< C'(beta) = E T_beta
    double c2{0};  //!< C''(beta) = Var T_beta
};

//! Triple carried as mantissas times e^{log_scale}
struct ScaledTriple
{
    double c0{0};
    double c1{0};
    double c2{0};
    double log_scale{0};

    double log_c1() const;
    double log_c2() const;
    //! log C(beta); only defined for beta > 0 where C > 0
    double log_c0() const;
};

using ComplexCumulant = cplx;

//---------------------------------------------------------------------------//
/*!
 * Everything the Fourier inversion needs at z = beta + i tau, scaled by
 * e^{-max(beta, 0)}:
 *
 *   c         = C(z)     = int (e^{zx} - 1) g
 *   dc        = C'(z)    = int x e^{zx} g
 *   intensity = Phi(z)   = int e^{zx} g        (finite mass only, else 0)
 */
struct CharacteristicParts
{
    cplx c;
    cplx dc;
    cplx intensity;
    double log_scale{0};
};

CharacteristicParts characteristic_parts(LevyDensitySpec const& spec,
                                         double beta,
                                         double tau);

ScaledTriple cumulant_triple_scaled(LevyDensitySpec const& spec, double beta);

// Throws OverflowError when a component leaves the double range
CumulantTriple cumulant_triple(LevyDensitySpec const& spec, double beta);

// C(beta + i tau); conjugate symmetric by construction
ComplexCumulant complex_cumulant(LevyDensitySpec const& spec, double beta, double tau);

// H(tau) = C(beta) - Re C(beta - i tau) >= 0
double oscillation_deficit(LevyDensitySpec const& spec, double beta, double tau);

// log int e^{beta x} g(x) dx (+inf for infinite mass)
double log_tilted_mass(LevyDensitySpec const& spec, double beta);

// P(T_beta = 0) = exp(-int e^{beta x} g)
double atom_mass(LevyDensitySpec const& spec, double beta);
double log_atom_mass(LevyDensitySpec const& spec, double beta);

}  // namespace levy
