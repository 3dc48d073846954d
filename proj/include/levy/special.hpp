#pragma once

#include <complex>
#include <span>

namespace levy
{

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286061;

/*!
 * Scaled entire exponential integral e^{-s} F(w), where
 *
 *   F(w) = int_0^w (e^t - 1)/t dt = sum_{n>=1} w^n / (n n!).
 *
 * F(z x_hi) - F(z x_lo) is the integral of (e^{zx}-1)/x over [x_lo, x_hi].
 * The method is picked by where w sits: power series when it does not
 * cancel, the divergent e^w/w expansion far out along the positive axis, and
 * a continued fraction for E1(-w) elsewhere.
 */
cplx entire_expint_scaled(cplx w, double s = 0);

inline cplx entire_expint(cplx w) { return entire_expint_scaled(w, 0); }

// Exponential integral E1 for complex z off the negative real axis, |z| > 1
cplx expint_e1(cplx z);

/*!
 * Scaled moments e^{-s} int_a^b x^k e^{zx} dx for k = 0..out.size()-1.
 *
 * Uses a power series for small |z| b, the upward recurrence
 * M_k = (b^k e^{zb} - a^k e^{za} - k M_{k-1}) / z when |z| exceeds the top
 * order (where the recurrence is stable), and a 40-point Gauss-Legendre rule
 * otherwise (the integrand is entire and barely oscillates in that regime).
 */
void scaled_moments(cplx z, double a, double b, double s, std::span<cplx> out);

// Same as scaled_moments but for the integrand x^k (e^{zx} - 1)
void scaled_moments_expm1(cplx z, double a, double b, double s, std::span<cplx> out);

// (e^{bx} - 1)/x without cancellation near x = 0
double expm1_over_x(double b, double x);

}  // namespace levy
