#pragma once

#include <cstddef>

namespace levy
{
namespace kernels
{

enum class Isa
{
    scalar,
    avx2
};

// Best ISA supported by both the build and the running CPU
Isa detected_isa();
// ISA used by the dispatching entry points (defaults to detected_isa())
Isa active_isa();
// Override for testing; requests above detected_isa() are clamped
void set_active_isa(Isa isa);
char const* to_string(Isa isa);

// sum_i a[i] b[i]
double dot(double const* a, double const* b, std::size_t n);

/*!
 * Phase sums over a uniform frequency grid tau_k = (k0 + k) delta:
 *
 *   out[j] = sum_k re[k] cos(tau_k t[j]) + im[k] sin(tau_k t[j])
 *
 * i.e. Re sum_k e^{-i tau_k t} (re[k] + i im[k]). Phases advance by complex
 * rotation and are recomputed exactly every few steps to bound drift.
 */
void phase_sum(double const* re,
               double const* im,
               std::size_t n,
               double k0,
               double delta,
               double const* t,
               std::size_t nt,
               double* out);

namespace scalar
{
double dot(double const* a, double const* b, std::size_t n);
void phase_sum(double const* re, double const* im, std::size_t n, double k0,
               double delta, double const* t, std::size_t nt, double* out);
}  // namespace scalar

namespace avx2
{
double dot(double const* a, double const* b, std::size_t n);
void phase_sum(double const* re, double const* im, std::size_t n, double k0,
               double delta, double const* t, std::size_t nt, double* out);
}  // namespace avx2

// Steps between exact phase recomputation
inline constexpr std::size_t kPhaseResync = 64;

}  // namespace kernels
}  // namespace levy
