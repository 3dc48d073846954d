#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace levy
{

//---------------------------------------------------------------------------//
/*!
 * One smooth piece of a Levy density on [lo, hi]:
 *
 *   g(x) = inv_coeff / x + sum_k poly[k] x^k.
 *
 * Note that x g(x) = inv_coeff + x p(x) is a polynomial on every piece, which
 * is what makes the moment integrals and convolution weights closed form.
 */
struct DensityPiece
{
    double lo{0};
    double hi{1};
    double inv_coeff{0};
    std::vector<double> poly;

    double operator()(double x) const;
    double derivative(double x) const;
    //! x * g(x)
    double xg(double x) const;
    //! d/dx (x g(x))
    double xg_derivative(double x) const;

    //! True if the c/x term is singular inside this piece
    bool singular() const { return lo == 0 && inv_coeff > 0; }
};

enum class MassKind
{
    finite,
    infinite
};

enum class Theorem
{
    thm1,     //!< finite mass: O(1/u) density error
    thm2,     //!< infinite mass with bounded x g(x): O(1/sqrt(u))
    rejected  //!< outside the class where the local limit is uniform
};

struct EpsFloor
{
    double eps{0};
    bool verified{false};
};

struct SpecClass
{
    MassKind kind{MassKind::finite};
    Theorem theorem{Theorem::rejected};
    double atom_mass_at_beta0{0};
    std::string diagnostic;
};

//---------------------------------------------------------------------------//
/*!
 * Validated piecewise Levy density on (0, 1].
 *
 * Construct through \c make_spec, \c parse_spec or the builtins; all derived
 * quantities are filled in and the object is immutable afterwards.
 */
class LevyDensitySpec
{
  public:
    std::vector<DensityPiece> const& pieces() const { return pieces_; }
    std::string const& label() const { return label_; }
    double support_lo() const { return pieces_.front().lo; }
    //! lambda = int g; +inf for a singular first piece
    double mass() const { return mass_; }
    double first_moment() const { return first_moment_; }
    double sup_xg() const { return sup_xg_; }
    EpsFloor eps_floor() const { return eps_floor_; }
    SpecClass const& classification() const { return class_; }

    bool finite_mass() const { return class_.kind == MassKind::finite; }
    //! Coefficient of 1/x at the origin (zero for finite mass)
    double singular_coeff() const;

    friend LevyDensitySpec make_spec(std::vector<DensityPiece>, std::string);

  private:
    LevyDensitySpec() = default;

    std::vector<DensityPiece> pieces_;
    std::string label_;
    double mass_{0};
    double first_moment_{0};
    double sup_xg_{0};
    EpsFloor eps_floor_;
    SpecClass class_;
};

// Validate pieces and compute all derived fields
LevyDensitySpec make_spec(std::vector<DensityPiece> pieces, std::string label);

// Parse the JSON density document
LevyDensitySpec parse_spec(std::string_view document);
LevyDensitySpec parse_spec_file(std::string const& path);

// Serialize to the JSON density document (round-trips through parse_spec)
std::string serialize(LevyDensitySpec const& spec);

// Piecewise evaluation; right limits at interior breakpoints
double eval_g(LevyDensitySpec const& spec, double x);

LevyDensitySpec builtin_dickman();
LevyDensitySpec builtin_truncated(double a);
LevyDensitySpec builtin_uniform(double a);
// Builtin by name: "dickman", "truncated:A", "uniform:A"
LevyDensitySpec builtin(std::string_view name);

// Restriction of g to [a, 1] (g set to zero on (0, a))
LevyDensitySpec restrict_to_upper(LevyDensitySpec const& spec, double a);

// True for g = 1/x on (0, 1]
bool is_dickman(LevyDensitySpec const& spec);

// Stable 64-bit FNV-1a hash of the serialized spec
std::uint64_t spec_hash(LevyDensitySpec const& spec);

char const* to_string(Theorem t);

}  // namespace levy
