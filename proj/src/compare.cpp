#include "levy/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>

#include "levy/asymptotics.hpp"
#include "levy/error.hpp"
#include "levy/oracles.hpp"
#include "levy/saddle.hpp"

namespace levy
{
namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ComparisonRow failed_row(double u, std::string note)
{
    return {u, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, std::move(note)};
}

void finish(ComparisonRow& r, LevyDensitySpec const& spec)
{
    r.rel_err = std::fabs(r.f_asym / r.f_oracle - 1);
    r.scaled_err = spec.classification().theorem == Theorem::thm1 ? r.rel_err * r.u
                                                                   : r.rel_err * std::sqrt(r.u);
    r.tail_rel_err = std::fabs(r.tail_asym / r.tail_oracle - 1);
}

}  // namespace

OracleChoice parse_oracle(std::string const& name)
{
    if (name == "volterra")
        return OracleChoice::volterra;
    if (name == "fourier")
        return OracleChoice::fourier;
    if (name == "auto")
        return OracleChoice::automatic;
    throw DomainError("unknown oracle '" + name + "' (volterra, fourier, auto)");
}

std::vector<ComparisonRow> compare(LevyDensitySpec const& spec, std::span<double const> u_list,
                                   CompareOptions const& opts)
{
    OracleChoice oracle = opts.oracle;
    if (oracle == OracleChoice::automatic)
        oracle = spec.finite_mass() || is_dickman(spec) ? OracleChoice::volterra
                                                         : OracleChoice::fourier;

    std::optional<DensityGrid> grid;
    std::exception_ptr grid_error;
    if (oracle == OracleChoice::volterra)
    {
        double t_max = opts.t_max.value_or(2.0);
        if (!opts.t_max)
        {
            for (double u : u_list)
            {
                try
                {
                    auto const sp = solve_saddle(spec, u);
                    t_max = std::max(t_max, u + 16 * std::sqrt(sp.sigma2));
                }
                catch (Error const&)
                {
                }
            }
            // rows beyond a capped grid fail on their own
            t_max = std::min(t_max, std::floor(kMaxGridPoints) * opts.h);
        }
        try
        {
            grid = volterra_density(spec, t_max, opts.h);
        }
        catch (Error const&)
        {
            grid_error = std::current_exception();
        }
    }

    std::vector<ComparisonRow> rows;
    for (double u : u_list)
    {
        try
        {
            auto const est = density_asymptote(spec, u);
            ComparisonRow r;
            r.u = u;
            r.beta = est.beta;
            r.f_asym = est.f_hat;
            r.tail_asym = est.tail_hat;
            if (oracle == OracleChoice::volterra)
            {
                if (!grid)
                    std::rethrow_exception(grid_error);
                if (u > grid->t_max)
                    throw DomainError("u beyond the oracle grid");
                r.f_oracle = grid->at(u);
                r.oracle_err = grid->error_at(u);
                r.tail_oracle = oracle_tail(*grid, u, spec).value;
            }
            else
            {
                auto const f = fourier_density(spec, u);
                r.f_oracle = f.f;
                r.oracle_err = f.err_bound;
                r.tail_oracle = fourier_tail(spec, u).value;
            }
            finish(r, spec);
            rows.push_back(r);
        }
        catch (Error const& e)
        {
            rows.push_back(failed_row(u, e.what()));
        }
    }
    return rows;
}

void write_comparison_csv(std::ostream& os, std::vector<ComparisonRow> const& rows)
{
    os << "u,beta,f_asym,f_oracle,rel_err,scaled_err,tail_asym,tail_oracle,tail_rel_err,note\n";
    char buf[512];
    double max_scaled = kNaN;
    for (auto const& r : rows)
    {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,",
                      r.u, r.beta, r.f_asym, r.f_oracle, r.rel_err, r.scaled_err, r.tail_asym,
                      r.tail_oracle, r.tail_rel_err);
        os << buf;
        // notes are free text; keep them inside one CSV field
        std::string note = r.note;
        for (auto& c : note)
            if (c == ',' || c == '\n' || c == '"')
                c = ';';
        os << note << '\n';
        if (r.ok() && (std::isnan(max_scaled) || r.scaled_err > max_scaled))
            max_scaled = r.scaled_err;
    }
    std::snprintf(buf, sizeof buf, "%.17g", max_scaled);
    os << "# max_scaled_err=" << buf << '\n';
}

}  // namespace levy
