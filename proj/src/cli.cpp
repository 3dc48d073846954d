#include "levy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "levy/acceptance.hpp"
#include "levy/cumulant.hpp"
#include "levy/error.hpp"
#include "levy/montecarlo.hpp"
#include "levy/oracles.hpp"

namespace levy
{
namespace
{

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_args(std::vector<std::string> const& args)
{
    std::string s;
    for (auto const& a : args)
    {
        if (!s.empty())
            s += ' ';
        s += a;
    }
    return s;
}

}  // namespace

LevyDensitySpec load_spec(std::string const& where)
{
    if (std::filesystem::is_regular_file(where))
        return parse_spec_file(where);
    if (where == "dickman" || where.find(':') != std::string::npos)
        return builtin(where);
    throw SchemaError("cannot read spec file '" + where + "'");
}

void write_csv_header(std::ostream& os, std::string const& args, LevyDensitySpec const* spec)
{
    os << "# levyasym " << kToolVersion << '\n';
    if (spec)
    {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(spec_hash(*spec)));
        os << "# spec_hash=" << buf << '\n';
    }
    os << "# args=" << args << '\n';
}

void cmd_cumulants(std::ostream& os, LevyDensitySpec const& spec, std::span<double const> betas)
{
    os << "beta,C,C1,C2,atom_mass\n";
    for (double b : betas)
    {
        auto const c = cumulant_triple(spec, b);
        os << fmt(b) << ',' << fmt(c.c0) << ',' << fmt(c.c1) << ',' << fmt(c.c2) << ','
           << fmt(atom_mass(spec, b)) << '\n';
    }
}

bool cmd_compare(std::ostream& os, LevyDensitySpec const& spec, std::span<double const> u_list,
                 CompareOptions const& opts)
{
    auto const rows = compare(spec, u_list, opts);
    write_comparison_csv(os, rows);
    return std::any_of(rows.begin(), rows.end(), [](auto const& r) { return r.ok(); });
}

void cmd_simulate(std::ostream& os, LevyDensitySpec const& spec, double beta, std::size_t n,
                  std::uint64_t seed, double split)
{
    if (spec.finite_mass())
        sample_finite(spec, beta, n, seed).write_csv(os);
    else if (is_dickman(spec) && beta == 0)
        sample_dickman(n, seed).write_csv(os);
    else
        sample_split(spec, split, beta, n, seed).write_csv(os);
}

void cmd_rho(std::ostream& os, double u_max, double h)
{
    dickman_rho(u_max, h).write_csv(os);
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    std::string const arg_line = join_args(args);

    CLI::App app{"Saddle-point asymptotics for sums of Poisson arrivals on (0,1]", "levyasym"};
    app.require_subcommand(1);
    // --h is the step size
    app.set_help_flag("--help", "print help");
    app.set_version_flag("--version", std::string("levyasym ") + kToolVersion);

    std::string spec_where;
    std::vector<double> u_list, beta_list;
    double beta = 0, h = 1.0 / 4096, split = 0.25;
    std::optional<double> t_max;
    std::size_t n = 100000;
    std::uint64_t seed = 42;
    std::string oracle = "auto", out_path;
    std::vector<int> criteria;

    auto* cumulants = app.add_subcommand("cumulants", "C, C', C'' and the atom mass at each beta");
    cumulants->add_option("--spec", spec_where, "spec file or builtin name")->required();
    cumulants->add_option("--beta", beta_list, "tilts")->required()->delimiter(',');

    auto* cmp = app.add_subcommand("compare", "asymptotic density and tail against an oracle");
    cmp->add_option("--spec", spec_where, "spec file or builtin name")->required();
    cmp->add_option("--u", u_list, "evaluation points")->required()->delimiter(',');
    cmp->add_option("--oracle", oracle, "volterra, fourier or auto")
        ->check(CLI::IsMember({"volterra", "fourier", "auto"}));
    cmp->add_option("--h", h, "Volterra step");
    cmp->add_option("--tmax", t_max, "Volterra grid end");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo samples of the tilted arrival sum");
    sim->add_option("--spec", spec_where, "spec file or builtin name")->required();
    sim->add_option("--beta", beta, "tilt");
    sim->add_option("--n", n, "sample count")->check(CLI::PositiveNumber);
    sim->add_option("--seed", seed, "generator seed");
    sim->add_option("--split", split, "split point for infinite mass")
        ->check(CLI::Range(1e-6, 1.0));

    auto* rho = app.add_subcommand("rho", "Dickman rho on a grid");
    double u_max = 10;
    rho->add_option("--tmax", u_max, "grid end");
    rho->add_option("--h", h, "step");

    auto* acc = app.add_subcommand("accept", "run the acceptance suite");
    acc->add_option("--criteria", criteria, "subset of criteria")->delimiter(',');

    for (auto* sub : {cumulants, cmp, sim, rho})
        sub->add_option("--out", out_path, "write the CSV here instead of stdout");

    try
    {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_input;
    }

    try
    {
        if (acc->parsed())
        {
            auto const results = run_acceptance(out, criteria);
            return all_passed(results) ? exit_ok : exit_acceptance;
        }

        std::ostringstream body;
        std::optional<LevyDensitySpec> spec;
        if (!spec_where.empty())
            spec = load_spec(spec_where);

        bool ok = true;
        if (cumulants->parsed())
            cmd_cumulants(body, *spec, beta_list);
        else if (cmp->parsed())
        {
            if (!std::is_sorted(u_list.begin(), u_list.end()))
                throw DomainError("--u must be increasing");
            CompareOptions opts;
            opts.oracle = parse_oracle(oracle);
            opts.h = h;
            opts.t_max = t_max;
            ok = cmd_compare(body, *spec, u_list, opts);
        }
        else if (sim->parsed())
            cmd_simulate(body, *spec, beta, n, seed, split);
        else if (rho->parsed())
            cmd_rho(body, u_max, h);

        std::ostringstream full;
        write_csv_header(full, arg_line, spec ? &*spec : nullptr);
        full << body.str();
        if (out_path.empty())
            out << full.str();
        else
        {
            std::ofstream file(out_path, std::ios::binary);
            if (!file)
                throw SchemaError("cannot write '" + out_path + "'");
            file << full.str();
        }
        if (!ok)
        {
            err << "levyasym: every row failed\n";
            return exit_numeric;
        }
        return exit_ok;
    }
    catch (Error const& e)
    {
        err << "levyasym: " << e.what() << '\n';
        return e.error_class() == ErrorClass::input ? exit_input : exit_numeric;
    }
    catch (std::exception const& e)
    {
        err << "levyasym: " << e.what() << '\n';
        return exit_numeric;
    }
}

}  // namespace levy
