#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "levy/compare.hpp"
#include "levy/density_model.hpp"

namespace levy
{

inline constexpr char kToolVersion[] = "0.1.0";

enum ExitCode : int
{
    exit_ok = 0,
    exit_input = 2,
    exit_numeric = 3,
    exit_acceptance = 4
};

// A spec file path, or a builtin name such as dickman or truncated:0.3
LevyDensitySpec load_spec(std::string const& where);

// "# levyasym <version>", the spec hash (when given) and the argument list
void write_csv_header(std::ostream& os, std::string const& args, LevyDensitySpec const* spec);

void cmd_cumulants(std::ostream& os, LevyDensitySpec const& spec, std::span<double const> betas);
//! Returns false when every row failed
bool cmd_compare(std::ostream& os, LevyDensitySpec const& spec, std::span<double const> u_list,
                 CompareOptions const& opts);
void cmd_simulate(std::ostream& os, LevyDensitySpec const& spec, double beta, std::size_t n,
                  std::uint64_t seed, double split = 0.25);
void cmd_rho(std::ostream& os, double u_max, double h);

// Full command line (without the program name); returns the exit code
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace levy
