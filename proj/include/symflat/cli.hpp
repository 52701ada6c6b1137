#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "symflat/connection.hpp"

namespace symflat::cli {

enum ExitCode { ok = 0, usage_error = 1, check_failed = 2 };

/// Connection document: {"n", "rank", "A": r×r form strings}, or
/// {"n", "rank", "Phi0": r×r rationals, "lambda": "standard"|"symmetric",
///  "gauge": r×r strictly upper triangular function strings} for the flat
/// family g(Φ0 λ)g⁻¹ + g d(g⁻¹). Throws std::invalid_argument or ParseError.
Connection parse_connection(const std::string& json_text);
Connection load_connection(const std::string& path);

/// A JSON report (two-space indented, keys in fixed order) and the exit code
/// it maps to.
struct Report {
  int code = ok;
  std::string json;
};

/// Report builders behind the subcommands. Invalid arguments throw
/// std::invalid_argument; malformed form strings throw ParseError.
Report decompose_report(int n, const std::string& form);
Report flatness_report(const Connection& c, bool require_flat = false);
Report ainfty_report(int n, int trials, std::uint64_t seed, int max_deg, int rank);
Report twist_square_report(const Connection& c, int trials, std::uint64_t seed, int max_deg);
Report cohomology_report(const Connection& c, const std::string& complex, int truncation,
                         const std::vector<int>& margins);
Report cone_verify_report(const Connection& c, int trials, std::uint64_t seed, int max_deg);

/// Runs one subcommand and writes a single JSON document to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace symflat::cli
