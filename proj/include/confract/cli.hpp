#pragma once

// Command-line front end. Exit codes: 0 success, 1 unexpected failure,
// 2 parse, 3 domain or precondition, 4 accuracy or convergence,
// 5 verification failure.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "confract/errors.hpp"

namespace confract::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitAccuracy = 4;
inline constexpr int kExitVerification = 5;

int exit_code(ErrorClass cls);

/// Runs one command line; artifacts go to --out or to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "v" is a single value, "a,b,n" with integer n >= 2 is n evenly spaced
/// values from a to b, anything else with commas is an explicit list.
std::vector<double> parse_grid(const std::string& text);

struct CheckRecord {
    std::string name;
    std::complex<double> lhs;
    std::complex<double> rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

const std::vector<std::string>& suite_names();

/// Runs a named invariant suite. Randomized instances draw from
/// std::mt19937_64 seeded with `seed`. Every tolerance is multiplied by
/// tol_scale.
std::vector<CheckRecord> run_suite(const std::string& name, std::uint64_t seed, double tol_scale = 1.0);

nlohmann::json suite_report(const std::string& name, std::uint64_t seed, const std::vector<CheckRecord>& checks);

}  // namespace confract::cli
