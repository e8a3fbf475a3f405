#pragma once

// Command-line front end: threshold tables, root computations, continuation
// runs and the identity verification suite.  Every command writes CSV (or a
// JSON summary) and reports through the exit codes below.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exle/threshold.hpp"

namespace exle::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kDomainError = 2,
    kIoError = 3,
    kBudgetExhausted = 4,
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 12 significant digits, "." decimal point, no locale.
std::string format_number(double x);

/// Joins formatted fields with commas (no trailing newline).
std::string csv_row(const std::vector<std::string>& fields);

struct RootsOptions {
    double p = 0;
    double theta = 0;
    double tol = kDefaultRootTol;
};

struct GridSpec {
    double min = 0;
    double max = 0;
    double step = 0;

    /// "min:max:step"; throws DomainError unless min < max and step > 0.
    static GridSpec parse(const std::string& text);
    std::vector<double> values() const;
};

struct ThresholdsOptions {
    GridSpec grid;
    double tol = kDefaultRootTol;
    std::string out;  // empty: stdout
    int workers = 0;  // 0: EXLE_NUM_WORKERS or hardware concurrency
};

struct ContinueOptions {
    double p = 0;
    double theta = 0;
    double sigma = 1.0;
    int dim = 3;
    int nodes = 256;
    double tol = 1e-10;
    double bracket_tol = 1e-4;
    int max_steps = 400;      // continuation step budget
    std::optional<double> s;  // energy exponent; default (p+1+s0)/2
    std::string out;          // branch CSV; empty: stdout
    std::string summary;      // summary JSON; empty: <out>.summary.json, or stderr
    bool refine_check = true; // also run nodes/2 for the boundedness flag
};

struct VerifyOptions {
    double p = 0;
    double theta = 0;
    int samples = 100;
    std::uint64_t seed = 0;
    double tamper_l = 0.0;  // added to the linear coefficient of L (negative control)
};

struct PartialOptions {
    double p = 0;
    double theta = 0;
    int dim = 0;
    double tol = kDefaultRootTol;
};

int cmd_roots(const RootsOptions& opts, std::ostream& out, std::ostream& err);
int cmd_thresholds(const ThresholdsOptions& opts, std::ostream& out, std::ostream& err);
int cmd_continue(const ContinueOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_partial(const PartialOptions& opts, std::ostream& out, std::ostream& err);

/// Worker count for parallel sweeps: EXLE_NUM_WORKERS if set and positive,
/// otherwise the number of logical cores.
int default_worker_count();

/// Full entry point: parses `args` (without the program name), merges an
/// optional --config JSON file (flags win, unknown keys rejected) and runs
/// the subcommand.  Never throws; returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace exle::cli
