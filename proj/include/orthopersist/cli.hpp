#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace orthopersist::cli {

enum class Command { det, mgf, dist, allreal, theta, hilbert, mc, walk, kac, sweep };
enum class Format { csv, json };

struct RunConfig {
    Command command = Command::det;
    std::vector<int> n_values = {1};  // from --n "a" | "a:b:x2" | "a:b:+k"
    int ell = 1;
    double s = 0.0;
    double alpha = 1.0;
    long samples = 100000;
    uint64_t seed = 1;
    std::string out_path; // empty: stdout
    Format format = Format::csv;
    bool fit = false;
    // command-specific extras
    bool mc_dist = false;        // mc: emit the full histogram
    bool kac_persistence = false; // kac: persistence fraction instead of mean count
    double x = 1.0;              // hilbert: evaluation point
    std::vector<int> l_values = {0}; // hilbert: polynomial degrees
    double bandwidth = 0.05;     // walk
    std::string sweep_command = "det";
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;
};

/// Ordinary least squares y = slope*x + intercept; residual is the RMS
/// fit error. Throws DegenerateAbscissae for < 3 points or equal x's.
FitResult fit_slope(const std::vector<std::pair<double, double>>& points);

/// Parse "a", "a:b:x2" (geometric) or "a:b:+k" (arithmetic) into a grid.
std::vector<int> parse_range(const std::string& text);

/// Parse a JSON config object (the same schema the JSON output embeds
/// under "meta").
RunConfig config_from_json(const std::string& json_text);

std::string config_to_json(const RunConfig& config);

/// Execute a configured run, writing CSV or JSON to `out`.
/// Returns the process exit code (0 ok; 2 domain error; 3 numerical).
int run(const RunConfig& config, std::ostream& out);

/// argv-level entry point used by the binary and by tests:
/// maps flags to RunConfig, dispatches, writes to --out or stdout.
/// Returns the exit code (64 on usage errors).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace orthopersist::cli
