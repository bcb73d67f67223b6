#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "teich/foliation.hpp"
#include "teich/parallel.hpp"
#include "teich/torus_point.hpp"

namespace teich::cli {

/// Malformed numeric input; `position` is the 0-based character offset of the problem.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// "i", "2i", "3+0.5i", "-1+2e-3i", ...; the imaginary part must be positive.
TorusPoint parse_point(const std::string& text);
/// "a,b".
MeasuredFoliation parse_foliation(const std::string& text);
/// "inf", "p/q" (exact rational) or a decimal slope.
ProjectiveClass parse_slope(const std::string& text);
/// Comma-separated reals; "a:b" expands to the integers a..b.
std::vector<double> parse_list(const std::string& text);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
/// "re+imi" in format_double precision; parse_point reads it back exactly.
std::string format_point(const TorusPoint& x);

enum class Format { json, csv };

struct RunConfig {
    std::string command = "verify";
    std::string suite;
    std::optional<std::string> base;
    std::optional<std::string> target;
    std::optional<std::size_t> n;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::string out;  ///< empty: no report file; "-": stdout
    Format format = Format::json;
    bool timings = false;
    Exec exec = Exec::parallel;

    /// Throws std::invalid_argument when tolerances or sample counts are out of range.
    void validate() const;
};

enum class Comparison { abs_diff, upper_bound, lower_bound };

struct CheckRecord {
    std::string name;
    std::string anchor;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::abs_diff;
    bool pass = false;
    double runtime_ms = 0.0;
};

struct Report {
    std::string suite;
    RunConfig config;
    std::vector<CheckRecord> records;

    bool pass() const;
};

inline constexpr const char* kReportSchema = "teichcheck.report/v1";

const std::vector<std::string>& suite_names();
/// Runs one suite, or every suite for "all". Throws std::invalid_argument for unknown names.
Report run_suite(const RunConfig& cfg);

std::string to_json(const Report& r);
std::string to_csv(const Report& r);
std::string summary_lines(const Report& r);

/// Process entry point; returns the exit code (0 pass, 1 fail, 2 usage error).
int run(int argc, const char* const* argv);

} // namespace teich::cli
