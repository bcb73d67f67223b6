#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "teich/poisson.hpp"
#include "teich/registry.hpp"
#include "teich/rng.hpp"
#include "teich/teich_torus.hpp"
#include "teich/thurston.hpp"

#ifndef TEICH_BUILD_ID
#define TEICH_BUILD_ID "unknown"
#endif

namespace teich::cli {

namespace {

// Parses all of text[begin, end) as a double; positions in errors are absolute.
double parse_real(const std::string& text, std::size_t begin, std::size_t end) {
    if (begin == end) throw ParseError("expected a number", begin);
    double v = 0.0;
    const char* first = text.data() + begin;
    const char* last = text.data() + end;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) throw ParseError("number out of range", begin);
    if (ec != std::errc()) throw ParseError("expected a number", static_cast<std::size_t>(first - text.data()));
    if (ptr != last) throw ParseError("unexpected character", static_cast<std::size_t>(ptr - text.data()));
    if (!std::isfinite(v)) throw ParseError("number must be finite", begin);
    return v;
}

std::int64_t parse_integer(const std::string& text, std::size_t begin, std::size_t end) {
    if (begin == end) throw ParseError("expected an integer", begin);
    std::int64_t v = 0;
    const char* first = text.data() + begin;
    const char* last = text.data() + end;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc()) throw ParseError("expected an integer", static_cast<std::size_t>(first - text.data()));
    if (ptr != last) throw ParseError("unexpected character", static_cast<std::size_t>(ptr - text.data()));
    return v;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

const char* comparison_name(Comparison c) {
    switch (c) {
    case Comparison::abs_diff: return "abs_diff";
    case Comparison::upper_bound: return "upper_bound";
    case Comparison::lower_bound: return "lower_bound";
    }
    return "";
}

std::vector<PlaneFunction> boundary_catalog() {
    std::vector<PlaneFunction> out = families::harmonic_family();
    for (auto& v : families::psh_family()) out.push_back(std::move(v));
    out.push_back(families::poisson_bump());
    return out;
}

PlaneFunction lookup_function(const std::string& name) {
    for (auto& v : boundary_catalog()) {
        if (v.name == name) return v;
    }
    std::string valid;
    for (const auto& v : boundary_catalog()) valid += (valid.empty() ? "" : ", ") + v.name;
    throw std::invalid_argument("unknown function '" + name + "'; valid: " + valid);
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
    return out;
}

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wraps a ParseError with the flag that carried the bad value.
template <class F>
auto parse_flag(const std::string& flag, const std::string& text, F parse) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw UsageError(flag + " '" + text + "': " + e.what());
    } catch (const std::domain_error& e) {
        throw UsageError(flag + " '" + text + "': " + e.what());
    }
}

TorusPoint required_point(const std::string& flag, const std::optional<std::string>& v) {
    if (!v) throw UsageError(flag + " is required");
    return parse_flag(flag, *v, parse_point);
}

ProjectiveClass required_slope(const std::string& flag, const std::optional<std::string>& v) {
    if (!v) throw UsageError(flag + " is required");
    return parse_flag(flag, *v, parse_slope);
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + out + "' for writing");
    f << text;
}

struct EvalArgs {
    std::string quantity;
    std::optional<std::string> x, y, x0, f, u, v;
    std::string method = "closed";
};

std::string eval(const EvalArgs& a) {
    if (a.quantity == "ext") {
        const TorusPoint x = required_point("--x", a.x);
        if (a.f) return format_double(extremal_length(x, parse_flag("--f", *a.f, parse_foliation)));
        return format_double(extremal_length(x, required_slope("--u", a.u)));
    }
    if (a.quantity == "dist") {
        if (a.method != "closed" && a.method != "sup") throw UsageError("--method must be closed or sup");
        const auto m = a.method == "sup" ? DistanceMethod::kerckhoff_sup : DistanceMethod::closed_form;
        return format_double(teich_distance(required_point("--x", a.x), required_point("--y", a.y), m));
    }
    if (a.quantity == "green") {
        const GreenValue g = green(required_point("--x", a.x), required_point("--y", a.y));
        return g.is_pole() ? "-inf" : format_double(g.value());
    }
    if (a.quantity == "kernel") {
        return format_double(
            poisson_kernel(required_point("--x0", a.x0), required_point("--x", a.x), required_slope("--u", a.u))
                .value);
    }
    if (a.quantity == "busemann") {
        return format_double(
            busemann(required_point("--x0", a.x0), required_point("--x", a.x), required_slope("--u", a.u)));
    }
    if (a.quantity == "density") {
        return format_double(BoundaryMeasure(required_point("--x", a.x)).density(required_slope("--u", a.u)));
    }
    if (a.quantity == "poisson-integral") {
        if (!a.v) throw UsageError("--v is required");
        const PlaneFunction v = lookup_function(*a.v);
        const TorusPoint x0 = a.x0 ? required_point("--x0", a.x0) : TorusPoint::square();
        return format_double(poisson_integral(v.trace, x0, required_point("--x", a.x), 1e-12).value.real());
    }
    throw UsageError("unknown quantity '" + a.quantity +
                     "'; valid: ext, dist, green, kernel, busemann, density, poisson-integral");
}

struct TableArgs {
    std::string kind;
    std::optional<std::string> heights, t, u0, u, v, y0, x, w;
    std::string out;
};

std::string schwarz_table(const TableArgs& a) {
    const std::vector<double> heights = parse_flag("--heights", a.heights.value_or(""), parse_list);
    if (heights.empty()) throw UsageError("--heights: empty scan");
    const PlaneFunction v = lookup_function(a.v.value_or("poisson_bump"));
    const ProjectiveClass u0 = a.u0 ? required_slope("--u0", a.u0) : ProjectiveClass(0.0);
    if (u0.is_infinite()) throw UsageError("--u0 must be finite");
    const double v0 = v.trace(u0).real();
    std::vector<std::complex<double>> values;
    try {
        values = schwarz_probe(v.trace, TorusPoint::square(), u0, heights);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::string out = "h,value,boundary_value,gap\n";
    for (std::size_t k = 0; k < heights.size(); ++k) {
        const double p = values[k].real();
        out += format_double(heights[k]) + "," + format_double(p) + "," + format_double(v0) + "," +
               format_double(std::abs(p - v0)) + "\n";
    }
    return out;
}

std::string ray_table(const TableArgs& a) {
    const std::vector<double> ts = parse_flag("--t", a.t.value_or(""), parse_list);
    if (ts.empty()) throw UsageError("--t: empty scan");
    for (double t : ts) {
        if (t < 0.0) throw UsageError("--t: ray times must be nonnegative");
    }
    const TorusPoint y0 = a.y0 ? required_point("--y0", a.y0) : TorusPoint::square();
    const TorusPoint x = a.x ? required_point("--x", a.x) : y0;
    const ProjectiveClass u = a.u ? required_slope("--u", a.u) : ProjectiveClass(2.0);
    const ProjectiveClass w = a.w ? required_slope("--w", a.w) : ProjectiveClass(0.0);
    if (u == w) throw UsageError("--u and --w must differ");
    const double limit = boundary_pairing_bb(y0, u, w);
    std::string out = "t,re,im,distance,green,pairing,limit,gap\n";
    for (double t : ts) {
        const TorusPoint p = teich_ray(x, u, t);
        const double pairing = boundary_pairing(y0, p, w);
        const GreenValue g = green(y0, p);
        out += format_double(t) + "," + format_double(p.re()) + "," + format_double(p.im()) + "," +
               format_double(teich_distance(y0, p)) + "," + (g.is_pole() ? "-inf" : format_double(g.value())) +
               "," + format_double(pairing) + "," + format_double(limit) + "," +
               format_double(std::abs(pairing - limit)) + "\n";
    }
    return out;
}

} // namespace

TorusPoint parse_point(const std::string& text) {
    if (text.empty()) throw ParseError("empty point", 0);
    if (text.back() != 'i') throw ParseError("expected trailing 'i'", text.size() - 1);
    const std::size_t body = text.size() - 1;
    // The imaginary part starts at the last sign that is not an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = body; k-- > 1;) {
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    double re = 0.0;
    std::size_t im_begin = 0;
    if (split != std::string::npos) {
        re = parse_real(text, 0, split);
        im_begin = split;
    }
    double im = 0.0;
    const std::string im_text = text.substr(im_begin, body - im_begin);
    if (im_text.empty() || im_text == "+") {
        im = 1.0;
    } else if (im_text == "-") {
        im = -1.0;
    } else {
        im = parse_real(text, im_begin, body);
    }
    if (!(im > 0.0)) throw ParseError("imaginary part must be positive", im_begin);
    return {re, im};
}

MeasuredFoliation parse_foliation(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("expected 'a,b'", text.size());
    return {parse_real(text, 0, comma), parse_real(text, comma + 1, text.size())};
}

ProjectiveClass parse_slope(const std::string& text) {
    if (text == "inf" || text == "+inf" || text == "-inf" || text == "infinity") return ProjectiveClass::infinity();
    if (const std::size_t slash = text.find('/'); slash != std::string::npos) {
        const std::int64_t p = parse_integer(text, 0, slash);
        const std::int64_t q = parse_integer(text, slash + 1, text.size());
        if (p == 0 && q == 0) throw ParseError("0/0 is not a slope", slash);
        return ProjectiveClass::rational(p, q);
    }
    return ProjectiveClass(parse_real(text, 0, text.size()));
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    if (const std::size_t colon = text.find(':'); colon != std::string::npos) {
        const std::int64_t a = parse_integer(text, 0, colon);
        const std::int64_t b = parse_integer(text, colon + 1, text.size());
        for (std::int64_t k = a; k <= b; ++k) out.push_back(static_cast<double>(k));
        return out;
    }
    std::size_t begin = 0;
    for (;;) {
        const std::size_t end = std::min(text.find(',', begin), text.size());
        out.push_back(parse_real(text, begin, end));
        if (end == text.size()) break;
        begin = end + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_point(const TorusPoint& x) {
    return format_double(x.re()) + "+" + format_double(x.im()) + "i";
}

void RunConfig::validate() const {
    if (tol && !(*tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (n && *n < 1) throw std::invalid_argument("sample count must be at least 1");
    if (base) parse_point(*base);
    if (target) parse_point(*target);
}

bool Report::pass() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

std::string to_json(const Report& r) {
    using nlohmann::ordered_json;
    ordered_json config;
    config["suite"] = r.suite;
    config["seed"] = r.config.seed;
    config["n"] = r.config.n ? ordered_json(*r.config.n) : ordered_json(nullptr);
    config["tol"] = r.config.tol ? ordered_json(*r.config.tol) : ordered_json(nullptr);
    config["base"] = r.config.base ? ordered_json(*r.config.base) : ordered_json(nullptr);
    config["target"] = r.config.target ? ordered_json(*r.config.target) : ordered_json(nullptr);

    ordered_json records = ordered_json::array();
    for (const auto& c : r.records) {
        ordered_json j;
        j["name"] = c.name;
        j["anchor"] = c.anchor;
        j["value"] = c.value;
        j["expected"] = c.expected;
        j["tolerance"] = c.tolerance;
        j["comparison"] = comparison_name(c.comparison);
        j["pass"] = c.pass;
        if (r.config.timings) j["runtime_ms"] = c.runtime_ms;
        records.push_back(std::move(j));
    }

    ordered_json doc;
    doc["schema"] = kReportSchema;
    doc["build"] = TEICH_BUILD_ID;
    doc["rng"] = kRngIdentity;
    doc["command"] = r.config.command;
    doc["config"] = std::move(config);
    doc["records"] = std::move(records);
    doc["pass"] = r.pass();
    return doc.dump(2) + "\n";
}

std::string to_csv(const Report& r) {
    std::string out = "name,anchor,value,expected,tolerance,comparison,pass";
    out += r.config.timings ? ",runtime_ms\n" : "\n";
    for (const auto& c : r.records) {
        out += csv_field(c.name) + "," + csv_field(c.anchor) + "," + format_double(c.value) + "," +
               format_double(c.expected) + "," + format_double(c.tolerance) + "," + comparison_name(c.comparison) +
               "," + (c.pass ? "true" : "false");
        if (r.config.timings) out += "," + format_double(c.runtime_ms);
        out += "\n";
    }
    return out;
}

std::string summary_lines(const Report& r) {
    std::ostringstream out;
    for (const auto& c : r.records) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << ": value " << format_double(c.value) << ", expected "
            << format_double(c.expected) << " (" << comparison_name(c.comparison) << ", tol "
            << format_double(c.tolerance) << ")";
        if (r.config.timings) out << " (" << format_double(c.runtime_ms) << " ms)";
        out << "\n";
    }
    out << (r.pass() ? "PASS" : "FAIL") << " " << r.suite << ": " << r.records.size() << " checks\n";
    return out.str();
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Extremal-length geometry and Poisson-integral checks on the Teichmuller space of the "
                 "once-punctured torus",
                 "teichcheck"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string format = "json";
    std::string exec = "parallel";
    auto* verify = app.add_subcommand("verify", "Run a verification suite and write a report");
    verify->add_option("suite", cfg.suite, "Suite name: " + join(suite_names()))->required();
    verify->add_option("--base", cfg.base, "Base point, e.g. i or 3+0.5i");
    verify->add_option("--target", cfg.target, "Target point (hm-constant)");
    verify->add_option("--n", cfg.n, "Sample count");
    verify->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    verify->add_option("--tol", cfg.tol, "Tolerance override");
    verify->add_option("--out", cfg.out, "Report path; '-' writes the report to stdout");
    verify->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    verify->add_option("--exec", exec, "Kernel execution")->check(CLI::IsMember({"serial", "parallel"}))
        ->capture_default_str();
    verify->add_flag("--timings", cfg.timings, "Record per-check runtimes");

    EvalArgs ev;
    auto* evalc = app.add_subcommand("eval", "Evaluate one quantity at full precision");
    evalc->add_option("quantity", ev.quantity, "ext, dist, green, kernel, busemann, density, poisson-integral")
        ->required();
    evalc->add_option("--x", ev.x, "Point x");
    evalc->add_option("--y", ev.y, "Point y");
    evalc->add_option("--x0", ev.x0, "Base point x0");
    evalc->add_option("--f", ev.f, "Measured foliation a,b");
    evalc->add_option("--u", ev.u, "Slope: 0, 1/2, -0.3, inf");
    evalc->add_option("--v", ev.v, "Registered boundary function");
    evalc->add_option("--method", ev.method, "Distance method: closed or sup")->capture_default_str();

    TableArgs tb;
    auto* table = app.add_subcommand("table", "Write a 1-D parameter scan as CSV");
    table->add_option("kind", tb.kind, "schwarz or ray")->required();
    table->add_option("--heights", tb.heights, "schwarz: comma-separated heights, strictly decreasing");
    table->add_option("--u0", tb.u0, "schwarz: boundary slope");
    table->add_option("--v", tb.v, "schwarz: boundary function");
    table->add_option("--t", tb.t, "ray: times, a:b or comma-separated");
    table->add_option("--y0", tb.y0, "ray: base point of the pairing");
    table->add_option("--x", tb.x, "ray: start point");
    table->add_option("--u", tb.u, "ray: direction slope");
    table->add_option("--w", tb.w, "ray: boundary slope paired against");
    table->add_option("--out", tb.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) {
            const auto& names = suite_names();
            if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) {
                throw UsageError("unknown suite '" + cfg.suite + "'; valid suites: " + join(names));
            }
            try {
                cfg.validate();
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            cfg.format = format == "csv" ? Format::csv : Format::json;
            cfg.exec = exec == "serial" ? Exec::serial : Exec::parallel;
            const Report report = run_suite(cfg);
            const std::string body = cfg.format == Format::csv ? to_csv(report) : to_json(report);
            (cfg.out == "-" ? std::cerr : std::cout) << summary_lines(report);
            if (!cfg.out.empty()) emit(cfg.out, body);
            return report.pass() ? 0 : 1;
        }
        if (*evalc) {
            std::cout << eval(ev) << "\n";
            return 0;
        }
        if (tb.kind != "schwarz" && tb.kind != "ray") throw UsageError("unknown table '" + tb.kind + "'; valid: schwarz, ray");
        emit(tb.out, tb.kind == "schwarz" ? schwarz_table(tb) : ray_table(tb));
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace teich::cli
