#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using namespace teich;
using namespace teich::cli;

namespace {

struct Captured {
    int code;
    std::string out;
    std::string err;
};

Captured invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "teichcheck");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    auto* old_out = std::cout.rdbuf(out.rdbuf());
    auto* old_err = std::cerr.rdbuf(err.rdbuf());
    const int code = run(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return {code, out.str(), err.str()};
}

std::size_t position_of(const std::string& text) {
    try {
        parse_point(text);
    } catch (const ParseError& e) {
        return e.position();
    }
    return std::string::npos;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

} // namespace

TEST_CASE("point parsing") {
    CHECK(parse_point("i").z() == std::complex<double>(0, 1));
    CHECK(parse_point("2i").z() == std::complex<double>(0, 2));
    CHECK(parse_point("3+0.5i").z() == std::complex<double>(3, 0.5));
    CHECK(parse_point("-1+2e-3i").z() == std::complex<double>(-1, 2e-3));
    CHECK(parse_point("1e-2+1E+1i").z() == std::complex<double>(0.01, 10));
    CHECK_THROWS_AS(parse_point("3-0.5i"), ParseError);
    CHECK_THROWS_AS(parse_point("3+0.5"), ParseError);
    CHECK_THROWS_AS(parse_point(""), ParseError);
    CHECK(position_of("3+0.5x") != std::string::npos);
    CHECK(position_of("1+zi") == 2);

    const TorusPoint x(-0.1, 0.7);
    CHECK(parse_point(format_point(x)).z() == x.z());
}

TEST_CASE("foliation, slope and list parsing") {
    const MeasuredFoliation f = parse_foliation("1,0");
    CHECK(f.a() == 1.0);
    CHECK(f.b() == 0.0);
    CHECK_THROWS_AS(parse_foliation("1;0"), ParseError);
    CHECK_THROWS_AS(parse_foliation("1,"), ParseError);

    CHECK(parse_slope("inf").is_infinite());
    CHECK(parse_slope("1/2").slope() == 0.5);
    CHECK(parse_slope("-0.3").slope() == -0.3);
    CHECK_THROWS_AS(parse_slope("1/0x"), ParseError);

    CHECK(parse_list("1,0.1,0.01") == std::vector<double>{1, 0.1, 0.01});
    CHECK(parse_list("1:4") == std::vector<double>{1, 2, 3, 4});
    CHECK_THROWS_AS(parse_list("1,,2"), ParseError);
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.1");
    for (double v : {1.0 / 3.0, 2.0 / 7.0, 1e-300, -123456.789}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("config validation") {
    RunConfig c;
    c.suite = "minsky";
    CHECK_NOTHROW(c.validate());
    c.tol = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.tol.reset();
    c.n = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.n.reset();
    c.suite = "bogus";
    CHECK_THROWS_AS(run_suite(c), std::invalid_argument);
    CHECK(suite_names().size() == 13);
}

TEST_CASE("eval examples") {
    CHECK(invoke({"eval", "kernel", "--x0", "i", "--x", "2i", "--u", "0"}).out == "0.5\n");
    CHECK(invoke({"eval", "dist", "--x", "i", "--y", "2i"}).out == "0.34657359027997264\n");
    CHECK(invoke({"eval", "ext", "--x", "i", "--f", "1,0"}).out == "1\n");
    CHECK(invoke({"eval", "green", "--x", "i", "--y", "i"}).out == "-inf\n");
    const auto sup = invoke({"eval", "dist", "--x", "i", "--y", "2i", "--method", "sup"});
    CHECK(std::abs(std::stod(sup.out) - 0.34657359027997264) <= 1e-9);
}

TEST_CASE("usage errors exit 2") {
    CHECK(invoke({"verify", "bogus"}).code == 2);
    CHECK(invoke({"verify", "bogus"}).err.find("kernel-transport") != std::string::npos);
    CHECK(invoke({"eval", "kernel", "--x0", "i", "--x", "2j", "--u", "0"}).code == 2);
    CHECK(invoke({"eval", "kernel", "--x0", "i", "--x", "2j", "--u", "0"}).err.find("position") != std::string::npos);
    CHECK(invoke({"eval", "nonsense"}).code == 2);
    CHECK(invoke({"table", "schwarz", "--heights", ""}).code == 2);
    CHECK(invoke({"verify", "minsky", "--n", "0"}).code == 2);
    CHECK(invoke({"verify", "minsky", "--tol", "-1"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("verify examples") {
    const auto hm = invoke({"verify", "hm-constant", "--base", "i", "--target", "2i", "--out", "-"});
    CHECK(hm.code == 0);
    const auto j = nlohmann::json::parse(hm.out);
    CHECK(j["schema"] == kReportSchema);
    CHECK(j["pass"] == true);
    REQUIRE(j["records"].size() == 1);
    CHECK(std::abs(j["records"][0]["value"].get<double>() - 1.0) <= 1e-10);
    CHECK_FALSE(j["records"][0].contains("runtime_ms"));

    const auto kt = invoke({"verify", "kernel-transport", "--n", "100000", "--seed", "7"});
    CHECK(kt.code == 0);
    CHECK(kt.out.find("PASS") != std::string::npos);
}

TEST_CASE("a failing check exits 1") {
    // a tolerance below rounding level cannot hold for the transport sweep
    CHECK(invoke({"verify", "kernel-transport", "--n", "100000", "--tol", "1e-300"}).code == 1);
}

TEST_CASE("identical configs give byte-identical reports") {
    const std::vector<std::string> args{"verify", "minsky", "--n", "20000", "--seed", "5", "--out", "-"};
    const auto a = invoke(args), b = invoke(args);
    CHECK(a.out == b.out);
    auto serial = args;
    serial.insert(serial.end(), {"--exec", "serial"});
    CHECK(invoke(serial).out == a.out);
    auto other = args;
    other[5] = "6";
    CHECK(invoke(other).out != a.out);
}

TEST_CASE("csv report and file output") {
    const auto path = std::filesystem::temp_directory_path() / "teichcheck_test_report.csv";
    const auto r = invoke({"verify", "cr", "--format", "csv", "--out", path.string()});
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto rows = lines(ss.str());
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0].rfind("name,", 0) == 0);
    CHECK(ss.str().find('\r') == std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("tables") {
    const auto s = invoke({"table", "schwarz", "--heights", "1,0.1,0.01,0.001"});
    CHECK(s.code == 0);
    const auto rows = lines(s.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "h,value,boundary_value,gap");
    double prev = INFINITY;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double gap = std::stod(rows[k].substr(rows[k].rfind(',') + 1));
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev <= 1e-3);

    const auto r = invoke({"table", "ray", "--t", "1:20"});
    CHECK(r.code == 0);
    const auto rr = lines(r.out);
    REQUIRE(rr.size() == 21);
    CHECK(std::abs(std::stod(rr.back().substr(rr.back().rfind(',') + 1))) <= 1e-4);
    CHECK(invoke({"table", "ray", "--t", "1:20"}).out == r.out);
}
