#include "hylink/errors.hpp"
#include "hylink/svg_plot.hpp"
#include "hylink/table_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <limits>

using namespace hylink;

namespace
{
SweepResult small_result()
{
    SweepResult r;
    r.columns = {{"x", {1.0, 2.0, 3.0}}, {"y", {0.1, 1.0 / 3.0, 1e-20}}};
    r.flags = {"", "", ""};
    r.metadata = {{"figure", "fig5"}, {"tool_version", "test"}};
    r.wall_time_s = 1.25;
    return r;
}

int count_lines(const std::string& s)
{
    int n = 0;
    for (char c : s)
    {
        n += c == '\n';
    }
    return n;
}
} // namespace

TEST_CASE("two-column, three-row result gives a four-line CSV")
{
    const std::string csv = render_csv(small_result());
    CHECK(count_lines(csv) == 4);
    CHECK(csv.substr(0, 4) == "x,y\n");
    CHECK(csv.find("2,0.333333333333\n") != std::string::npos);
    CHECK(csv.find("1e-20") != std::string::npos);
    CHECK(csv.find("status") == std::string::npos);
}

TEST_CASE("flagged rows add a status column")
{
    SweepResult r = small_result();
    r.columns[1].values[1] = std::numeric_limits<double>::quiet_NaN();
    r.flags[1] = "infeasible: target \"0.9\", too hot";
    const std::string csv = render_csv(r);
    CHECK(csv.substr(0, 11) == "x,y,status\n");
    CHECK(csv.find("1,0.1,ok\n") != std::string::npos);
    CHECK(csv.find("2,nan,\"infeasible: target \"\"0.9\"\", too hot\"\n") != std::string::npos);
}

TEST_CASE("JSON has equal-length columns and metadata")
{
    SweepResult r = small_result();
    r.columns[1].values[2] = std::numeric_limits<double>::quiet_NaN();
    r.flags[2] = "bad";
    const auto doc = nlohmann::json::parse(render_json(r));
    CHECK(doc["columns"]["x"].size() == 3);
    CHECK(doc["columns"]["y"].size() == 3);
    CHECK(doc["columns"]["y"][2].is_null());
    CHECK(doc["metadata"]["figure"] == "fig5");
    CHECK(doc["status"][2] == "bad");
    CHECK_FALSE(doc.contains("wall_time_s"));
}

TEST_CASE("rendering is byte-stable and ignores wall time")
{
    SweepResult a = small_result();
    SweepResult b = small_result();
    b.wall_time_s = 99.0;
    CHECK(render_csv(a) == render_csv(b));
    CHECK(render_json(a) == render_json(b));
}

TEST_CASE("format values")
{
    CHECK(format_value(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_value(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_value(0.123456789012345) == "0.123456789012");
    CHECK(parse_table_format("json") == TableFormat::json);
    CHECK_FALSE(parse_table_format("xml").has_value());
}

TEST_CASE("write failures name the path")
{
    try
    {
        write_table(small_result(), TableFormat::csv, "/nonexistent/dir/out.csv");
        FAIL("expected IoError");
    }
    catch (const IoError& e)
    {
        CHECK(std::string(e.what()).find("/nonexistent/dir/out.csv") != std::string::npos);
    }
}

TEST_CASE("SVG plot of a curve family")
{
    SweepResult r;
    r.columns = {{"delta_rad", {0.1, 0.2, 0.1, 0.2}},
                 {"nbar", {0.0, 0.0, 10.0, 10.0}},
                 {"fidelity", {0.99, 0.98, 0.97, std::numeric_limits<double>::quiet_NaN()}}};
    r.flags = {"", "", "", "x"};
    const std::string svg = render_svg(r, FigureId::fig5);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("nbar = 0") != std::string::npos);
    CHECK(svg.find("nbar = 10") != std::string::npos);
    CHECK(svg == render_svg(r, FigureId::fig5));
    CHECK_THROWS_AS(render_svg(r, FigureId::fig7), DomainError);
}
