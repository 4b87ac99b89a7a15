#include "hylink/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hylink;
namespace fs = std::filesystem;

namespace
{
struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::path(HYLINK_TEST_TMP) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}
} // namespace

TEST_CASE("eval prints the single-scenario report")
{
    const Run r = run({"eval"});
    CHECK(r.code == kExitOk);
    for (const char* key : {"spectral_fidelity = ", "recoil_fidelity = 0.960587416282", "multiphoton_fidelity = ",
                            "success_probability = ", "atom_ratio = 0.378940340695", "atom_verdict = warn",
                            "qd_verdict = pass"})
    {
        CHECK(r.out.find(key) != std::string::npos);
    }
}

TEST_CASE("eval as JSON")
{
    const Run r = run({"eval", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["atom_verdict"] == "warn");
}

TEST_CASE("eval without the atom branch reports the no-coherence floor")
{
    const fs::path dir = scratch("no_atom");
    write(dir / "c.cfg", "atom_branch = false\n");
    const Run r = run({"eval", "--config", (dir / "c.cfg").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("spectral_fidelity = 0.25\n") != std::string::npos);
}

TEST_CASE("eval with an unreachable fidelity target exits infeasible")
{
    const fs::path dir = scratch("hot");
    write(dir / "c.cfg", "nbar = 1000\n");
    const Run r = run({"eval", "--config", (dir / "c.cfg").string()});
    CHECK(r.code == kExitInfeasible);
    CHECK(r.err.find("infeasible") != std::string::npos);
}

TEST_CASE("check exit status follows the validity verdicts")
{
    CHECK(run({"check"}).code == kExitOk);
    const fs::path dir = scratch("check");
    write(dir / "fail.cfg", "n_s = 1\ntau_ns = 1\n");
    const Run r = run({"check", "--config", (dir / "fail.cfg").string()});
    CHECK(r.code == kExitCheckFailed);
    CHECK(r.out.find("atom_verdict = fail") != std::string::npos);
}

TEST_CASE("usage, config and I/O errors")
{
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"bogus"}).code == kExitUsage);
    CHECK(run({"eval", "--no-such-flag"}).code == kExitUsage);
    CHECK(run({"fig3", "--format", "xml"}).code == kExitUsage);

    const fs::path dir = scratch("errors");
    write(dir / "bad.cfg", "g_ghz = -1\n");
    const Run bad = run({"eval", "--config", (dir / "bad.cfg").string()});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("g_ghz") != std::string::npos);

    CHECK(run({"eval", "--config", (dir / "missing.cfg").string()}).code == kExitIo);

    write(dir / "file", "x");
    CHECK(run({"fig5", "--out", (dir / "file" / "sub").string()}).code == kExitIo);
}

TEST_CASE("fig3 with defaults writes 180 rows and a manifest")
{
    const fs::path dir = scratch("fig3");
    const Run r = run({"fig3", "--config", "defaults", "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    const std::string csv = slurp(dir / "fig3.csv");
    CHECK(csv.rfind("tau_ns,delta_a_ghz,fidelity\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 181);

    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["outputs"].size() == 1);
    CHECK(manifest["outputs"][0]["file"] == "fig3.csv");
    CHECK(manifest["outputs"][0]["sha256"].get<std::string>().size() == 64);
    CHECK(manifest.contains("wall_time_s"));
    CHECK(manifest["config"].get<std::string>().find("g_ghz = 16") != std::string::npos);
}

TEST_CASE("fig7 with plot")
{
    const fs::path dir = scratch("fig7");
    REQUIRE(run({"fig7", "--plot", "--out", dir.string()}).code == kExitOk);
    CHECK(fs::exists(dir / "fig7.csv"));
    CHECK(fs::exists(dir / "fig7.svg"));
    CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("figure output as JSON")
{
    const fs::path dir = scratch("fig5json");
    REQUIRE(run({"fig5", "--format", "json", "--out", dir.string()}).code == kExitOk);
    const auto doc = nlohmann::json::parse(slurp(dir / "fig5.json"));
    CHECK(doc["columns"]["delta_rad"].size() == doc["columns"]["fidelity"].size());
}

TEST_CASE("generic sweep with grid overrides")
{
    const fs::path dir = scratch("sweep");
    const Run r = run({"sweep", "--figure", "fig6", "--min", "0.1", "--max", "0.7", "--count", "4", "--series",
                       "0,50", "--out", dir.string()});
    REQUIRE(r.code == kExitOk);
    const std::string csv = slurp(dir / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
}

TEST_CASE("tolerance flag is echoed in the manifest")
{
    const fs::path dir = scratch("tol");
    REQUIRE(run({"fig5", "--tol", "1e-7", "--out", dir.string()}).code == kExitOk);
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["tolerances"]["quad_rel_tol"] == "1e-07");
}
