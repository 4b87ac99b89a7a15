#include "hylink/constants.hpp"
#include "hylink/errors.hpp"
#include "hylink/sweep_optimizer.hpp"

#include <doctest.h>

#include <cmath>

using namespace hylink;
using doctest::Approx;

namespace
{
const double kQuarterPi = constants::pi / 4.0;

SpectralScenario base()
{
    SpectralScenario s;
    s.pulse = default_pulse();
    s.cavity = default_cavity();
    s.atom = default_atom();
    return s;
}
} // namespace

TEST_CASE("required pulse duration reaches the target")
{
    const auto s = base();
    for (double ghz : {0.1, 1.0, 10.0})
    {
        const double tau = pulse_duration_for_fidelity(0.9, ghz_to_angular(ghz), s);
        SpectralScenario check = s;
        check.pulse.tau = tau;
        check.atom.delta_a = ghz_to_angular(ghz);
        CHECK(spectral_fidelity(check) == Approx(0.9).epsilon(1e-6));
    }
}

TEST_CASE("pulse duration crossing values")
{
    const auto s = base();
    CHECK(pulse_duration_for_fidelity(0.9, ghz_to_angular(0.1), s) == Approx(6.43).epsilon(5e-3));
    CHECK(pulse_duration_for_fidelity(0.9, ghz_to_angular(1.0), s) == Approx(0.7075).epsilon(5e-3));
}

TEST_CASE("unreachable fidelity target is infeasible")
{
    CHECK_THROWS_AS(pulse_duration_for_fidelity(0.9999999, ghz_to_angular(0.1), base()), InfeasibleError);
}

TEST_CASE("pump intensity at the reference point")
{
    const auto atom = default_atom();
    CHECK(intensity_for_scatter(0.1, ghz_to_angular(0.1), 10.0, atom) ==
          Approx(0.289046259013295).epsilon(1e-10));
}

TEST_CASE("optimal collection angle is collection-limited for a cold atom")
{
    const auto cold = optimal_collection_angle(0.9, 0.09, 0.0, kQuarterPi);
    CHECK(cold.delta == kQuarterPi);
    CHECK(cold.success_probability == Approx(0.0245658242504576).epsilon(1e-9));
    const auto warm = optimal_collection_angle(0.9, 0.09, 10.0, kQuarterPi);
    CHECK(warm.success_probability == Approx(0.0157029705389722).epsilon(1e-9));
}

TEST_CASE("hot atom has an interior optimum")
{
    const auto hot = optimal_collection_angle(0.9, 0.09, 1e4, kQuarterPi);
    CHECK(hot.delta < kQuarterPi);
    CHECK(hot.delta > 0.0);
    CHECK(hot.success_probability > 0.0);
}

TEST_CASE("grid axes")
{
    GridAxis lin{0.0, 1.0, 5, GridScale::linear};
    const auto v = lin.values();
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 1.0);
    CHECK(v[2] == Approx(0.5));

    GridAxis lg{0.01, 100.0, 5, GridScale::log};
    const auto w = lg.values();
    CHECK(w.front() == 0.01);
    CHECK(w.back() == 100.0);
    CHECK(w[2] == Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS((GridAxis{0.0, 1.0, 1, GridScale::linear}).validate(), DomainError);
    CHECK_THROWS_AS((GridAxis{0.0, 1.0, 5, GridScale::log}).validate(), DomainError);
    CHECK_THROWS_AS((GridAxis{1.0, 1.0, 5, GridScale::linear}).validate(), DomainError);
}

TEST_CASE("figure ids round-trip")
{
    for (FigureId id : {FigureId::fig3, FigureId::fig4, FigureId::fig5, FigureId::fig6, FigureId::fig7})
    {
        CHECK(parse_figure_id(to_string(id)) == id);
    }
    CHECK_FALSE(parse_figure_id("fig8").has_value());
}

TEST_CASE("fig3 default sweep shape")
{
    const auto r = run_sweep(default_request(FigureId::fig3, base(), 0.09));
    REQUIRE(r.columns.size() == 3);
    CHECK(r.columns[0].name == "tau_ns");
    CHECK(r.columns[1].name == "delta_a_ghz");
    CHECK(r.columns[2].name == "fidelity");
    CHECK(r.rows() == 180);
    CHECK_FALSE(r.any_flagged());
}

TEST_CASE("sweep results do not depend on thread count")
{
    auto req = default_request(FigureId::fig3, base(), 0.09);
    req.grid.count = 12;
    req.threads = 1;
    const auto one = run_sweep(req);
    req.threads = 7;
    const auto many = run_sweep(req);
    REQUIRE(one.rows() == many.rows());
    for (std::size_t c = 0; c < one.columns.size(); ++c)
    {
        CHECK(one.columns[c].values == many.columns[c].values);
    }
    CHECK(one.metadata == many.metadata);
}

TEST_CASE("infeasible points are flagged with NaN values")
{
    auto req = default_request(FigureId::fig6, base(), 0.09);
    req.series = {1000.0};
    const auto r = run_sweep(req);
    CHECK(r.any_flagged());
    const Column* p = r.find("success_probability");
    REQUIRE(p != nullptr);
    for (std::size_t i = 0; i < r.rows(); ++i)
    {
        CHECK(r.flags[i].empty() == std::isfinite(p->values[i]));
        CHECK(std::isfinite(r.find("delta_rad")->values[i]));
    }
}

TEST_CASE("fig7 success probability is nonincreasing in nbar")
{
    const auto r = run_sweep(default_request(FigureId::fig7, base(), 0.09));
    const auto& p = r.find("p_opt")->values;
    for (std::size_t i = 1; i < p.size(); ++i)
    {
        CHECK(p[i] <= p[i - 1] * (1 + 1e-12));
    }
}

TEST_CASE("sweep rejects a missing series")
{
    auto req = default_request(FigureId::fig5, base(), 0.09);
    req.series.clear();
    CHECK_THROWS_AS(run_sweep(req), DomainError);
}
