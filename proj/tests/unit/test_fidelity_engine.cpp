#include "hylink/constants.hpp"
#include "hylink/errors.hpp"
#include "hylink/fidelity_engine.hpp"
#include "oracles/trapezoid_oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace hylink;
using doctest::Approx;

namespace
{
const double kQuarterPi = constants::pi / 4.0;

SpectralScenario reference_scenario(double tau, double delta_a_ghz)
{
    SpectralScenario s;
    s.pulse = default_pulse();
    s.pulse.tau = tau;
    s.cavity = default_cavity();
    s.atom = default_atom();
    s.atom.delta_a = ghz_to_angular(delta_a_ghz);
    return s;
}

oracle::SpectralPoint oracle_point(const SpectralScenario& s)
{
    return {s.cavity.g,      s.cavity.kappa, s.cavity.gamma_qd, s.cavity.delta_qd,      s.atom.gamma_a,
            s.atom.delta_a,  s.pulse.tau,    s.pulse.omega0,    s.atom_branch};
}
} // namespace

TEST_CASE("Q factor closed form and small-x series agree")
{
    CHECK(q_factor(0.0) == 1.0);
    CHECK(q_factor(0.0549613595085664) == Approx(0.973015936411246).epsilon(1e-13));
    const double below = q_factor(0.999e-6);
    const double above = q_factor(1.001e-6);
    CHECK(std::abs(below - above) < 1e-9);
    CHECK(q_factor(1e-6 * 0.5) == Approx(-std::expm1(-0.5e-6) / 0.5e-6).epsilon(1e-15));
    CHECK_THROWS_AS(q_factor(-1.0), DomainError);
}

TEST_CASE("recoil exponent for the reference trap")
{
    CHECK(recoil_exponent(0.09, 10, kQuarterPi) == Approx(0.0549613595085664).epsilon(1e-13));
}

TEST_CASE("recoil fidelity at nbar 10, 45 degrees")
{
    const RecoilScenario r{0.09, 10.0, kQuarterPi, 0.0};
    CHECK(recoil_fidelity(r) == Approx(0.96058741628211).epsilon(1e-12));
    CHECK(recoil_fidelity(r) > 0.9);
}

TEST_CASE("multiphoton fidelity and its inverse")
{
    RecoilScenario r{0.09, 10.0, kQuarterPi, 0.2744};
    CHECK(multiphoton_fidelity(r) == Approx(0.899853912253721).epsilon(1e-12));
    const double n_s = n_s_for_fidelity(0.9, 0.09, 10.0, kQuarterPi);
    CHECK(n_s == Approx(0.273692663719835).epsilon(1e-12));
    r.n_s = n_s;
    CHECK(multiphoton_fidelity(r) == Approx(0.9).epsilon(1e-13));
}

TEST_CASE("thermal beta moments and success probability")
{
    const double n_s = 0.273692663719835;
    const RecoilScenario r{0.09, 10.0, kQuarterPi, n_s};
    const auto m = thermal_beta_moments(r);
    CHECK(m.mean_squared == Approx(0.0633102730873863).epsilon(1e-12));
    CHECK(m.mean.real() == Approx(-std::sqrt(0.0633102730873863) * 0.973015936411246).epsilon(1e-12));
    CHECK(success_probability(r) == Approx(0.0157029705389722).epsilon(1e-12));

    const RecoilScenario rounded{0.09, 10.0, kQuarterPi, 0.2744};
    CHECK(success_probability(rounded) == Approx(0.0157432324389266).epsilon(1e-12));
}

TEST_CASE("n_s_for_fidelity feasibility edges")
{
    const double f_max = recoil_fidelity({0.09, 10.0, kQuarterPi, 0.0});
    CHECK(n_s_for_fidelity(f_max, 0.09, 10.0, kQuarterPi) == 0.0);
    CHECK_THROWS_AS(n_s_for_fidelity(f_max + 1e-6, 0.09, 10.0, kQuarterPi), InfeasibleError);
    CHECK_THROWS_AS(n_s_for_fidelity(0.25, 0.09, 10.0, kQuarterPi), InfeasibleError);
    CHECK_THROWS_AS(n_s_for_fidelity(0.9, 0.09, 10.0, 1.0), DomainError);
}

TEST_CASE("recoil scenario validation")
{
    CHECK_THROWS_AS(recoil_fidelity({0.09, 10.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(recoil_fidelity({0.09, 10.0, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(multiphoton_fidelity({0.09, 10.0, 0.5, -1.0}), DomainError);
}

TEST_CASE("weak-excitation verdicts")
{
    const double gamma_a = mhz_to_angular(4.2);
    const auto warn = weak_excitation_check(0.1, 10.0, gamma_a, 0.0, 1.0, 1.0);
    CHECK(warn.atom_ratio == Approx(0.378940340694989).epsilon(1e-12));
    CHECK(warn.atom_verdict == Verdict::warn);
    CHECK(weak_excitation_check(0.01, 10.0, gamma_a, 0.0, 1.0, 1.0).atom_verdict == Verdict::pass);
    CHECK(weak_excitation_check(1.0, 1.0, gamma_a, 0.0, 1.0, 1.0).atom_verdict == Verdict::fail);

    const auto qd = weak_excitation_check(0.0, 10.0, gamma_a, 0.5, 1.0, 4.0);
    CHECK(qd.qd_ratio == Approx(2.0));
    CHECK(qd.qd_verdict == Verdict::fail);
    CHECK(qd.any_fail());

    CHECK(classify_ratio(0.0999) == Verdict::pass);
    CHECK(classify_ratio(0.1) == Verdict::warn);
    CHECK(classify_ratio(1.0) == Verdict::fail);
    CHECK(to_string(Verdict::warn) == "warn");
}

TEST_CASE("pulse spectrum is a Gaussian of width 2/tau")
{
    const PulseSpec p{0.5, 2.0, 3.0};
    CHECK(pulse_spectrum(0.5, p).real() == 3.0);
    CHECK(pulse_spectrum(1.5, p).real() == Approx(3.0 * std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("branches are matched at the pulse center")
{
    const auto s = reference_scenario(1.0, 1.0);
    const auto b = branch_amplitudes(s.pulse.omega0, s);
    CHECK(std::abs(b.cavity - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(b.atom - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("spectral fidelity limits")
{
    CHECK(spectral_fidelity(reference_scenario(100.0, 1.0)) > 0.99);
    CHECK(spectral_fidelity(reference_scenario(0.01, 1.0)) < 0.30);

    auto no_atom = reference_scenario(1.0, 1.0);
    no_atom.atom_branch = false;
    CHECK(spectral_fidelity(no_atom) == Approx(0.25).epsilon(1e-14));
}

TEST_CASE("spectral fidelity matches the trapezoid oracle")
{
    for (const auto& [tau, da] : {std::pair{10.0, 0.1}, std::pair{1.0, 1.0}, std::pair{0.1, 10.0}})
    {
        const auto s = reference_scenario(tau, da);
        CHECK(spectral_fidelity(s) == Approx(oracle::trapezoid_fidelity(oracle_point(s))).epsilon(1e-6));
    }
}

TEST_CASE("spectral fidelity rejects an unmatched dark cavity")
{
    auto s = reference_scenario(1.0, 1.0);
    s.cavity.coupled = false;
    CHECK_THROWS_AS(spectral_fidelity(s), DomainError);
}
