#include "hylink/fidelity_engine.hpp"

#include "hylink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace hylink
{
std::string_view to_string(Verdict v)
{
    switch (v)
    {
    case Verdict::pass:
        return "pass";
    case Verdict::warn:
        return "warn";
    case Verdict::fail:
        return "fail";
    }
    return "unknown";
}

Verdict classify_ratio(double ratio)
{
    if (ratio < 0.1)
    {
        return Verdict::pass;
    }
    return ratio < 1.0 ? Verdict::warn : Verdict::fail;
}

void validate(const SpectralScenario& s)
{
    validate(s.pulse);
    validate(s.cavity);
    validate(s.atom);
    if (s.matching_frequency)
    {
        const double half_width = kSpectralWindowWidths / s.pulse.tau;
        if (!(std::abs(*s.matching_frequency - s.pulse.omega0) < half_width))
        {
            throw DomainError("matching frequency lies outside the integration window");
        }
    }
}

void validate(const RecoilScenario& r)
{
    if (!(r.eta >= 0.0) || !std::isfinite(r.eta))
    {
        throw DomainError("invariant violated: eta >= 0");
    }
    if (!(r.nbar >= 0.0) || !std::isfinite(r.nbar))
    {
        throw DomainError("invariant violated: nbar >= 0");
    }
    if (!(r.delta > 0.0) || r.delta > constants::pi / 4.0)
    {
        throw DomainError("invariant violated: 0 < delta <= pi/4");
    }
    if (!(r.n_s >= 0.0) || !std::isfinite(r.n_s))
    {
        throw DomainError("invariant violated: n_s >= 0");
    }
}

Complex pulse_spectrum(double omega, const PulseSpec& p)
{
    const double offset = p.tau * (omega - p.omega0);
    return {p.amplitude * std::exp(-0.25 * offset * offset), 0.0};
}

namespace
{
// Atom detuning at omega: the pulse-center detuning shifted by omega - omega0.
double atom_detuning(double omega, const SpectralScenario& s)
{
    return s.atom.delta_a + (omega - s.pulse.omega0);
}

struct BranchNormalization
{
    Complex cavity; // 1 / r(omega_m)
    Complex atom;   // 1 / L(delta_a(omega_m))
};

BranchNormalization normalization(const SpectralScenario& s)
{
    const double omega_m = s.matching_frequency.value_or(s.pulse.omega0);
    const Complex r_m = cavity_reflectivity(omega_m, s.cavity);
    if (std::abs(r_m) == 0.0)
    {
        throw DomainError("cavity reflectivity vanishes at the matching frequency; branches cannot be matched");
    }
    const Complex l_m = lorentzian(atom_detuning(omega_m, s), s.atom.gamma_a);
    return {1.0 / r_m, 1.0 / l_m};
}

BranchAmplitudes amplitudes(double omega, const SpectralScenario& s, const BranchNormalization& norm)
{
    const Complex drive = pulse_spectrum(omega, s.pulse);
    BranchAmplitudes out;
    out.cavity = norm.cavity * cavity_reflectivity(omega, s.cavity) * drive;
    out.atom = s.atom_branch
                   ? norm.atom * lorentzian(atom_detuning(omega, s), s.atom.gamma_a) * drive
                   : Complex{0.0, 0.0};
    return out;
}
} // namespace

BranchAmplitudes branch_amplitudes(double omega, const SpectralScenario& s)
{
    return amplitudes(omega, s, normalization(s));
}

double spectral_fidelity(const SpectralScenario& s, const numerics::QuadratureSpec& quad)
{
    validate(s);
    const BranchNormalization norm = normalization(s);

    const double center = s.pulse.omega0;
    const double half_width = kSpectralWindowWidths / s.pulse.tau;
    const double lo = center - half_width;
    const double hi = center + half_width;

    numerics::QuadratureSpec spec = quad;
    std::vector<double> points(quad.mandatory_breakpoints);
    points.push_back(center);
    if (s.atom_branch)
    {
        const double atom_resonance = center - s.atom.delta_a;
        if (atom_resonance > lo && atom_resonance < hi)
        {
            points.push_back(atom_resonance);
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    spec.mandatory_breakpoints = std::move(points);

    const auto numerator = numerics::integrate_adaptive(
        [&](double omega) {
            const auto b = amplitudes(omega, s, norm);
            return std::norm(b.cavity + b.atom);
        },
        lo, hi, spec);
    const auto denominator = numerics::integrate_adaptive(
        [&](double omega) {
            const auto b = amplitudes(omega, s, norm);
            return std::norm(b.cavity) + std::norm(b.atom) - (std::conj(b.cavity) * b.atom).real();
        },
        lo, hi, spec);

    if (!(denominator.value > 0.0))
    {
        throw DomainError("spectral_fidelity: vanishing pulse energy");
    }
    return 0.25 * numerator.value / denominator.value;
}

double q_factor(double x)
{
    if (!(x >= 0.0))
    {
        throw DomainError("q_factor: argument must be non-negative");
    }
    if (x < 1e-6)
    {
        return 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0;
    }
    return -std::expm1(-x) / x;
}

double recoil_exponent(double eta, double nbar, double delta)
{
    return eta * eta * (nbar + 1.0) * delta * delta;
}

ThermalBetaMoments thermal_beta_moments(const RecoilScenario& r)
{
    validate(r);
    const double mean_squared = 0.375 * r.n_s * r.delta * r.delta;
    const double q = q_factor(recoil_exponent(r.eta, r.nbar, r.delta));
    return {Complex(-std::sqrt(mean_squared) * q, 0.0), mean_squared};
}

double recoil_fidelity(const RecoilScenario& r)
{
    validate(r);
    const double q = q_factor(recoil_exponent(r.eta, r.nbar, r.delta));
    return 0.5 * (1.0 + q) / (2.0 - q);
}

double multiphoton_fidelity(const RecoilScenario& r)
{
    validate(r);
    const double q = q_factor(recoil_exponent(r.eta, r.nbar, r.delta));
    return 0.5 * (1.0 + std::exp(-0.5 * r.n_s) * q) / (2.0 - q);
}

double success_probability(const RecoilScenario& r)
{
    const double mean_squared = thermal_beta_moments(r).mean_squared;
    return -std::expm1(-0.25 * mean_squared);
}

double n_s_for_fidelity(double f_target, double eta, double nbar, double delta)
{
    if (!(eta >= 0.0) || !(nbar >= 0.0) || !(delta >= 0.0) || delta > constants::pi / 4.0)
    {
        throw DomainError("n_s_for_fidelity: require eta, nbar >= 0 and 0 <= delta <= pi/4");
    }
    const double q = q_factor(recoil_exponent(eta, nbar, delta));
    const double f_max = 0.5 * (1.0 + q) / (2.0 - q);
    if (!(f_target > 0.25))
    {
        throw InfeasibleError("n_s_for_fidelity: target fidelity " + std::to_string(f_target) +
                              " is at or below the no-coherence floor 1/4");
    }
    if (f_target > f_max)
    {
        throw InfeasibleError("n_s_for_fidelity: target fidelity " + std::to_string(f_target) +
                              " exceeds the recoil limit " + std::to_string(f_max));
    }
    if (f_target == f_max)
    {
        return 0.0;
    }
    const double interference = (2.0 * f_target * (2.0 - q) - 1.0) / q;
    return std::max(0.0, -2.0 * std::log(interference));
}

ValidityReport weak_excitation_check(double n_s, double tau, double gamma_a, double n_ref,
                                     double tau_p, double tau_mod)
{
    if (!(tau > 0.0) || !(gamma_a > 0.0) || !(tau_p > 0.0) || !(tau_mod > 0.0))
    {
        throw DomainError("weak_excitation_check: rates and durations must be positive");
    }
    if (!(n_s >= 0.0) || !(n_ref >= 0.0))
    {
        throw DomainError("weak_excitation_check: photon numbers must be non-negative");
    }
    ValidityReport report;
    report.atom_ratio = (n_s / tau) / gamma_a;
    report.qd_ratio = (n_ref / tau_p) * tau_mod;
    report.atom_verdict = classify_ratio(report.atom_ratio);
    report.qd_verdict = classify_ratio(report.qd_ratio);
    return report;
}

} // namespace hylink
