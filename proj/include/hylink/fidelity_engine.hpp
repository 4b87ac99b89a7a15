#pragma once

#include "hylink/core_model.hpp"
#include "hylink/numerics.hpp"

#include <optional>
#include <string_view>
#include <utility>

// Entanglement fidelity, success probability and weak-excitation validity of
// the heralded QD-atom link.
namespace hylink
{
// Pulse bandwidth window: the spectral integrals run over omega0 +- 40 / tau.
inline constexpr double kSpectralWindowWidths = 40.0;

struct SpectralScenario
{
    PulseSpec pulse;
    CavityQDParams cavity;
    AtomParams atom;
    // Frequency at which the two branches are matched in amplitude and
    // phase; the pulse center when unset.
    std::optional<double> matching_frequency;
    // false removes the atom-scattered branch entirely (beta = 0).
    bool atom_branch = true;
};

struct RecoilScenario
{
    double eta = 0.0;   // Lamb-Dicke parameter
    double nbar = 0.0;  // mean thermal occupation
    double delta = 0.1; // collection half-angle, rad (inner angle -> 0)
    double n_s = 0.0;   // scattered photon number
};

enum class Verdict
{
    pass, // ratio < 0.1
    warn, // 0.1 <= ratio < 1
    fail, // ratio >= 1
};

std::string_view to_string(Verdict v);
Verdict classify_ratio(double ratio);

struct ValidityReport
{
    double atom_ratio = 0.0; // N_s / (tau gamma_a)
    double qd_ratio = 0.0;   // (N_ref / tau_p) tau_mod
    Verdict atom_verdict = Verdict::pass;
    Verdict qd_verdict = Verdict::pass;

    bool any_fail() const { return atom_verdict == Verdict::fail || qd_verdict == Verdict::fail; }
};

void validate(const SpectralScenario& s);
void validate(const RecoilScenario& r);

// Gaussian pulse spectrum Omega0 exp(-tau^2 (omega - omega0)^2 / 4).
Complex pulse_spectrum(double omega, const PulseSpec& p);

// Cavity-reflected and atom-scattered field amplitudes at omega, normalized
// so that both equal the pulse spectrum at the matching frequency.
struct BranchAmplitudes
{
    Complex cavity; // alpha(omega)
    Complex atom;   // beta(omega)
};
BranchAmplitudes branch_amplitudes(double omega, const SpectralScenario& s);

// Overlap fidelity with the singlet for a pulsed drive:
//   F = 1/4 int |a + b|^2 / int (|a|^2 + |b|^2 - Re{conj(a) b}).
// Integrated over omega0 +- 40/tau with breakpoints at the pulse center and
// at the atomic resonance when it falls inside the window.
double spectral_fidelity(const SpectralScenario& s, const numerics::QuadratureSpec& quad = {});

// (1 - exp(-x)) / x with its limit 1 at x = 0.
double q_factor(double x);

// Recoil exponent eta^2 (nbar + 1) delta^2.
double recoil_exponent(double eta, double nbar, double delta);

struct ThermalBetaMoments
{
    Complex mean;        // <beta>
    double mean_squared; // <|beta|^2>
};
ThermalBetaMoments thermal_beta_moments(const RecoilScenario& r);

// Monochromatic fidelity with recoil only, at the optimal cavity amplitude.
double recoil_fidelity(const RecoilScenario& r);

// Recoil plus multi-photon which-path leakage.
double multiphoton_fidelity(const RecoilScenario& r);

// Heralding probability 1 - exp(-<|beta|^2> / 4).
double success_probability(const RecoilScenario& r);

// Scattered photon number at which multiphoton_fidelity equals f_target.
// Throws InfeasibleError when f_target is not in (1/4, recoil_fidelity].
double n_s_for_fidelity(double f_target, double eta, double nbar, double delta);

// Weak-excitation conditions for the atom (scattering rate vs decay rate) and
// the QD (reflected photon rate vs modified lifetime). Rates in rad/ns,
// durations in ns.
ValidityReport weak_excitation_check(double n_s, double tau, double gamma_a, double n_ref,
                                     double tau_p, double tau_mod);

} // namespace hylink
