#pragma once

#include "hylink/constants.hpp"

#include <complex>
#include <optional>

// Physical parameters and frequency-domain optical response of the two nodes.
//
// Unit convention: every rate, linewidth and frequency offset is an angular
// frequency in rad/ns. Absolute optical frequencies are never stored; all
// frequency arguments are offsets in a common frame whose origin is the
// cavity reference.
namespace hylink
{
using Complex = std::complex<double>;

// Ordinary frequency (GHz or MHz) to angular rad/ns.
constexpr double ghz_to_angular(double ghz) { return constants::two_pi * ghz; }
constexpr double mhz_to_angular(double mhz) { return constants::two_pi * mhz * 1e-3; }
constexpr double angular_to_ghz(double rad_per_ns) { return rad_per_ns / constants::two_pi; }

struct CavityQDParams
{
    double g = 0.0;        // QD-cavity coupling
    double kappa = 1.0;    // cavity linewidth
    double gamma_qd = 1.0; // QD dipole decay
    double omega_c = 0.0;  // cavity resonance in the common frame
    // QD detuning from the cavity resonance, omega_c - omega_qd. The QD
    // detuning seen by a field at omega is (omega - omega_c) + delta_qd.
    double delta_qd = 0.0;
    bool coupled = true; // false: spin branch that does not couple (C -> 0)
};

struct AtomParams
{
    double gamma_a = 1.0;    // total dipole decay, including dephasing
    double gamma_r = 1.0;    // radiative decay into the collected transition
    double lambda0 = 935e-9; // transition wavelength, m
    double delta_a = 0.0;    // laser - atom detuning at the pulse center
};

struct TrapState
{
    double mass = 1.0;    // kg
    double omega_t = 1.0; // trap angular frequency, rad/s
    double nbar = 0.0;    // mean thermal occupation
    // When set, replaces the first-principles Lamb-Dicke parameter.
    std::optional<double> eta_override;
};

struct CollectionGeometry
{
    double delta_i = 0.0; // inner half-angle, rad
    double delta_o = 0.1; // outer half-angle, rad
};

struct PulseSpec
{
    double omega0 = 0.0;    // center frequency, offset from the cavity resonance
    double tau = 1.0;       // duration, ns
    double amplitude = 1.0; // peak spectral amplitude (arbitrary units)
};

// Throw DomainError naming the violated invariant.
void validate(const CavityQDParams& p);
void validate(const AtomParams& a);
void validate(const TrapState& t);
void validate(const CollectionGeometry& c);
void validate(const PulseSpec& p);

// gamma / (gamma - i delta)
Complex lorentzian(double delta, double gamma);

// 4 g^2 / (gamma_qd kappa)
double cooperativity(const CavityQDParams& p);

// Input-output reflection and transmission amplitudes of the cavity-QD
// system. The uncoupled branch uses C = 0 exactly.
Complex cavity_reflectivity(double omega, const CavityQDParams& p);
Complex cavity_transmission(double omega, const CavityQDParams& p);

// 3 lambda^2 / 2 pi, m^2
double atomic_cross_section(double lambda0);

// Free-space spontaneous emission rate (rad/s) of a dipole d (C m) at omega0 (rad/s).
double radiative_decay_rate(double omega0, double dipole);

// Total scattered photon number for an incident photon areal density n_i (1/m^2).
double scattered_photon_number(const AtomParams& a, double n_i);

// k sqrt(hbar / 2 m omega_t) from first principles. Ignores eta_override.
double lamb_dicke(const TrapState& t, double lambda0);

// eta_override when present, lamb_dicke otherwise.
double effective_lamb_dicke(const TrapState& t, double lambda0);

// Area on the unit sphere of the collection annulus, 2 pi (cos d_i - cos d_o).
double collection_area(const CollectionGeometry& c);
// Small-angle form pi (d_o^2 - d_i^2).
double collection_area_paraxial(const CollectionGeometry& c);

// Parameter set used throughout the figures: InAs QD in a photonic crystal
// cavity and the 935 nm line of 171Yb+.
CavityQDParams default_cavity();
AtomParams default_atom();
TrapState default_trap();
CollectionGeometry default_collection();
PulseSpec default_pulse();

} // namespace hylink
