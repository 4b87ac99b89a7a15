#pragma once

// Brute-force reference for the spectral fidelity: fixed-step trapezoid rule
// on closed-form response functions written out in real arithmetic, sharing
// no code with the library.
namespace oracle
{
struct SpectralPoint
{
    // All rates in rad/ns, tau in ns. Cavity at 0, pulse centered at omega0.
    double g;
    double kappa;
    double gamma_qd;
    double delta_qd; // cavity minus QD resonance
    double gamma_a;
    double delta_a; // laser minus atom resonance at the pulse center
    double tau;
    double omega0 = 0.0;
    bool atom_branch = true;
};

inline constexpr int kTrapezoidPoints = 200000;

double trapezoid_fidelity(const SpectralPoint& p, int points = kTrapezoidPoints);

// r(omega) as (re, im), from r = 1 - t with t = 1 / (1 - i D + C L).
void reflectivity(const SpectralPoint& p, double omega, double& re, double& im);

} // namespace oracle
