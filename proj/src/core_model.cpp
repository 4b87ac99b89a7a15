#include "hylink/core_model.hpp"

#include "hylink/constants.hpp"
#include "hylink/errors.hpp"

#include <cmath>
#include <string>

namespace hylink
{
namespace
{
void require(bool ok, const char* what)
{
    if (!ok)
    {
        throw DomainError(std::string("invariant violated: ") + what);
    }
}

bool finite(double x) { return std::isfinite(x); }
} // namespace

void validate(const CavityQDParams& p)
{
    require(finite(p.g) && p.g >= 0.0, "g >= 0");
    require(finite(p.kappa) && p.kappa > 0.0, "kappa > 0");
    require(finite(p.gamma_qd) && p.gamma_qd > 0.0, "gamma_qd > 0");
    require(finite(p.omega_c) && finite(p.delta_qd), "finite omega_c and delta_qd");
}

void validate(const AtomParams& a)
{
    require(finite(a.gamma_a) && a.gamma_a > 0.0, "gamma_a > 0");
    require(finite(a.gamma_r) && a.gamma_r >= 0.0 && a.gamma_r <= a.gamma_a,
            "0 <= gamma_r <= gamma_a");
    require(finite(a.lambda0) && a.lambda0 > 0.0, "lambda0 > 0");
    require(finite(a.delta_a), "finite delta_a");
}

void validate(const TrapState& t)
{
    require(finite(t.mass) && t.mass > 0.0, "mass > 0");
    require(finite(t.omega_t) && t.omega_t > 0.0, "omega_t > 0");
    require(finite(t.nbar) && t.nbar >= 0.0, "nbar >= 0");
    if (t.eta_override)
    {
        require(finite(*t.eta_override) && *t.eta_override >= 0.0, "eta_override >= 0");
    }
}

void validate(const CollectionGeometry& c)
{
    require(finite(c.delta_i) && finite(c.delta_o), "finite collection angles");
    require(c.delta_i >= 0.0, "delta_i >= 0");
    require(c.delta_i < c.delta_o, "delta_i < delta_o");
    require(c.delta_o <= constants::pi / 4.0, "delta_o <= pi/4");
}

void validate(const PulseSpec& p)
{
    require(finite(p.omega0), "finite omega0");
    require(finite(p.tau) && p.tau > 0.0, "tau > 0");
    require(finite(p.amplitude) && p.amplitude >= 0.0, "amplitude >= 0");
}

Complex lorentzian(double delta, double gamma)
{
    if (!(gamma > 0.0))
    {
        throw DomainError("lorentzian: linewidth must be positive");
    }
    return gamma / Complex(gamma, -delta);
}

double cooperativity(const CavityQDParams& p)
{
    return 4.0 * p.g * p.g / (p.gamma_qd * p.kappa);
}

namespace
{
// Shared denominator 1 - i Delta + C L(delta_qd, gamma_qd) and its numerator.
struct CavityResponse
{
    Complex numerator;
    Complex denominator;
};

CavityResponse cavity_response(double omega, const CavityQDParams& p)
{
    const double scaled = (omega - p.omega_c) / p.kappa;
    Complex qd{0.0, 0.0};
    if (p.coupled)
    {
        const double delta_qd = (omega - p.omega_c) + p.delta_qd;
        qd = cooperativity(p) * lorentzian(delta_qd, p.gamma_qd);
    }
    const Complex numerator = Complex(0.0, -scaled) + qd;
    return {numerator, 1.0 + numerator};
}
} // namespace

Complex cavity_reflectivity(double omega, const CavityQDParams& p)
{
    const auto response = cavity_response(omega, p);
    return response.numerator / response.denominator;
}

Complex cavity_transmission(double omega, const CavityQDParams& p)
{
    return 1.0 / cavity_response(omega, p).denominator;
}

double atomic_cross_section(double lambda0)
{
    return 3.0 * lambda0 * lambda0 / constants::two_pi;
}

double radiative_decay_rate(double omega0, double dipole)
{
    using namespace constants;
    const double c3 = speed_of_light * speed_of_light * speed_of_light;
    return omega0 * omega0 * omega0 * dipole * dipole / (6.0 * pi * vacuum_permittivity * hbar * c3);
}

double scattered_photon_number(const AtomParams& a, double n_i)
{
    const double line = std::norm(lorentzian(a.delta_a, a.gamma_a));
    const double branching = a.gamma_r / a.gamma_a;
    return line * branching * branching * atomic_cross_section(a.lambda0) * n_i;
}

double lamb_dicke(const TrapState& t, double lambda0)
{
    const double k = constants::two_pi / lambda0;
    return k * std::sqrt(constants::hbar / (2.0 * t.mass * t.omega_t));
}

double effective_lamb_dicke(const TrapState& t, double lambda0)
{
    return t.eta_override ? *t.eta_override : lamb_dicke(t, lambda0);
}

double collection_area(const CollectionGeometry& c)
{
    return constants::two_pi * (std::cos(c.delta_i) - std::cos(c.delta_o));
}

double collection_area_paraxial(const CollectionGeometry& c)
{
    return constants::pi * (c.delta_o * c.delta_o - c.delta_i * c.delta_i);
}

CavityQDParams default_cavity()
{
    CavityQDParams p;
    p.g = ghz_to_angular(16.0);
    p.kappa = ghz_to_angular(25.0);
    p.gamma_qd = ghz_to_angular(1.0);
    return p;
}

AtomParams default_atom()
{
    AtomParams a;
    a.gamma_a = mhz_to_angular(4.2);
    a.gamma_r = a.gamma_a;
    a.lambda0 = 935e-9;
    a.delta_a = ghz_to_angular(1.0);
    return a;
}

TrapState default_trap()
{
    TrapState t;
    t.mass = 171.0 * constants::atomic_mass_unit;
    t.omega_t = 1e6;
    t.nbar = 10.0;
    t.eta_override = 0.09;
    return t;
}

CollectionGeometry default_collection()
{
    return CollectionGeometry{0.0, constants::pi / 4.0};
}

PulseSpec default_pulse()
{
    return PulseSpec{0.0, 1.0, 1.0};
}

} // namespace hylink
