#pragma once

#include "hylink/core_model.hpp"
#include "hylink/fidelity_engine.hpp"
#include "hylink/numerics.hpp"
#include "hylink/sweep_optimizer.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Run configuration: a flat `key = value` document in ordinary units.
//
//   # comment
//   g_ghz = 16
//   gamma_a_mhz = 4.2
//   eta_override = none      # use the first-principles Lamb-Dicke parameter
//
// Frequencies are ordinary (GHz, MHz) and converted to angular rad/ns by the
// accessors below; nothing else in the program converts configuration units.
// Unknown keys, duplicate keys, non-finite numbers and invariant violations
// are rejected with the key name and line number.
namespace hylink
{
struct RunConfig
{
    // cavity-QD node
    double g_ghz = 16.0;
    double kappa_ghz = 25.0;
    double gamma_qd_ghz = 1.0;
    double qd_detuning_ghz = 0.0; // cavity minus QD resonance
    bool qd_coupled = true;

    // atom node
    double gamma_a_mhz = 4.2;
    double gamma_r_over_gamma_a = 1.0;
    double lambda_nm = 935.0;
    double delta_a_ghz = 0.1;
    bool atom_branch = true;

    // trap
    double atom_mass_amu = 171.0;
    double trap_omega_t_rad_per_s = 1e6;
    double nbar = 10.0;
    std::optional<double> eta_override = 0.09;

    // collection optics
    double collection_inner_rad = 0.0;
    double collection_outer_rad = constants::pi / 4.0;

    // pulse
    double pulse_offset_ghz = 0.0; // pulse center minus cavity resonance
    double tau_ns = 10.0;
    double pulse_amplitude = 1.0;

    // photon numbers and weak-excitation inputs
    double n_s = 0.1;
    double n_ref = 0.01;
    std::optional<double> tau_mod_ns; // default 1 / (gamma_qd (1 + C))

    // numerics
    double quad_rel_tol = 1e-9;
    double quad_abs_tol = 1e-14;
    int quad_max_subdivisions = 10000;
    int threads = 0;

    // sweep constraints
    double f_target = 0.9;
    double n_s_target = 0.1;
    double delta_max_rad = constants::pi / 4.0;

    // generic sweep; unset grid fields fall back to the figure's default grid
    std::string sweep_figure = "fig3";
    std::optional<double> sweep_min;
    std::optional<double> sweep_max;
    std::optional<int> sweep_count;
    std::optional<std::string> sweep_scale;
    std::optional<std::vector<double>> sweep_series;

    bool operator==(const RunConfig&) const = default;
};

// Parse a document. `origin` labels error messages (a path or "<inline>").
RunConfig parse_config(std::string_view text, std::string_view origin = "<inline>");
// Throws IoError when the file cannot be read.
RunConfig parse_config_file(const std::filesystem::path& path);

// Canonical document listing every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

// Throws ConfigError naming the first violated invariant.
void validate(const RunConfig& c);

// Keys accepted by parse_config, in canonical order.
std::vector<std::string_view> config_keys();

CavityQDParams cavity_params(const RunConfig& c);
AtomParams atom_params(const RunConfig& c);
TrapState trap_state(const RunConfig& c);
CollectionGeometry collection_geometry(const RunConfig& c);
PulseSpec pulse_spec(const RunConfig& c);
SpectralScenario spectral_scenario(const RunConfig& c);
RecoilScenario recoil_scenario(const RunConfig& c);
numerics::QuadratureSpec quadrature_spec(const RunConfig& c);
double resolved_eta(const RunConfig& c);
double resolved_tau_mod_ns(const RunConfig& c);
SweepConstraints sweep_constraints(const RunConfig& c);

// Default grid for `figure`, filled with this configuration's fixed parameters.
SweepRequest figure_request(const RunConfig& c, FigureId figure);
// figure_request for sweep_figure with any sweep_* grid overrides applied.
SweepRequest custom_sweep_request(const RunConfig& c);

} // namespace hylink
