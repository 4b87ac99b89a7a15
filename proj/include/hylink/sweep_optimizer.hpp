#pragma once

#include "hylink/core_model.hpp"
#include "hylink/fidelity_engine.hpp"
#include "hylink/numerics.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Inverse solves and the parameter sweeps behind each result figure.
namespace hylink
{
inline constexpr double kPulseSearchMinNs = 1e-3; // 1 ps
inline constexpr double kPulseSearchMaxNs = 1e3;  // 1 us

// Required pulse duration (ns) for the spectral fidelity to reach f_target at
// pulse-center atom detuning delta_a (rad/ns). The base scenario supplies the
// cavity, atom and pulse shape; its tau and atom.delta_a are overridden.
//
// Scans log(tau) over [1 ps, 1 us] for the longest-tau crossing, then solves
// it with Brent's method. Throws InfeasibleError carrying the scanned curve
// when no crossing exists.
double pulse_duration_for_fidelity(double f_target, double delta_a, const SpectralScenario& base,
                                   const numerics::QuadratureSpec& quad = {});

// Peak pump intensity (W/cm^2) that scatters n_s_target photons in a pulse of
// duration tau (ns) at detuning delta_a (rad/ns).
double intensity_for_scatter(double n_s_target, double delta_a, double tau, const AtomParams& atom);

struct OptimalCollection
{
    double delta = 0.0;               // optimal half-angle, rad
    double success_probability = 0.0; // at the optimum
    double n_s = 0.0;                 // scattered photons allowed at the optimum
    bool multimodal_warning = false;
};

// Maximizes the heralding probability over the collection half-angle in
// (0, delta_max] with the scattered photon number set by the fidelity target.
OptimalCollection optimal_collection_angle(double f_target, double eta, double nbar, double delta_max);

enum class FigureId
{
    fig3, // fidelity vs pulse duration, per atom detuning
    fig4, // required pulse duration and pump intensity vs detuning
    fig5, // recoil fidelity vs collection angle, per nbar
    fig6, // success probability vs collection angle at fixed fidelity, per nbar
    fig7, // optimal success probability and angle vs nbar
};

std::string_view to_string(FigureId id);
std::optional<FigureId> parse_figure_id(std::string_view text);

enum class GridScale
{
    linear,
    log,
};

struct GridAxis
{
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    GridScale scale = GridScale::linear;

    // Throws DomainError unless count >= 2, min < max and (log) min > 0.
    void validate() const;
    std::vector<double> values() const;
};

struct SweepConstraints
{
    double f_target = 0.9;
    double n_s_target = 0.1;
    double delta_max = constants::pi / 4.0;
};

// Axis and series units follow the output columns: tau in ns, atom detuning
// in GHz, collection angle in rad, nbar dimensionless.
struct SweepRequest
{
    FigureId figure = FigureId::fig3;
    GridAxis grid;
    // Curve parameter: atom detunings (GHz) for fig3, nbar values for fig5/fig6.
    std::vector<double> series;

    SpectralScenario spectral;
    double eta = 0.09;
    SweepConstraints constraints;
    numerics::QuadratureSpec quadrature;
    // Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

// Default grids for each figure on top of the given fixed parameters.
SweepRequest default_request(FigureId figure, const SpectralScenario& spectral, double eta);

struct Column
{
    std::string name;
    std::vector<double> values;
};

struct SweepResult
{
    std::vector<Column> columns;
    // Per row; empty string for a good row, otherwise the reason it is flagged.
    std::vector<std::string> flags;
    // Ordered input echo: request parameters, tool version, tolerances.
    std::vector<std::pair<std::string, std::string>> metadata;
    double wall_time_s = 0.0;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().values.size(); }
    bool any_flagged() const;
    const Column* find(std::string_view name) const;
};

// Evaluate one figure. Rows are in grid order (series-major for curve
// families) regardless of how points are scheduled across threads. Points
// that cannot be solved are flagged and carry NaN values.
SweepResult run_sweep(const SweepRequest& request);

std::string_view tool_version();

} // namespace hylink
