#include "hylink/sweep_optimizer.hpp"

#include "hylink/constants.hpp"
#include "hylink/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace hylink
{
namespace
{
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_real(double x)
{
    // Shortest text that parses back to the same double.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_list(const std::vector<double>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        if (i != 0)
        {
            out += ',';
        }
        out += format_real(xs[i]);
    }
    return out;
}
} // namespace

double pulse_duration_for_fidelity(double f_target, double delta_a, const SpectralScenario& base,
                                   const numerics::QuadratureSpec& quad)
{
    if (!(f_target > 0.25) || !(f_target < 1.0))
    {
        throw InfeasibleError("pulse_duration_for_fidelity: target must lie in (0.25, 1)");
    }
    SpectralScenario s = base;
    s.atom.delta_a = delta_a;

    auto fidelity_at_log_tau = [&](double log_tau) {
        s.pulse.tau = std::exp(log_tau);
        return spectral_fidelity(s, quad);
    };

    // Long-to-short scan, four samples per decade; the first sample below
    // target bounds the longest-tau crossing.
    const double log_hi = std::log(kPulseSearchMaxNs);
    const double log_lo = std::log(kPulseSearchMinNs);
    constexpr int samples = 25;
    std::vector<std::pair<double, double>> curve;
    curve.reserve(samples);
    for (int i = 0; i < samples; ++i)
    {
        const double u = log_hi + (log_lo - log_hi) * static_cast<double>(i) / (samples - 1);
        const double f = fidelity_at_log_tau(u);
        curve.emplace_back(u, f);
        if (f < f_target)
        {
            break;
        }
    }

    const auto describe = [&] {
        std::ostringstream msg;
        msg << "no fidelity crossing of " << f_target << " for tau in [1 ps, 1 us]; scanned";
        for (const auto& [u, f] : curve)
        {
            msg << " (" << std::exp(u) << " ns, " << f << ")";
        }
        return msg.str();
    };

    if (curve.front().second < f_target || curve.back().second >= f_target)
    {
        throw InfeasibleError(describe());
    }

    const double u_short = curve.back().first;
    const double u_long = curve[curve.size() - 2].first;
    numerics::RootSpec spec{u_short, u_long, 1e-10, 200};
    const double u = numerics::find_root([&](double x) { return fidelity_at_log_tau(x) - f_target; }, spec);
    return std::exp(u);
}

double intensity_for_scatter(double n_s_target, double delta_a, double tau, const AtomParams& atom)
{
    validate(atom);
    if (!(n_s_target >= 0.0) || !(tau > 0.0))
    {
        throw DomainError("intensity_for_scatter: require n_s_target >= 0 and tau > 0");
    }
    if (!(atom.gamma_r > 0.0))
    {
        throw DomainError("intensity_for_scatter: no radiative decay into the collected transition");
    }
    using namespace constants;
    const double photon_energy = hbar * two_pi * speed_of_light / atom.lambda0; // J
    const double line = std::norm(lorentzian(delta_a, atom.gamma_a));
    const double branching = atom.gamma_r / atom.gamma_a;
    const double tau_s = tau * seconds_per_ns;
    const double w_per_m2 =
        n_s_target * photon_energy / (line * branching * branching * atomic_cross_section(atom.lambda0) * tau_s);
    return w_per_m2 * m2_per_cm2;
}

OptimalCollection optimal_collection_angle(double f_target, double eta, double nbar, double delta_max)
{
    if (!(f_target > 0.25) || !(f_target < 1.0))
    {
        throw InfeasibleError("optimal_collection_angle: target fidelity must lie in (0.25, 1)");
    }
    if (!(delta_max > 0.0) || delta_max > constants::pi / 4.0)
    {
        throw DomainError("optimal_collection_angle: require 0 < delta_max <= pi/4");
    }
    if (!(eta >= 0.0) || !(nbar >= 0.0))
    {
        throw DomainError("optimal_collection_angle: require eta >= 0 and nbar >= 0");
    }

    // Recoil alone caps the fidelity; beyond this angle no photon number works.
    auto recoil_limit = [&](double delta) {
        const double q = q_factor(recoil_exponent(eta, nbar, delta));
        return 0.5 * (1.0 + q) / (2.0 - q);
    };
    double feasible_max = delta_max;
    if (recoil_limit(delta_max) < f_target)
    {
        feasible_max = numerics::find_root([&](double d) { return recoil_limit(d) - f_target; },
                                           numerics::RootSpec{0.0, delta_max, 1e-14, 400});
    }
    if (!(feasible_max > 0.0))
    {
        throw InfeasibleError("optimal_collection_angle: fidelity target unreachable at any angle");
    }

    // Round-off can put the recoil root a hair past the feasible edge, where
    // the allowed photon number is zero anyway.
    auto allowed_n_s = [&](double delta) {
        try
        {
            return n_s_for_fidelity(f_target, eta, nbar, delta);
        }
        catch (const InfeasibleError&)
        {
            return 0.0;
        }
    };
    auto probability = [&](double delta) {
        return -std::expm1(-3.0 * allowed_n_s(delta) * delta * delta / 32.0);
    };

    const auto best = numerics::maximize_1d(probability, 0.0, feasible_max, 1e-10);
    OptimalCollection out;
    out.delta = best.x;
    out.success_probability = best.value;
    out.n_s = allowed_n_s(best.x);
    out.multimodal_warning = best.multimodal_warning;
    return out;
}

std::string_view to_string(FigureId id)
{
    switch (id)
    {
    case FigureId::fig3:
        return "fig3";
    case FigureId::fig4:
        return "fig4";
    case FigureId::fig5:
        return "fig5";
    case FigureId::fig6:
        return "fig6";
    case FigureId::fig7:
        return "fig7";
    }
    return "unknown";
}

std::optional<FigureId> parse_figure_id(std::string_view text)
{
    for (auto id : {FigureId::fig3, FigureId::fig4, FigureId::fig5, FigureId::fig6, FigureId::fig7})
    {
        if (text == to_string(id))
        {
            return id;
        }
    }
    return std::nullopt;
}

void GridAxis::validate() const
{
    if (count < 2)
    {
        throw DomainError("grid: count must be at least 2");
    }
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max))
    {
        throw DomainError("grid: require finite min < max");
    }
    if (scale == GridScale::log && !(min > 0.0))
    {
        throw DomainError("grid: log scale requires min > 0");
    }
}

std::vector<double> GridAxis::values() const
{
    validate();
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
    {
        const double t = static_cast<double>(i) / (count - 1);
        if (i == count - 1)
        {
            xs[i] = max;
        }
        else if (scale == GridScale::linear)
        {
            xs[i] = min + (max - min) * t;
        }
        else
        {
            xs[i] = min * std::pow(max / min, t);
        }
    }
    return xs;
}

SweepRequest default_request(FigureId figure, const SpectralScenario& spectral, double eta)
{
    SweepRequest req;
    req.figure = figure;
    req.spectral = spectral;
    req.eta = eta;
    switch (figure)
    {
    case FigureId::fig3:
        req.grid = {0.01, 100.0, 60, GridScale::log};
        req.series = {0.1, 1.0, 10.0};
        break;
    case FigureId::fig4:
        req.grid = {0.05, 20.0, 30, GridScale::log};
        break;
    case FigureId::fig5:
    case FigureId::fig6:
        req.grid = {0.01, constants::pi / 4.0, 60, GridScale::linear};
        req.series = {0.0, 10.0, 100.0, 1000.0};
        break;
    case FigureId::fig7:
        req.grid = {0.0, 200.0, 101, GridScale::linear};
        break;
    }
    return req;
}

bool SweepResult::any_flagged() const
{
    return std::any_of(flags.begin(), flags.end(), [](const std::string& f) { return !f.empty(); });
}

const Column* SweepResult::find(std::string_view name) const
{
    for (const auto& c : columns)
    {
        if (c.name == name)
        {
            return &c;
        }
    }
    return nullptr;
}

std::string_view tool_version() { return "hybridlink 0.1.0"; }

namespace
{
struct Point
{
    double axis;
    double series;
};

struct Row
{
    std::vector<double> values;
    std::string flag;
};

using PointEvaluator = std::function<std::vector<double>(const Point&)>;

std::vector<Row> evaluate_points(const std::vector<Point>& points, const PointEvaluator& eval,
                                 std::size_t width, unsigned threads)
{
    std::vector<Row> rows(points.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++)
        {
            try
            {
                rows[i].values = eval(points[i]);
            }
            catch (const InfeasibleError& e)
            {
                rows[i].flag = std::string("infeasible: ") + e.what();
            }
            catch (const ConvergenceError& e)
            {
                rows[i].flag = std::string("no convergence: ") + e.what();
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
            }
        }
    };

    unsigned n = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(points.size(), 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < n; ++t)
        {
            pool.emplace_back(worker);
        }
        worker();
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
    for (auto& row : rows)
    {
        if (!row.flag.empty())
        {
            row.values.assign(width, kNaN);
        }
    }
    return rows;
}

std::vector<Point> cross(const std::vector<double>& series, const std::vector<double>& axis)
{
    std::vector<Point> pts;
    pts.reserve(series.size() * axis.size());
    for (double s : series)
    {
        for (double x : axis)
        {
            pts.push_back({x, s});
        }
    }
    return pts;
}

std::vector<Point> single(const std::vector<double>& axis)
{
    std::vector<Point> pts;
    pts.reserve(axis.size());
    for (double x : axis)
    {
        pts.push_back({x, kNaN});
    }
    return pts;
}

void echo_request(const SweepRequest& req, SweepResult& out)
{
    auto& md = out.metadata;
    md.emplace_back("tool_version", std::string(tool_version()));
    md.emplace_back("figure", std::string(to_string(req.figure)));
    md.emplace_back("grid_min", format_real(req.grid.min));
    md.emplace_back("grid_max", format_real(req.grid.max));
    md.emplace_back("grid_count", std::to_string(req.grid.count));
    md.emplace_back("grid_scale", req.grid.scale == GridScale::log ? "log" : "linear");
    md.emplace_back("series", format_list(req.series));

    const auto& s = req.spectral;
    md.emplace_back("g_rad_per_ns", format_real(s.cavity.g));
    md.emplace_back("kappa_rad_per_ns", format_real(s.cavity.kappa));
    md.emplace_back("gamma_qd_rad_per_ns", format_real(s.cavity.gamma_qd));
    md.emplace_back("omega_c_rad_per_ns", format_real(s.cavity.omega_c));
    md.emplace_back("delta_qd_rad_per_ns", format_real(s.cavity.delta_qd));
    md.emplace_back("qd_coupled", s.cavity.coupled ? "true" : "false");
    md.emplace_back("gamma_a_rad_per_ns", format_real(s.atom.gamma_a));
    md.emplace_back("gamma_r_rad_per_ns", format_real(s.atom.gamma_r));
    md.emplace_back("lambda_m", format_real(s.atom.lambda0));
    md.emplace_back("delta_a_rad_per_ns", format_real(s.atom.delta_a));
    md.emplace_back("pulse_omega0_rad_per_ns", format_real(s.pulse.omega0));
    md.emplace_back("pulse_tau_ns", format_real(s.pulse.tau));
    md.emplace_back("pulse_amplitude", format_real(s.pulse.amplitude));
    md.emplace_back("atom_branch", s.atom_branch ? "true" : "false");
    md.emplace_back("eta", format_real(req.eta));
    md.emplace_back("f_target", format_real(req.constraints.f_target));
    md.emplace_back("n_s_target", format_real(req.constraints.n_s_target));
    md.emplace_back("delta_max_rad", format_real(req.constraints.delta_max));
    md.emplace_back("quad_rel_tol", format_real(req.quadrature.rel_tol));
    md.emplace_back("quad_abs_tol", format_real(req.quadrature.abs_tol));
    md.emplace_back("quad_max_subdivisions", std::to_string(req.quadrature.max_subdivisions));
}
} // namespace

SweepResult run_sweep(const SweepRequest& req)
{
    const auto start = std::chrono::steady_clock::now();
    validate(req.spectral);
    const std::vector<double> axis = req.grid.values();
    if (req.series.empty() &&
        (req.figure == FigureId::fig3 || req.figure == FigureId::fig5 || req.figure == FigureId::fig6))
    {
        throw DomainError("run_sweep: this figure needs at least one series value");
    }
    if (!(req.eta >= 0.0))
    {
        throw DomainError("run_sweep: eta must be non-negative");
    }

    SweepResult out;
    echo_request(req, out);

    std::vector<std::string> names;
    std::vector<Point> points;
    PointEvaluator eval;
    const auto& c = req.constraints;

    switch (req.figure)
    {
    case FigureId::fig3:
        names = {"tau_ns", "delta_a_ghz", "fidelity"};
        points = cross(req.series, axis);
        eval = [&](const Point& p) {
            SpectralScenario s = req.spectral;
            s.pulse.tau = p.axis;
            s.atom.delta_a = ghz_to_angular(p.series);
            return std::vector<double>{p.axis, p.series, spectral_fidelity(s, req.quadrature)};
        };
        break;
    case FigureId::fig4:
        names = {"delta_a_ghz", "tau_ns", "intensity_w_per_cm2"};
        points = single(axis);
        eval = [&](const Point& p) {
            const double delta_a = ghz_to_angular(p.axis);
            const double tau = pulse_duration_for_fidelity(c.f_target, delta_a, req.spectral, req.quadrature);
            const double intensity = intensity_for_scatter(c.n_s_target, delta_a, tau, req.spectral.atom);
            return std::vector<double>{p.axis, tau, intensity};
        };
        break;
    case FigureId::fig5:
        names = {"delta_rad", "nbar", "fidelity"};
        points = cross(req.series, axis);
        eval = [&](const Point& p) {
            return std::vector<double>{p.axis, p.series, recoil_fidelity({req.eta, p.series, p.axis, 0.0})};
        };
        break;
    case FigureId::fig6:
        names = {"delta_rad", "nbar", "n_s", "success_probability"};
        points = cross(req.series, axis);
        eval = [&](const Point& p) {
            const double n_s = n_s_for_fidelity(c.f_target, req.eta, p.series, p.axis);
            const double prob = success_probability({req.eta, p.series, p.axis, n_s});
            return std::vector<double>{p.axis, p.series, n_s, prob};
        };
        break;
    case FigureId::fig7:
        names = {"nbar", "p_opt", "delta_opt_rad"};
        points = single(axis);
        eval = [&](const Point& p) {
            const auto best = optimal_collection_angle(c.f_target, req.eta, p.axis, c.delta_max);
            return std::vector<double>{p.axis, best.success_probability, best.delta};
        };
        break;
    }

    const auto rows = evaluate_points(points, eval, names.size(), req.threads);

    out.columns.resize(names.size());
    for (std::size_t j = 0; j < names.size(); ++j)
    {
        out.columns[j].name = names[j];
        out.columns[j].values.reserve(rows.size());
    }
    out.flags.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        for (std::size_t j = 0; j < names.size(); ++j)
        {
            out.columns[j].values.push_back(rows[i].values[j]);
        }
        out.flags.push_back(rows[i].flag);
    }
    // Flagged rows keep their grid coordinates.
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].flag.empty())
        {
            continue;
        }
        const bool curve_family = !std::isnan(points[i].series);
        out.columns[0].values[i] = points[i].axis;
        if (curve_family)
        {
            out.columns[1].values[i] = points[i].series;
        }
    }

    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace hylink
