#include "hylink/config.hpp"

#include "hylink/constants.hpp"
#include "hylink/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>
#include <variant>

namespace hylink
{
namespace
{
using Field = std::variant<double RunConfig::*, bool RunConfig::*, int RunConfig::*, std::string RunConfig::*,
                           std::optional<double> RunConfig::*, std::optional<int> RunConfig::*,
                           std::optional<std::string> RunConfig::*,
                           std::optional<std::vector<double>> RunConfig::*>;

struct KeyDef
{
    std::string_view name;
    Field field;
};

const std::vector<KeyDef>& key_table()
{
    static const std::vector<KeyDef> keys = {
        {"g_ghz", &RunConfig::g_ghz},
        {"kappa_ghz", &RunConfig::kappa_ghz},
        {"gamma_qd_ghz", &RunConfig::gamma_qd_ghz},
        {"qd_detuning_ghz", &RunConfig::qd_detuning_ghz},
        {"qd_coupled", &RunConfig::qd_coupled},
        {"gamma_a_mhz", &RunConfig::gamma_a_mhz},
        {"gamma_r_over_gamma_a", &RunConfig::gamma_r_over_gamma_a},
        {"lambda_nm", &RunConfig::lambda_nm},
        {"delta_a_ghz", &RunConfig::delta_a_ghz},
        {"atom_branch", &RunConfig::atom_branch},
        {"atom_mass_amu", &RunConfig::atom_mass_amu},
        {"trap_omega_t_rad_per_s", &RunConfig::trap_omega_t_rad_per_s},
        {"nbar", &RunConfig::nbar},
        {"eta_override", &RunConfig::eta_override},
        {"collection_inner_rad", &RunConfig::collection_inner_rad},
        {"collection_outer_rad", &RunConfig::collection_outer_rad},
        {"pulse_offset_ghz", &RunConfig::pulse_offset_ghz},
        {"tau_ns", &RunConfig::tau_ns},
        {"pulse_amplitude", &RunConfig::pulse_amplitude},
        {"n_s", &RunConfig::n_s},
        {"n_ref", &RunConfig::n_ref},
        {"tau_mod_ns", &RunConfig::tau_mod_ns},
        {"quad_rel_tol", &RunConfig::quad_rel_tol},
        {"quad_abs_tol", &RunConfig::quad_abs_tol},
        {"quad_max_subdivisions", &RunConfig::quad_max_subdivisions},
        {"threads", &RunConfig::threads},
        {"f_target", &RunConfig::f_target},
        {"n_s_target", &RunConfig::n_s_target},
        {"delta_max_rad", &RunConfig::delta_max_rad},
        {"sweep_figure", &RunConfig::sweep_figure},
        {"sweep_min", &RunConfig::sweep_min},
        {"sweep_max", &RunConfig::sweep_max},
        {"sweep_count", &RunConfig::sweep_count},
        {"sweep_scale", &RunConfig::sweep_scale},
        {"sweep_series", &RunConfig::sweep_series},
    };
    return keys;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
    {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Thrown by value parsers; the caller prefixes key and line.
struct ValueError
{
    std::string message;
};

double parse_real(std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
    {
        throw ValueError{"expected a number, got '" + std::string(text) + "'"};
    }
    if (!std::isfinite(value))
    {
        throw ValueError{"value must be finite"};
    }
    return value;
}

int parse_int(std::string_view text)
{
    text = trim(text);
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
    {
        throw ValueError{"expected an integer, got '" + std::string(text) + "'"};
    }
    return value;
}

bool parse_bool(std::string_view text)
{
    if (text == "true" || text == "yes" || text == "1")
    {
        return true;
    }
    if (text == "false" || text == "no" || text == "0")
    {
        return false;
    }
    throw ValueError{"expected true or false, got '" + std::string(text) + "'"};
}

std::vector<double> parse_list(std::string_view text)
{
    std::vector<double> out;
    if (trim(text).empty())
    {
        return out;
    }
    std::size_t start = 0;
    while (true)
    {
        const auto comma = text.find(',', start);
        out.push_back(parse_real(text.substr(start, comma - start)));
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string format_real(double x)
{
    // Shortest text that parses back to the same double.
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class>
inline constexpr bool always_false = false;

void assign(RunConfig& c, const Field& field, std::string_view text)
{
    const bool none = (text == "none");
    std::visit(
        [&](auto member) {
            using T = std::remove_cvref_t<decltype(c.*member)>;
            auto& slot = c.*member;
            if constexpr (std::is_same_v<T, double>)
            {
                slot = parse_real(text);
            }
            else if constexpr (std::is_same_v<T, bool>)
            {
                slot = parse_bool(text);
            }
            else if constexpr (std::is_same_v<T, int>)
            {
                slot = parse_int(text);
            }
            else if constexpr (std::is_same_v<T, std::string>)
            {
                slot = std::string(text);
            }
            else if constexpr (std::is_same_v<T, std::optional<double>>)
            {
                slot = none ? std::nullopt : std::optional<double>(parse_real(text));
            }
            else if constexpr (std::is_same_v<T, std::optional<int>>)
            {
                slot = none ? std::nullopt : std::optional<int>(parse_int(text));
            }
            else if constexpr (std::is_same_v<T, std::optional<std::string>>)
            {
                slot = none ? std::nullopt : std::optional<std::string>(std::string(text));
            }
            else if constexpr (std::is_same_v<T, std::optional<std::vector<double>>>)
            {
                slot = none ? std::nullopt : std::optional<std::vector<double>>(parse_list(text));
            }
            else
            {
                static_assert(always_false<T>);
            }
        },
        field);
}

std::string render(const RunConfig& c, const Field& field)
{
    return std::visit(
        [&](auto member) -> std::string {
            using T = std::remove_cvref_t<decltype(c.*member)>;
            const auto& v = c.*member;
            if constexpr (std::is_same_v<T, double>)
            {
                return format_real(v);
            }
            else if constexpr (std::is_same_v<T, bool>)
            {
                return v ? "true" : "false";
            }
            else if constexpr (std::is_same_v<T, int>)
            {
                return std::to_string(v);
            }
            else if constexpr (std::is_same_v<T, std::string>)
            {
                return v;
            }
            else if constexpr (std::is_same_v<T, std::optional<double>>)
            {
                return v ? format_real(*v) : "none";
            }
            else if constexpr (std::is_same_v<T, std::optional<int>>)
            {
                return v ? std::to_string(*v) : "none";
            }
            else if constexpr (std::is_same_v<T, std::optional<std::string>>)
            {
                return v ? *v : "none";
            }
            else if constexpr (std::is_same_v<T, std::optional<std::vector<double>>>)
            {
                if (!v)
                {
                    return "none";
                }
                std::string out;
                for (std::size_t i = 0; i < v->size(); ++i)
                {
                    out += (i ? "," : "") + format_real((*v)[i]);
                }
                return out;
            }
            else
            {
                static_assert(always_false<T>);
            }
        },
        field);
}

using LineMap = std::map<std::string, int, std::less<>>;

class Checker
{
public:
    Checker(std::string_view origin, const LineMap& lines) : origin_(origin), lines_(lines) {}

    void require(bool ok, std::string_view key, std::string_view invariant) const
    {
        if (ok)
        {
            return;
        }
        std::string msg(origin_);
        if (const auto it = lines_.find(key); it != lines_.end())
        {
            msg += ":" + std::to_string(it->second);
        }
        msg += ": " + std::string(key) + ": violates " + std::string(invariant);
        throw ConfigError(msg);
    }

private:
    std::string_view origin_;
    const LineMap& lines_;
};

void check_all(const RunConfig& c, const Checker& k)
{
    const double quarter_pi = constants::pi / 4.0;
    k.require(c.g_ghz >= 0.0, "g_ghz", "g >= 0");
    k.require(c.kappa_ghz > 0.0, "kappa_ghz", "kappa > 0");
    k.require(c.gamma_qd_ghz > 0.0, "gamma_qd_ghz", "gamma_qd > 0");
    k.require(c.gamma_a_mhz > 0.0, "gamma_a_mhz", "gamma_a > 0");
    k.require(c.gamma_r_over_gamma_a >= 0.0 && c.gamma_r_over_gamma_a <= 1.0, "gamma_r_over_gamma_a",
              "0 <= gamma_r <= gamma_a");
    k.require(c.lambda_nm > 0.0, "lambda_nm", "lambda > 0");
    k.require(c.atom_mass_amu > 0.0, "atom_mass_amu", "mass > 0");
    k.require(c.trap_omega_t_rad_per_s > 0.0, "trap_omega_t_rad_per_s", "omega_t > 0");
    k.require(c.nbar >= 0.0, "nbar", "nbar >= 0");
    k.require(!c.eta_override || *c.eta_override >= 0.0, "eta_override", "eta >= 0");
    k.require(c.collection_inner_rad >= 0.0, "collection_inner_rad", "delta_i >= 0");
    k.require(c.collection_inner_rad < c.collection_outer_rad, "collection_outer_rad", "delta_i < delta_o");
    k.require(c.collection_outer_rad <= quarter_pi, "collection_outer_rad", "delta_o <= pi/4");
    k.require(c.tau_ns > 0.0, "tau_ns", "tau > 0");
    k.require(c.pulse_amplitude >= 0.0, "pulse_amplitude", "amplitude >= 0");
    k.require(c.n_s >= 0.0, "n_s", "n_s >= 0");
    k.require(c.n_ref >= 0.0, "n_ref", "n_ref >= 0");
    k.require(!c.tau_mod_ns || *c.tau_mod_ns > 0.0, "tau_mod_ns", "tau_mod > 0");
    k.require(c.quad_rel_tol > 0.0, "quad_rel_tol", "rel_tol > 0");
    k.require(c.quad_abs_tol >= 0.0, "quad_abs_tol", "abs_tol >= 0");
    k.require(c.quad_max_subdivisions >= 1, "quad_max_subdivisions", "max_subdivisions >= 1");
    k.require(c.threads >= 0, "threads", "threads >= 0");
    k.require(c.f_target > 0.25 && c.f_target < 1.0, "f_target", "1/4 < F_target < 1");
    k.require(c.n_s_target >= 0.0, "n_s_target", "N_s_target >= 0");
    k.require(c.delta_max_rad > 0.0 && c.delta_max_rad <= quarter_pi, "delta_max_rad",
              "0 < delta_max <= pi/4");
    k.require(parse_figure_id(c.sweep_figure).has_value(), "sweep_figure", "one of fig3..fig7");
    k.require(!c.sweep_scale || *c.sweep_scale == "linear" || *c.sweep_scale == "log", "sweep_scale",
              "linear or log");
    k.require(!c.sweep_count || *c.sweep_count >= 2, "sweep_count", "count >= 2");
}
} // namespace

std::vector<std::string_view> config_keys()
{
    std::vector<std::string_view> out;
    for (const auto& k : key_table())
    {
        out.push_back(k.name);
    }
    return out;
}

RunConfig parse_config(std::string_view text, std::string_view origin)
{
    RunConfig c;
    LineMap lines;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
        {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty())
        {
            continue;
        }

        const std::string where = std::string(origin) + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            throw ConfigError(where + ": expected 'key = value'");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        const auto& table = key_table();
        const auto it = std::find_if(table.begin(), table.end(), [&](const KeyDef& d) { return d.name == key; });
        if (it == table.end())
        {
            throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
        }
        if (!lines.emplace(std::string(key), line_no).second)
        {
            throw ConfigError(where + ": duplicate key '" + std::string(key) + "'");
        }
        try
        {
            assign(c, it->field, value);
        }
        catch (const ValueError& e)
        {
            throw ConfigError(where + ": " + std::string(key) + ": " + e.message);
        }
    }
    check_all(c, Checker(origin, lines));
    return c;
}

RunConfig parse_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw IoError("cannot read config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string serialize_config(const RunConfig& c)
{
    std::string out;
    for (const auto& k : key_table())
    {
        out += std::string(k.name) + " = " + render(c, k.field) + "\n";
    }
    return out;
}

void validate(const RunConfig& c)
{
    const LineMap none;
    check_all(c, Checker("config", none));
}

CavityQDParams cavity_params(const RunConfig& c)
{
    CavityQDParams p;
    p.g = ghz_to_angular(c.g_ghz);
    p.kappa = ghz_to_angular(c.kappa_ghz);
    p.gamma_qd = ghz_to_angular(c.gamma_qd_ghz);
    p.omega_c = 0.0;
    p.delta_qd = ghz_to_angular(c.qd_detuning_ghz);
    p.coupled = c.qd_coupled;
    return p;
}

AtomParams atom_params(const RunConfig& c)
{
    AtomParams a;
    a.gamma_a = mhz_to_angular(c.gamma_a_mhz);
    a.gamma_r = a.gamma_a * c.gamma_r_over_gamma_a;
    a.lambda0 = c.lambda_nm * 1e-9;
    a.delta_a = ghz_to_angular(c.delta_a_ghz);
    return a;
}

TrapState trap_state(const RunConfig& c)
{
    TrapState t;
    t.mass = c.atom_mass_amu * constants::atomic_mass_unit;
    t.omega_t = c.trap_omega_t_rad_per_s;
    t.nbar = c.nbar;
    t.eta_override = c.eta_override;
    return t;
}

CollectionGeometry collection_geometry(const RunConfig& c)
{
    return CollectionGeometry{c.collection_inner_rad, c.collection_outer_rad};
}

PulseSpec pulse_spec(const RunConfig& c)
{
    return PulseSpec{ghz_to_angular(c.pulse_offset_ghz), c.tau_ns, c.pulse_amplitude};
}

SpectralScenario spectral_scenario(const RunConfig& c)
{
    SpectralScenario s;
    s.pulse = pulse_spec(c);
    s.cavity = cavity_params(c);
    s.atom = atom_params(c);
    s.atom_branch = c.atom_branch;
    return s;
}

double resolved_eta(const RunConfig& c)
{
    return effective_lamb_dicke(trap_state(c), c.lambda_nm * 1e-9);
}

RecoilScenario recoil_scenario(const RunConfig& c)
{
    return RecoilScenario{resolved_eta(c), c.nbar, c.collection_outer_rad, c.n_s};
}

numerics::QuadratureSpec quadrature_spec(const RunConfig& c)
{
    numerics::QuadratureSpec q;
    q.rel_tol = c.quad_rel_tol;
    q.abs_tol = c.quad_abs_tol;
    q.max_subdivisions = c.quad_max_subdivisions;
    return q;
}

double resolved_tau_mod_ns(const RunConfig& c)
{
    if (c.tau_mod_ns)
    {
        return *c.tau_mod_ns;
    }
    const auto cavity = cavity_params(c);
    return 1.0 / (cavity.gamma_qd * (1.0 + cooperativity(cavity)));
}

SweepConstraints sweep_constraints(const RunConfig& c)
{
    return SweepConstraints{c.f_target, c.n_s_target, c.delta_max_rad};
}

SweepRequest figure_request(const RunConfig& c, FigureId figure)
{
    SweepRequest req = default_request(figure, spectral_scenario(c), resolved_eta(c));
    req.constraints = sweep_constraints(c);
    req.quadrature = quadrature_spec(c);
    req.threads = static_cast<unsigned>(c.threads);
    return req;
}

SweepRequest custom_sweep_request(const RunConfig& c)
{
    SweepRequest req = figure_request(c, *parse_figure_id(c.sweep_figure));
    if (c.sweep_min)
    {
        req.grid.min = *c.sweep_min;
    }
    if (c.sweep_max)
    {
        req.grid.max = *c.sweep_max;
    }
    if (c.sweep_count)
    {
        req.grid.count = *c.sweep_count;
    }
    if (c.sweep_scale)
    {
        req.grid.scale = (*c.sweep_scale == "log") ? GridScale::log : GridScale::linear;
    }
    if (c.sweep_series)
    {
        req.series = *c.sweep_series;
    }
    return req;
}

} // namespace hylink
