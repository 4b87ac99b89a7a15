#include "hylink/cli.hpp"

#include "hylink/config.hpp"
#include "hylink/errors.hpp"
#include "hylink/fidelity_engine.hpp"
#include "hylink/manifest.hpp"
#include "hylink/svg_plot.hpp"
#include "hylink/sweep_optimizer.hpp"
#include "hylink/table_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

namespace hylink
{
namespace
{
namespace fs = std::filesystem;

struct Options
{
    std::string config = "defaults";
    std::string out_dir = "out";
    std::string format = "csv";
    bool plot = false;
    std::optional<double> tol;

    std::optional<std::string> figure;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> count;
    std::optional<std::string> scale;
    std::optional<std::vector<double>> series;
};

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

RunConfig load_config(const Options& o)
{
    RunConfig c = (o.config == "defaults") ? RunConfig{} : parse_config_file(o.config);
    if (o.tol)
    {
        c.quad_rel_tol = *o.tol;
    }
    if (o.figure)
    {
        c.sweep_figure = *o.figure;
    }
    if (o.min)
    {
        c.sweep_min = *o.min;
    }
    if (o.max)
    {
        c.sweep_max = *o.max;
    }
    if (o.count)
    {
        c.sweep_count = *o.count;
    }
    if (o.scale)
    {
        c.sweep_scale = *o.scale;
    }
    if (o.series)
    {
        c.sweep_series = *o.series;
    }
    validate(c);
    return c;
}

TableFormat table_format(const Options& o)
{
    return *parse_table_format(o.format); // CLI11 restricts the choices
}

std::string join_command(const std::vector<std::string>& args)
{
    std::string s = "hybridlink";
    for (const auto& a : args)
    {
        s += " " + a;
    }
    return s;
}

using Report = std::vector<std::pair<std::string, std::string>>;

void print_report(const Report& report, TableFormat format, std::ostream& out)
{
    if (format == TableFormat::json)
    {
        nlohmann::ordered_json doc = nlohmann::ordered_json::object();
        for (const auto& [k, v] : report)
        {
            doc[k] = v;
        }
        out << doc.dump(2) << "\n";
        return;
    }
    for (const auto& [k, v] : report)
    {
        out << k << " = " << v << "\n";
    }
}

ValidityReport validity(const RunConfig& c)
{
    return weak_excitation_check(c.n_s, c.tau_ns, atom_params(c).gamma_a, c.n_ref, c.tau_ns,
                                 resolved_tau_mod_ns(c));
}

void add_validity(Report& r, const ValidityReport& v)
{
    r.emplace_back("atom_ratio", fmt(v.atom_ratio));
    r.emplace_back("atom_verdict", std::string(to_string(v.atom_verdict)));
    r.emplace_back("qd_ratio", fmt(v.qd_ratio));
    r.emplace_back("qd_verdict", std::string(to_string(v.qd_verdict)));
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err)
{
    const RunConfig c = load_config(o);
    const auto spectral = spectral_scenario(c);
    const auto recoil = recoil_scenario(c);
    const auto atom = atom_params(c);

    Report r;
    r.emplace_back("eta", fmt(recoil.eta));
    r.emplace_back("cooperativity", fmt(cooperativity(cavity_params(c))));
    r.emplace_back("spectral_fidelity", fmt(spectral_fidelity(spectral, quadrature_spec(c))));
    r.emplace_back("recoil_fidelity", fmt(recoil_fidelity(recoil)));
    r.emplace_back("multiphoton_fidelity", fmt(multiphoton_fidelity(recoil)));
    r.emplace_back("success_probability", fmt(success_probability(recoil)));
    r.emplace_back("intensity_w_per_cm2", fmt(intensity_for_scatter(c.n_s, atom.delta_a, c.tau_ns, atom)));
    add_validity(r, validity(c));

    int status = kExitOk;
    try
    {
        const double n_s = n_s_for_fidelity(c.f_target, recoil.eta, c.nbar, recoil.delta);
        r.emplace_back("n_s_at_f_target", fmt(n_s));
    }
    catch (const InfeasibleError& e)
    {
        r.emplace_back("n_s_at_f_target", "infeasible");
        err << "infeasible: " << e.what() << "\n";
        status = kExitInfeasible;
    }
    print_report(r, table_format(o), out);
    return status;
}

int cmd_check(const Options& o, std::ostream& out)
{
    const RunConfig c = load_config(o);
    const ValidityReport v = validity(c);
    Report r;
    add_validity(r, v);
    print_report(r, table_format(o), out);
    return v.any_fail() ? kExitCheckFailed : kExitOk;
}

int cmd_figure(const Options& o, const std::optional<FigureId> figure, const std::vector<std::string>& args,
               std::ostream& out)
{
    const auto start = std::chrono::steady_clock::now();
    const RunConfig c = load_config(o);
    const SweepRequest req = figure ? figure_request(c, *figure) : custom_sweep_request(c);
    const SweepResult result = run_sweep(req);
    const TableFormat format = table_format(o);
    const std::string stem = figure ? std::string(to_string(*figure)) : "sweep";

    // Render everything first so a rendering failure writes nothing.
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back(stem + std::string(file_extension(format)), render_table(result, format));
    if (o.plot)
    {
        files.emplace_back(stem + ".svg", render_svg(result, req.figure));
    }

    const fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
    {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }

    RunManifest m;
    m.tool_version = std::string(tool_version());
    m.command = join_command(args);
    m.config_echo = serialize_config(c);
    m.tolerances = {{"quad_rel_tol", fmt(c.quad_rel_tol)},
                    {"quad_abs_tol", fmt(c.quad_abs_tol)},
                    {"quad_max_subdivisions", std::to_string(c.quad_max_subdivisions)}};
    for (const auto& [name, content] : files)
    {
        write_text_file(dir / name, content);
        m.outputs.push_back({name, sha256_hex(content)});
    }
    m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text_file(dir / "manifest.json", render_manifest(m));

    std::size_t flagged = 0;
    for (const auto& f : result.flags)
    {
        flagged += f.empty() ? 0 : 1;
    }
    for (const auto& [name, content] : files)
    {
        out << "wrote " << (dir / name).string() << "\n";
    }
    out << "wrote " << (dir / "manifest.json").string() << "\n";
    if (flagged)
    {
        out << flagged << " of " << result.rows() << " rows flagged (see status column)\n";
    }
    return kExitOk;
}

void add_common(CLI::App* sub, Options& o, bool tables)
{
    sub->add_option("--config", o.config, "Configuration file, or 'defaults'");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", o.tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
    if (tables)
    {
        sub->add_option("--out", o.out_dir, "Output directory");
        sub->add_flag("--plot", o.plot, "Also write an SVG plot");
    }
}
} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fidelity and success-probability model for a heralded quantum-dot / trapped-ion link",
                 "hybridlink"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(tool_version()));

    Options o;
    CLI::App* eval = app.add_subcommand("eval", "Single-scenario report");
    add_common(eval, o, false);
    CLI::App* check = app.add_subcommand("check", "Weak-excitation validity check");
    add_common(check, o, false);

    std::vector<std::pair<CLI::App*, FigureId>> figures;
    for (FigureId id : {FigureId::fig3, FigureId::fig4, FigureId::fig5, FigureId::fig6, FigureId::fig7})
    {
        CLI::App* sub = app.add_subcommand(std::string(to_string(id)), "Reproduce " + std::string(to_string(id)));
        add_common(sub, o, true);
        figures.emplace_back(sub, id);
    }

    CLI::App* sweep = app.add_subcommand("sweep", "Figure sweep over a custom grid");
    add_common(sweep, o, true);
    sweep->add_option("--figure", o.figure, "Figure to sweep")
        ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6", "fig7"}));
    sweep->add_option("--min", o.min, "Grid minimum");
    sweep->add_option("--max", o.max, "Grid maximum");
    sweep->add_option("--count", o.count, "Grid points");
    sweep->add_option("--scale", o.scale, "Grid spacing")->check(CLI::IsMember({"linear", "log"}));
    sweep->add_option("--series", o.series, "Series values")->delimiter(',');

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (eval->parsed())
        {
            return cmd_eval(o, out, err);
        }
        if (check->parsed())
        {
            return cmd_check(o, out);
        }
        for (const auto& [sub, id] : figures)
        {
            if (sub->parsed())
            {
                return cmd_figure(o, id, args, out);
            }
        }
        return cmd_figure(o, std::nullopt, args, out);
    }
    catch (const ConfigError& e)
    {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const DomainError& e)
    {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const InfeasibleError& e)
    {
        err << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    }
    catch (const ConvergenceError& e)
    {
        err << "solver did not converge: " << e.what() << " (best estimate " << fmt(e.best_estimate()) << ")\n";
        return kExitInfeasible;
    }
    catch (const IoError& e)
    {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    }
}

} // namespace hylink
