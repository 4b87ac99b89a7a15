#include "hylink/svg_plot.hpp"

#include "hylink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace hylink
{
namespace
{
constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Layout
{
    std::string x;
    std::vector<std::string> y; // one curve per y column when there is no series column
    std::optional<std::string> series;
    bool log_x = false;
    bool log_y = false;
    std::string title;
};

Layout layout_for(FigureId figure)
{
    switch (figure)
    {
    case FigureId::fig3:
        return {"tau_ns", {"fidelity"}, "delta_a_ghz", true, false, "Fidelity vs pulse duration"};
    case FigureId::fig4:
        return {"delta_a_ghz", {"tau_ns", "intensity_w_per_cm2"}, std::nullopt, true, true,
                "Required pulse duration and pump intensity"};
    case FigureId::fig5:
        return {"delta_rad", {"fidelity"}, "nbar", false, false, "Recoil fidelity vs collection angle"};
    case FigureId::fig6:
        return {"delta_rad", {"success_probability"}, "nbar", false, true,
                "Success probability vs collection angle"};
    case FigureId::fig7:
        return {"nbar", {"p_opt"}, std::nullopt, false, true, "Optimal success probability vs nbar"};
    }
    throw DomainError("unknown figure");
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

struct Axis
{
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    double t(double v) const
    {
        const double a = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        return (a - l) / (h - l);
    }

    std::vector<double> ticks() const
    {
        std::vector<double> out;
        if (log)
        {
            for (int e = static_cast<int>(std::floor(std::log10(lo))); e <= static_cast<int>(std::ceil(std::log10(hi)));
                 ++e)
            {
                const double v = std::pow(10.0, e);
                if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12))
                {
                    out.push_back(v);
                }
            }
            return out;
        }
        for (int i = 0; i <= 5; ++i)
        {
            out.push_back(lo + (hi - lo) * i / 5.0);
        }
        return out;
    }
};

Axis fit_axis(const std::vector<const std::vector<double>*>& data, bool log)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto* col : data)
    {
        for (double v : *col)
        {
            if (std::isfinite(v) && (!log || v > 0))
            {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
    }
    if (!std::isfinite(lo))
    {
        return {log ? 0.1 : 0.0, 1.0, log};
    }
    if (log)
    {
        lo = std::pow(10.0, std::floor(std::log10(lo)));
        hi = std::pow(10.0, std::ceil(std::log10(hi)));
        if (hi <= lo)
        {
            hi = lo * 10.0;
        }
    }
    else if (hi <= lo)
    {
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo, hi, log};
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

const std::vector<double>& column(const SweepResult& r, const std::string& name)
{
    const Column* c = r.find(name);
    if (!c)
    {
        throw DomainError("plot: result has no column " + name);
    }
    return c->values;
}
} // namespace

std::string render_svg(const SweepResult& result, FigureId figure)
{
    const Layout lay = layout_for(figure);
    const auto& xs = column(result, lay.x);

    // Curves: (label, row indices, y column).
    struct Curve
    {
        std::string label;
        std::vector<std::size_t> rows;
        const std::vector<double>* y;
    };
    std::vector<Curve> curves;
    std::vector<const std::vector<double>*> ys;
    if (lay.series)
    {
        const auto& s = column(result, *lay.series);
        const auto* y = &column(result, lay.y.front());
        ys.push_back(y);
        std::map<double, std::size_t> index;
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            if (!index.count(s[i]))
            {
                index[s[i]] = curves.size();
                curves.push_back({*lay.series + " = " + tick_label(s[i]), {}, y});
            }
            curves[index[s[i]]].rows.push_back(i);
        }
    }
    else
    {
        for (const auto& name : lay.y)
        {
            const auto* y = &column(result, name);
            ys.push_back(y);
            Curve c{name, {}, y};
            for (std::size_t i = 0; i < xs.size(); ++i)
            {
                c.rows.push_back(i);
            }
            curves.push_back(std::move(c));
        }
    }

    const Axis ax = fit_axis({&xs}, lay.log_x);
    const Axis ay = fit_axis(ys, lay.log_y);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + ax.t(v) * pw; };
    auto py = [&](double v) { return kTop + (1.0 - ay.t(v)) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kLeft) + "\" y=\"24\" font-size=\"14\">" + escape(lay.title) + "</text>\n";
    out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ax.ticks())
    {
        const double x = px(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
               tick_label(t) + "</text>\n";
    }
    for (double t : ay.ticks())
    {
        const double y = py(t);
        out += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + tick_label(t) +
               "</text>\n";
    }
    out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 15) + "\" text-anchor=\"middle\">" +
           escape(lay.x) + (lay.log_x ? " (log)" : "") + "</text>\n";
    std::string ylabel;
    for (std::size_t i = 0; i < lay.y.size(); ++i)
    {
        ylabel += (i ? ", " : "") + lay.y[i];
    }
    out += "<text transform=\"translate(18," + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
           escape(ylabel) + (lay.log_y ? " (log)" : "") + "</text>\n";

    for (std::size_t c = 0; c < curves.size(); ++c)
    {
        const char* color = kPalette[c % std::size(kPalette)];
        std::string points;
        auto flush = [&] {
            if (!points.empty())
            {
                out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
                       points + "\"/>\n";
                points.clear();
            }
        };
        for (std::size_t i : curves[c].rows)
        {
            const double x = xs[i];
            const double y = (*curves[c].y)[i];
            if (!std::isfinite(x) || !std::isfinite(y) || (lay.log_x && x <= 0) || (lay.log_y && y <= 0))
            {
                flush();
                continue;
            }
            points += (points.empty() ? "" : " ") + num(px(x)) + "," + num(py(y));
        }
        flush();

        const double ly = kTop + 10 + 18.0 * static_cast<double>(c);
        const double lx = kLeft + pw + 12;
        out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 20) + "\" y2=\"" + num(ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        out += "<text x=\"" + num(lx + 26) + "\" y=\"" + num(ly + 4) + "\">" + escape(curves[c].label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace hylink
