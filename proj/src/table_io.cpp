#include "hylink/table_io.hpp"

#include "hylink/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace hylink
{
namespace
{
std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\r\n") == std::string_view::npos)
    {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
        {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}
} // namespace

std::string_view to_string(TableFormat f)
{
    return f == TableFormat::csv ? "csv" : "json";
}

std::optional<TableFormat> parse_table_format(std::string_view text)
{
    if (text == "csv")
    {
        return TableFormat::csv;
    }
    if (text == "json")
    {
        return TableFormat::json;
    }
    return std::nullopt;
}

std::string_view file_extension(TableFormat f)
{
    return f == TableFormat::csv ? ".csv" : ".json";
}

std::string format_value(double x)
{
    if (std::isnan(x))
    {
        return "nan";
    }
    if (std::isinf(x))
    {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string render_csv(const SweepResult& result)
{
    const bool flagged = result.any_flagged();
    std::string out;
    for (std::size_t c = 0; c < result.columns.size(); ++c)
    {
        out += (c ? "," : "") + csv_field(result.columns[c].name);
    }
    if (flagged)
    {
        out += ",status";
    }
    out += '\n';

    for (std::size_t r = 0; r < result.rows(); ++r)
    {
        for (std::size_t c = 0; c < result.columns.size(); ++c)
        {
            out += (c ? "," : "") + format_value(result.columns[c].values[r]);
        }
        if (flagged)
        {
            const std::string& flag = r < result.flags.size() ? result.flags[r] : std::string();
            out += "," + csv_field(flag.empty() ? "ok" : flag);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const SweepResult& result)
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json columns = nlohmann::ordered_json::object();
    for (const auto& col : result.columns)
    {
        auto arr = nlohmann::ordered_json::array();
        for (double v : col.values)
        {
            if (std::isfinite(v))
            {
                arr.push_back(v);
            }
            else
            {
                arr.push_back(nullptr);
            }
        }
        columns[col.name] = std::move(arr);
    }
    doc["columns"] = std::move(columns);

    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.metadata)
    {
        meta[k] = v;
    }
    doc["metadata"] = std::move(meta);

    if (result.any_flagged())
    {
        auto status = nlohmann::ordered_json::array();
        for (const auto& f : result.flags)
        {
            status.push_back(f.empty() ? "ok" : f);
        }
        doc["status"] = std::move(status);
    }
    return doc.dump(2) + "\n";
}

std::string render_table(const SweepResult& result, TableFormat format)
{
    return format == TableFormat::csv ? render_csv(result) : render_json(result);
}

void write_text_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out)
    {
        throw IoError("failed writing " + path.string());
    }
}

void write_table(const SweepResult& result, TableFormat format, const std::filesystem::path& path)
{
    write_text_file(path, render_table(result, format));
}

} // namespace hylink
