#pragma once

#include "hylink/sweep_optimizer.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace hylink
{
enum class TableFormat
{
    csv,
    json,
};

std::string_view to_string(TableFormat f);
std::optional<TableFormat> parse_table_format(std::string_view text);
std::string_view file_extension(TableFormat f); // ".csv" / ".json"

// One header row, one row per grid point, 12 significant digits. A trailing
// `status` column appears only when at least one row is flagged.
std::string render_csv(const SweepResult& result);

// {"columns": {name: [...]}, "metadata": {...}, "status": [...]}; NaN becomes
// null and `status` is present only when some row is flagged. Wall time is
// left out so identical requests give identical bytes.
std::string render_json(const SweepResult& result);

std::string render_table(const SweepResult& result, TableFormat format);

// Writes `content` to `path` in binary mode. Throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view content);

void write_table(const SweepResult& result, TableFormat format, const std::filesystem::path& path);

// %.12g with "nan"/"inf"/"-inf" spelled out.
std::string format_value(double x);

} // namespace hylink
