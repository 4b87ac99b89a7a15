#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace hylink
{
struct OutputDigest
{
    std::string file; // name relative to the output directory
    std::string sha256;
};

struct RunManifest
{
    std::string tool_version;
    std::string command;
    std::string config_echo; // serialized resolved configuration
    std::vector<std::pair<std::string, std::string>> tolerances;
    std::vector<OutputDigest> outputs;
    double wall_time_s = 0.0;
};

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
// Throws IoError when the file cannot be read.
std::string sha256_file(const std::filesystem::path& path);

// JSON text. `wall_time_s` is the only field that varies between identical runs.
std::string render_manifest(const RunManifest& m);

} // namespace hylink
