#include "hylink/manifest.hpp"

#include "hylink/errors.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace hylink
{
std::string sha256_hex(std::string_view data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
    {
        throw std::runtime_error("sha256 digest failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i)
    {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

std::string render_manifest(const RunManifest& m)
{
    nlohmann::ordered_json doc;
    doc["tool_version"] = m.tool_version;
    doc["command"] = m.command;
    doc["config"] = m.config_echo;
    auto tol = nlohmann::ordered_json::object();
    for (const auto& [k, v] : m.tolerances)
    {
        tol[k] = v;
    }
    doc["tolerances"] = std::move(tol);
    auto outs = nlohmann::ordered_json::array();
    for (const auto& o : m.outputs)
    {
        outs.push_back({{"file", o.file}, {"sha256", o.sha256}});
    }
    doc["outputs"] = std::move(outs);
    doc["wall_time_s"] = m.wall_time_s;
    return doc.dump(2) + "\n";
}

} // namespace hylink
