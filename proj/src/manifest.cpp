#include "primeangles/manifest.hpp"

#include <atomic>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "primeangles/common.hpp"

namespace primeangles {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::json j;
    j["subcommand"] = m.subcommand;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : m.params) params[k] = v;
    j["params"] = params;
    if (m.seed) j["seed"] = *m.seed;
    j["version"] = m.version.empty() ? kVersion : m.version;
    j["wall_time_s"] = m.wall_time_s;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [path, digest] : m.outputs)
        outs.push_back({{"path", path}, {"fnv1a64", digest}});
    j["outputs"] = outs;
    return j.dump(2) + "\n";
}

void write_output_with_manifest(const std::string& path, const std::string& bytes,
                                RunManifest manifest) {
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open output file " + path);
        f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    manifest.outputs.emplace_back(path, fnv1a64_hex(bytes));
    std::ofstream mf(path + ".manifest.json", std::ios::trunc);
    if (!mf) throw std::runtime_error("cannot open manifest for " + path);
    const std::string j = manifest_json(manifest);
    mf.write(j.data(), static_cast<std::streamsize>(j.size()));
}

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_worker_threads(unsigned n) { g_threads.store(n); }

unsigned worker_threads() {
    const unsigned n = g_threads.load();
    if (n > 0) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace primeangles
