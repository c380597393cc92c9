#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace primeangles {

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Sidecar record of one CLI run; serialized as <out>.manifest.json.  Every
// emitted data file references exactly one of these.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> params; // flag -> value, as given
    std::optional<std::uint64_t> seed;
    std::string version;
    double wall_time_s = 0.0;
    std::vector<std::pair<std::string, std::string>> outputs; // path -> fnv1a64 of bytes
};

std::string manifest_json(const RunManifest& m);

// writes `bytes` to `path` and the manifest (with the digest filled in) to
// `path + ".manifest.json"`
void write_output_with_manifest(const std::string& path, const std::string& bytes,
                                RunManifest manifest);

// global worker count for parallel loops (0 = hardware)
void set_worker_threads(unsigned n);
unsigned worker_threads();

} // namespace primeangles
