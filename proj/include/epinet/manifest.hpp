#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace epinet {

/// FNV-1a 64-bit digest of a byte buffer.
std::uint64_t fnv1a64(const void* data, std::size_t size);

/// Digest of a file's contents, rendered "fnv1a64:<16 hex digits>".
/// Throws IoError if the file cannot be read.
std::string digest_file(const std::string& path);

/// Reproducibility record written into every output directory. The
/// timestamp is informational only; all other fields are deterministic
/// functions of the run.
struct RunManifest {
    std::string command;
    nlohmann::json config;                                    // resolved settings
    std::vector<std::pair<std::string, std::string>> inputs;  // path -> digest
    std::uint64_t seed = 0;
};

/// Serializes the manifest (sorted keys, trailing newline) including an
/// ISO-8601 UTC timestamp.
std::string render_manifest(const RunManifest& manifest);

/// Writes render_manifest() to <out_dir>/manifest.json.
void write_manifest(const std::string& out_dir, const RunManifest& manifest);

}  // namespace epinet
