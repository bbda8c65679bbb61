#include "epinet/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "epinet/error.hpp"

namespace epinet {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 14695981039346656037ULL;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

std::string render_manifest(const RunManifest& manifest) {
    nlohmann::json doc;
    doc["command"] = manifest.command;
    doc["config"] = manifest.config;
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [path, digest] : manifest.inputs) inputs[path] = digest;
    doc["inputs"] = inputs;
    doc["seed"] = manifest.seed;

    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    doc["timestamp"] = stamp;
    return doc.dump(2) + "\n";
}

void write_manifest(const std::string& out_dir, const RunManifest& manifest) {
    std::string path = out_dir + "/manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
    out << render_manifest(manifest);
}

}  // namespace epinet
