#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace arclab::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kArtifactVersion = "1.0.0";

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Malformed, missing or tampered run directory.
struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Root for new run directories: $ARCLAB_DATA_DIR, else ./arclab-runs.
std::filesystem::path data_root();

/// A run directory being written. Files added through write() are recorded
/// with their digest; finish() writes manifest.json.
class RunDir {
public:
    /// Uses `explicit_dir` when given, else a fresh "<name>-NNNN" under data_root().
    RunDir(const std::string& name, const std::optional<std::string>& explicit_dir);

    const std::filesystem::path& path() const { return path_; }

    /// Timing files are listed but marked non-deterministic.
    void write(const std::string& file, const std::string& content, bool deterministic = true);

    Json& manifest() { return manifest_; }
    void finish(const std::string& status);

private:
    std::filesystem::path path_;
    Json manifest_;
};

/// Loads manifest.json and re-checks every listed digest.
Json load_manifest(const std::filesystem::path& dir);

std::string utc_timestamp();

}  // namespace arclab::cli
