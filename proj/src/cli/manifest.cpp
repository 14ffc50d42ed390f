#include "arclab/cli/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

namespace arclab::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
    return os.str();
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ManifestError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

fs::path data_root() {
    if (const char* env = std::getenv("ARCLAB_DATA_DIR"); env && *env) return env;
    return "arclab-runs";
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

RunDir::RunDir(const std::string& name, const std::optional<std::string>& explicit_dir) {
    if (explicit_dir) {
        path_ = *explicit_dir;
        fs::create_directories(path_);
    } else {
        const fs::path root = data_root();
        fs::create_directories(root);
        for (unsigned i = 1;; ++i) {
            std::ostringstream os;
            os << name << '-' << std::setw(4) << std::setfill('0') << i;
            path_ = root / os.str();
            if (fs::create_directory(path_)) break;
        }
    }
    manifest_["artifact"] = "arclab";
    manifest_["version"] = kArtifactVersion;
    manifest_["started"] = utc_timestamp();
    manifest_["outputs"] = Json::array();
}

void RunDir::write(const std::string& file, const std::string& content, bool deterministic) {
    const fs::path p = path_ / file;
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + p.string());
    manifest_["outputs"].push_back({{"file", file}, {"sha256", sha256_hex(content)}, {"deterministic", deterministic}});
}

void RunDir::finish(const std::string& status) {
    manifest_["finished"] = utc_timestamp();
    manifest_["status"] = status;
    std::ofstream out(path_ / "manifest.json");
    out << manifest_.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write manifest in " + path_.string());
}

Json load_manifest(const fs::path& dir) {
    const fs::path mpath = dir / "manifest.json";
    std::ifstream in(mpath);
    if (!in) throw ManifestError("missing manifest: " + mpath.string());
    Json m;
    try {
        m = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ManifestError("corrupt manifest " + mpath.string() + ": " + e.what());
    }
    if (!m.contains("outputs") || !m.contains("command") || !m.contains("config"))
        throw ManifestError("incomplete manifest: " + mpath.string());
    for (const auto& o : m["outputs"]) {
        const fs::path f = dir / o.at("file").get<std::string>();
        if (!fs::exists(f)) throw ManifestError("missing output " + f.string());
        if (sha256_file(f) != o.at("sha256").get<std::string>()) throw ManifestError("digest mismatch for " + f.string());
    }
    return m;
}

}  // namespace arclab::cli
