#include "zetaglue/cache.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zetaglue/numerics.hpp"
#include "zetaglue/report.hpp"

namespace zetaglue {

namespace fs = std::filesystem;

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

std::string ResultCache::default_dir() {
    if (const char* env = std::getenv("ZETAGLUE_CACHE_DIR")) return env;
    return ".zetaglue-cache";
}

std::string ResultCache::entry_path(const std::string& key_material) const {
    std::ostringstream os;
    os << std::hex << fnv1a64(std::string(kToolVersion) + "\n" + key_material);
    return (fs::path(dir_) / (os.str() + ".json")).string();
}

std::optional<nlohmann::json> ResultCache::lookup(const std::string& key_material) const {
    std::ifstream in(entry_path(key_material));
    if (!in) return std::nullopt;
    try {
        nlohmann::json entry = nlohmann::json::parse(in);
        if (entry.at("version").get<std::string>() != kToolVersion) return std::nullopt;
        if (entry.at("key_material").get<std::string>() != key_material) return std::nullopt;
        return entry.at("payload");
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // corrupt entry: recompute
    }
}

void ResultCache::store(const std::string& key_material, const nlohmann::json& payload) const {
    nlohmann::json entry;
    entry["version"] = kToolVersion;
    entry["key_material"] = key_material;
    entry["payload"] = payload;
    std::string path = entry_path(key_material);
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << entry.dump(2) << "\n";
    }
    fs::rename(tmp, path);
}

}  // namespace zetaglue
