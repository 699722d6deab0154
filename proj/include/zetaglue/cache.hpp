#pragma once

#include <json.hpp>
#include <optional>
#include <string>

namespace zetaglue {

// Content-addressed result cache: one JSON file per key under the cache
// directory, written with write-then-rename so concurrent runs stay safe.
// Corrupt or version-mismatched entries are discarded.
class ResultCache {
  public:
    explicit ResultCache(std::string dir);

    std::optional<nlohmann::json> lookup(const std::string& key_material) const;
    void store(const std::string& key_material, const nlohmann::json& payload) const;

    // ZETAGLUE_CACHE_DIR override, else .zetaglue-cache in the working dir.
    static std::string default_dir();

    const std::string& dir() const { return dir_; }

  private:
    std::string entry_path(const std::string& key_material) const;
    std::string dir_;
};

}  // namespace zetaglue
