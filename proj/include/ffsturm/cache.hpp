#ifndef FFSTURM_CACHE_HPP
#define FFSTURM_CACHE_HPP

#include <optional>
#include <string>

#include <json.hpp>

namespace ffsturm {

constexpr const char* kSchemaTag = "ffsturm/1";
constexpr const char* kCodeVersion = "ffsturm-core-1";

/// Content-addressed JSON store keyed by operation strings; an empty
/// directory disables it. Keys should embed q, level, operation and
/// kCodeVersion.
class DiskCache {
public:
  DiskCache() = default;
  explicit DiskCache(std::string dir);

  bool enabled() const { return !dir_.empty(); }
  std::optional<nlohmann::json> get(const std::string& key) const;
  void put(const std::string& key, const nlohmann::json& value) const;

  /// --cache-dir flag value or the FFSTURM_CACHE environment override.
  static DiskCache from_flag(const std::string& flag_dir);

private:
  std::string path_for(const std::string& key) const;
  std::string dir_;
};

}  // namespace ffsturm

#endif
