#include "ffsturm/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace ffsturm {

DiskCache::DiskCache(std::string dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

DiskCache DiskCache::from_flag(const std::string& flag_dir) {
  const char* env = std::getenv("FFSTURM_CACHE");
  if (env && *env) return DiskCache(env);
  return DiskCache(flag_dir);
}

std::string DiskCache::path_for(const std::string& key) const {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : key) {
    h ^= (unsigned char)c;
    h *= 1099511628211ull;
  }
  char buf[32];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return dir_ + "/" + buf + ".json";
}

std::optional<nlohmann::json> DiskCache::get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(key));
  if (!in) return std::nullopt;
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || doc.value("key", "") != key) return std::nullopt;
  return doc["value"];
}

void DiskCache::put(const std::string& key, const nlohmann::json& value) const {
  if (!enabled()) return;
  nlohmann::json doc;
  doc["schema"] = kSchemaTag;
  doc["key"] = key;
  doc["value"] = value;
  std::string path = path_for(key);
  std::ofstream out(path + ".tmp");
  out << doc.dump();
  out.close();
  std::filesystem::rename(path + ".tmp", path);
}

}  // namespace ffsturm
