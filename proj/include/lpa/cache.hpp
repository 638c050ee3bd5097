#pragma once

#include <functional>
#include <optional>
#include <string>

#include "json.hpp"

namespace lpa {

std::string sha256_hex(const std::string& data);
// Hash of the canonical dump of everything a result depends on.
std::string cache_key(const nlohmann::json& inputs);

// One JSON file per key. Writes go to a temporary file that is renamed into
// place. An unreadable entry is reported on stderr and treated as a miss.
class Cache {
 public:
  enum class Status { disabled, hit, miss, corrupt };

  // An empty directory disables caching.
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}
  // LPA_CACHE_DIR, else $HOME/.cache/lpa.
  static std::string default_dir();

  const std::string& dir() const { return dir_; }
  std::string path(const std::string& key) const;
  std::optional<nlohmann::json> load(const std::string& key);
  void store(const std::string& key, const nlohmann::json& value) const;
  nlohmann::json get_or_compute(const std::string& key, const std::function<nlohmann::json()>& f);
  Status last_status() const { return status_; }

 private:
  std::string dir_;
  Status status_ = Status::disabled;
};

}  // namespace lpa
