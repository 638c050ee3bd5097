#include "lpa/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "lpa/errors.hpp"

namespace lpa {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &n, EVP_sha256(), nullptr))
    throw Error(ErrorKind::internal, "sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < n; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 15];
  }
  return s;
}

std::string cache_key(const nlohmann::json& inputs) { return sha256_hex(inputs.dump()); }

std::string Cache::default_dir() {
  if (const char* d = std::getenv("LPA_CACHE_DIR"); d && *d) return d;
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/lpa";
  return ".lpa_cache";
}

std::string Cache::path(const std::string& key) const { return dir_ + "/" + key + ".json"; }

std::optional<nlohmann::json> Cache::load(const std::string& key) {
  if (dir_.empty()) {
    status_ = Status::disabled;
    return std::nullopt;
  }
  std::ifstream in(path(key));
  if (!in) {
    status_ = Status::miss;
    return std::nullopt;
  }
  try {
    auto j = nlohmann::json::parse(in);
    if (!j.is_object() || j.value("key", std::string()) != key || !j.contains("value"))
      throw std::runtime_error("key mismatch");
    status_ = Status::hit;
    return j.at("value");
  } catch (const std::exception& e) {
    std::cerr << "warning: corrupt cache entry " << path(key) << " (" << e.what() << "), recomputing\n";
    status_ = Status::corrupt;
    return std::nullopt;
  }
}

void Cache::store(const std::string& key, const nlohmann::json& value) const {
  if (dir_.empty()) return;
  static std::atomic<unsigned> counter{0};
  try {
    fs::create_directories(dir_);
    std::string tmp = path(key) + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw Error(ErrorKind::io, "cannot write " + tmp);
      out << nlohmann::json{{"key", key}, {"value", value}}.dump();
      if (!out) throw Error(ErrorKind::io, "cannot write " + tmp);
    }
    fs::rename(tmp, path(key));
  } catch (const fs::filesystem_error& e) {
    throw Error(ErrorKind::io, std::string("cache: ") + e.what());
  }
}

nlohmann::json Cache::get_or_compute(const std::string& key, const std::function<nlohmann::json()>& f) {
  if (auto v = load(key)) return *v;
  Status s = status_;
  nlohmann::json v = f();
  store(key, v);
  status_ = s;
  return v;
}

}  // namespace lpa
