#pragma once

// On-disk grid cache: one JSON file per (preset, k, eps, max_pole,
// precision), keyed by a SHA-256 content hash, with a payload checksum and
// atomic writes.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "wmf/reduced.hpp"

namespace wmf {

constexpr int kCacheFormatVersion = 1;

std::string sha256_hex(const std::string& data);

nlohmann::json grid_to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

std::string cache_key(const std::string& preset, int k, const SignVector& eps, long max_pole, long precision);

class GridCache {
 public:
  /// verify_checksum = false skips the payload checksum (used to exercise
  /// downstream detection of tampered data).
  explicit GridCache(std::filesystem::path dir, bool verify_checksum = true);

  std::filesystem::path file_for(const std::string& key) const;
  /// nullopt when missing, unreadable, of another format version, or (when
  /// verifying) failing the checksum. `why` receives the reason.
  std::optional<Grid> load(const std::string& key, std::string* why = nullptr) const;
  /// Writes to a temporary file in the same directory and renames it.
  void store(const std::string& key, const Grid& g) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  bool verify_;
};

/// Cache directory from the WMF_CACHE_DIR environment variable, if set.
std::optional<std::filesystem::path> default_cache_dir();

}  // namespace wmf
