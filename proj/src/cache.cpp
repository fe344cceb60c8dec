#include "wmf/cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace wmf {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

nlohmann::json grid_to_json(const Grid& g) {
  nlohmann::json j;
  j["character"] = g.chi.spec();
  j["N"] = g.chi.modulus();
  j["k"] = g.k;
  nlohmann::json eps = nlohmann::json::object();
  for (auto [p, e] : g.eps) eps[std::to_string(p)] = e;
  j["eps"] = eps;
  j["max_pole"] = g.max_pole;
  j["precision"] = g.precision;
  j["ell"] = g.ell;
  j["pool"] = g.pool_note;
  nlohmann::json forms = nlohmann::json::array();
  for (const auto& [m, f] : g.forms) forms.push_back({{"order", m}, {"series", to_json(f)}});
  j["forms"] = forms;
  return j;
}

Grid grid_from_json(const nlohmann::json& j) {
  Grid g;
  g.chi = QuadCharacter::parse(j.at("character").get<std::string>());
  g.k = j.at("k").get<int>();
  for (const auto& [p, e] : j.at("eps").items()) g.eps[std::stol(p)] = e.get<int>();
  g.max_pole = j.at("max_pole").get<long>();
  g.precision = j.at("precision").get<long>();
  g.ell = j.at("ell").get<long>();
  g.pool_note = j.at("pool").get<std::string>();
  for (const auto& item : j.at("forms")) {
    g.forms.emplace(item.at("order").get<long>(), series_from_json(item.at("series")));
  }
  return g;
}

std::string cache_key(const std::string& preset, int k, const SignVector& eps, long max_pole, long precision) {
  std::ostringstream os;
  os << "wmf-grid|v" << kCacheFormatVersion << "|" << preset << "|k=" << k << "|eps=" << sign_vector_string(eps)
     << "|M=" << max_pole << "|P=" << precision;
  return sha256_hex(os.str());
}

GridCache::GridCache(fs::path dir, bool verify_checksum) : dir_(std::move(dir)), verify_(verify_checksum) {}

fs::path GridCache::file_for(const std::string& key) const { return dir_ / ("grid-" + key + ".json"); }

std::optional<Grid> GridCache::load(const std::string& key, std::string* why) const {
  auto set_why = [&](const std::string& s) {
    if (why) *why = s;
  };
  const fs::path path = file_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    set_why("missing");
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(buf.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    set_why("unparsable");
    return std::nullopt;
  }
  if (doc.value("format_version", -1) != kCacheFormatVersion) {
    set_why("format version mismatch");
    return std::nullopt;
  }
  if (doc.value("key", std::string()) != key || !doc.contains("payload")) {
    set_why("key mismatch");
    return std::nullopt;
  }
  if (verify_ && doc.value("checksum", std::string()) != sha256_hex(doc["payload"].dump())) {
    set_why("checksum mismatch");
    return std::nullopt;
  }
  try {
    return grid_from_json(doc["payload"]);
  } catch (const std::exception& e) {
    set_why(std::string("malformed payload: ") + e.what());
    return std::nullopt;
  }
}

void GridCache::store(const std::string& key, const Grid& g) const {
  fs::create_directories(dir_);
  nlohmann::json doc;
  doc["format_version"] = kCacheFormatVersion;
  doc["key"] = key;
  doc["payload"] = grid_to_json(g);
  doc["checksum"] = sha256_hex(doc["payload"].dump());
  const fs::path final_path = file_for(key);
  const fs::path tmp = dir_ / (final_path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << doc.dump(1) << '\n';
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

std::optional<fs::path> default_cache_dir() {
  const char* env = std::getenv("WMF_CACHE_DIR");
  if (env && *env) return fs::path(env);
  return std::nullopt;
}

}  // namespace wmf
