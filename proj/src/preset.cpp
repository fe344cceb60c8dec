#include "wmf/preset.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wmf {

namespace fs = std::filesystem;

const PresetGrid* Preset::find(int k, long max_pole) const {
  for (const auto& g : grids) {
    if (g.weight == k && g.max_pole == max_pole) return &g;
  }
  return nullptr;
}

fs::path preset_dir() {
  const char* env = std::getenv("WMF_PRESET_DIR");
  if (env && *env) return fs::path(env);
  return fs::path(WMF_PRESET_DIR);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(preset_dir(), ec)) {
    if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Preset parse_preset(const nlohmann::json& j) {
  Preset p;
  try {
    p.name = j.at("name").get<std::string>();
    p.chi = QuadCharacter::parse(j.at("character").get<std::string>());
    if (j.contains("level") && j["level"].get<long>() != p.chi.modulus()) {
      throw PresetError("preset " + p.name + ": level does not match the character");
    }
    p.margin = j.value("precision_margin", 10L);
    if (j.contains("ascent") && !j["ascent"].is_null()) {
      const auto& a = j["ascent"];
      EtaQuotient e;
      e.level = p.chi.modulus();
      for (const auto& [d, r] : a.at("eta").items()) e.r[std::stol(d)] = r.get<long>();
      p.ascent = e;
      p.ascent_pole = a.at("pole").get<long>();
      p.ascent_search_bound = a.value("search_bound", 12L);
    }
    for (const auto& gj : j.at("grids")) {
      PresetGrid g;
      g.weight = gj.at("weight").get<int>();
      g.max_pole = gj.value("max_pole", 0L);
      if (gj.contains("precision")) g.precision = gj["precision"].get<long>();
      const auto& e = gj.at("eps");
      if (e.is_string() && e.get<std::string>() == "all") {
        g.eps = all_sign_vectors(p.chi);
      } else {
        for (const auto& s : e) g.eps.push_back(parse_sign_vector(p.chi, s.get<std::string>()));
      }
      if (gj.contains("expected_orders")) {
        for (const auto& [s, orders] : gj["expected_orders"].items()) {
          g.expected_orders[sign_vector_string(parse_sign_vector(p.chi, s))] = orders.get<std::vector<long>>();
        }
      }
      p.grids.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw PresetError(std::string("malformed preset: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw PresetError(std::string("invalid preset: ") + e.what());
  }
  return p;
}

Preset load_preset(const std::string& name_or_path) {
  fs::path path = name_or_path;
  if (!fs::exists(path)) path = preset_dir() / (name_or_path + ".json");
  std::ifstream in(path);
  if (!in) throw PresetError("unknown preset '" + name_or_path + "' (looked in " + preset_dir().string() + ")");
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = nlohmann::json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw PresetError("preset file " + path.string() + " is not valid JSON");
  Preset p = parse_preset(j);
  validate_preset(p);
  return p;
}

void validate_preset(const Preset& p) {
  const long N = p.chi.modulus();
  if (!p.ascent) {
    if (N != 1) throw PresetError("preset " + p.name + ": levels above 1 need an ascent function");
    return;
  }
  const EtaQuotient& e = *p.ascent;
  if (!e.is_valid() || e.twice_weight() != 0) {
    throw PresetError("preset " + p.name + ": ascent function is not a weight 0 eta quotient");
  }
  auto ch = eta_character(e);
  if (!ch || !ch->is_trivial()) throw PresetError("preset " + p.name + ": ascent function has a character");
  for (const auto& [d, ord] : ligozat_orders(e)) {
    if (d == N) {
      if (ord != -p.ascent_pole) throw PresetError("preset " + p.name + ": ascent pole at infinity differs");
    } else if (ord < 0) {
      throw PresetError("preset " + p.name + ": ascent function has a pole at a finite cusp");
    }
  }
  EtaQuotient found = find_ascent_function(N, p.ascent_search_bound, p.ascent_pole);
  if (-ligozat_orders(found).at(N) != p.ascent_pole) {
    throw PresetError("preset " + p.name + ": a smaller pole order is attainable");
  }
}

Session::Session(Preset preset, std::optional<fs::path> cache_dir, bool verify_checksums) : preset_(std::move(preset)) {
  if (cache_dir) cache_.emplace(*cache_dir, verify_checksums);
}

long Session::precision_for(int k, long max_pole, std::optional<long> override_precision) {
  const long cert = certification_precision(preset_.chi.modulus(), k, max_pole, preset_.margin);
  if (override_precision) {
    if (*override_precision < cert) {
      warnings_.push_back("precision " + std::to_string(*override_precision) + " is below the certification bound " +
                          std::to_string(cert) + " for weight " + std::to_string(k) + ", max pole " +
                          std::to_string(max_pole));
    }
    return *override_precision;
  }
  if (const PresetGrid* pg = preset_.find(k, max_pole); pg && pg->precision) return std::max(cert, *pg->precision);
  return cert;
}

Grid Session::compute(int k, const SignVector& eps, long max_pole, long precision) {
  const std::string pool_key = std::to_string(k) + "|" + std::to_string(max_pole) + "|" + std::to_string(precision);
  auto it = pools_.find(pool_key);
  if (it == pools_.end()) it = pools_.emplace(pool_key, build_pool(preset_.chi, k, max_pole, precision)).first;
  ++stats_.computed;
  return reduced_grid(it->second, preset_.chi, eps, precision);
}

void Session::check_expected(const Grid& g) const {
  const PresetGrid* pg = preset_.find(g.k, g.max_pole);
  if (!pg) return;
  auto e = pg->expected_orders.find(sign_vector_string(g.eps));
  if (e == pg->expected_orders.end()) return;
  if (g.orders() != e->second) {
    std::string got;
    for (long m : g.orders()) got += " " + std::to_string(m);
    throw PresetError("preset " + preset_.name + ": attainable orders for weight " + std::to_string(g.k) + ", eps " +
                      sign_vector_string(g.eps) + " are" + got + ", which differs from the preset");
  }
}

const Grid& Session::grid(int k, const SignVector& eps, long max_pole, std::optional<long> precision) {
  const long prec = precision_for(k, max_pole, precision);
  const std::string key = cache_key(preset_.name, k, eps, max_pole, prec);
  if (auto it = grids_.find(key); it != grids_.end()) return it->second;
  if (cache_) {
    if (auto g = cache_->load(key)) {
      ++stats_.cache_hits;
      return grids_.emplace(key, std::move(*g)).first->second;
    }
    ++stats_.cache_misses;
  }
  Grid g = compute(k, eps, max_pole, prec);
  if (prec >= certification_precision(preset_.chi.modulus(), k, max_pole, preset_.margin)) check_expected(g);
  if (cache_) cache_->store(key, g);
  return grids_.emplace(key, std::move(g)).first->second;
}

const Grid& Session::holomorphic(int k, const SignVector& eps) { return grid(k, eps, 0); }

HolomorphicLookup Session::dual_lookup(int k) {
  return [this, k](const SignVector& eps) -> const Grid& { return holomorphic(2 - k, eps); };
}

}  // namespace wmf
