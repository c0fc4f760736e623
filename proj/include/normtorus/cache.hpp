#ifndef NORMTORUS_CACHE_HPP
#define NORMTORUS_CACHE_HPP

// On-disk report cache. Entry file: "normtorus-cache 1 <sha256 of body>" then the
// machine report. The key hashes the engine version with the full request.

#include "normtorus/hash.hpp"
#include "normtorus/report.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace normtorus {

inline constexpr const char* kCacheDirEnv = "NORMTORUS_CACHE_DIR";

class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir, std::ostream& warn = std::cerr) : dir_(std::move(dir)), warn_(warn) {}

  static std::string key_for(const std::string& canonical_request) {
    return sha256_hex(fmt::format("engine {}\n{}", kEngineVersion, canonical_request));
  }

  [[nodiscard]] std::filesystem::path entry_path(const std::string& key) const { return dir_ / (key + ".nrc"); }

  // nullopt on a miss; a corrupt entry is removed, reported and treated as a miss
  std::optional<Report> lookup(const std::string& key) {
    const auto path = entry_path(key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    try {
      std::ifstream f(path, std::ios::binary);
      std::stringstream ss;
      ss << f.rdbuf();
      const std::string text = ss.str();
      const auto nl = text.find('\n');
      if (nl == std::string::npos) throw CorruptCacheEntry("no header line");
      const std::string header = text.substr(0, nl), body = text.substr(nl + 1);
      if (header != "normtorus-cache 1 " + sha256_hex(body)) throw CorruptCacheEntry("checksum mismatch");
      return Report::parse_machine(body);
    } catch (const CorruptCacheEntry& e) {
      warn_ << fmt::format("warning: corrupt cache entry {} ({}), recomputing\n", path.string(), e.what());
      std::filesystem::remove(path, ec);
      return std::nullopt;
    }
  }

  void store(const std::string& key, const Report& r) {
    std::filesystem::create_directories(dir_);
    const std::string body = r.machine();
    const auto path = entry_path(key);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      f << "normtorus-cache 1 " << sha256_hex(body) << "\n" << body;
      if (!f) throw std::runtime_error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::filesystem::path dir_;
  std::ostream& warn_;
};

}  // namespace normtorus

#endif  // NORMTORUS_CACHE_HPP
