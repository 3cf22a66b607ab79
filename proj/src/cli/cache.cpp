#include "bogo/cli/cache.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>

#include <openssl/evp.h>

#include "bogo/json_io.hpp"

namespace bogo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string digest_hex(std::string_view text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1 || len < 16)
    throw std::runtime_error("SHA-256 failed");
  std::string hex;
  char buf[3];
  for (int i = 0; i < 16; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[static_cast<std::size_t>(i)]);
    hex += buf;
  }
  return hex;
}

CacheKey make_cache_key(std::string_view kind, const json& inputs) {
  const json keyed{{"kind", kind}, {"inputs", inputs}, {"tool_version", tool_version}};
  CacheKey key;
  key.canonical = dump_canonical(keyed);
  key.digest = digest_hex(key.canonical);
  return key;
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

fs::path ResultCache::entry_path(const CacheKey& key) const { return dir_ / (key.digest + ".json"); }

namespace {

bool entry_valid(const json& entry, const CacheKey& key) {
  if (!entry.is_object()) return false;
  for (const char* k : {"digest", "tool_version", "payload", "payload_sha256", "residual_norm", "tolerance"})
    if (!entry.contains(k)) return false;
  if (entry.at("digest") != key.digest || entry.at("tool_version") != tool_version) return false;
  if (!entry.at("residual_norm").is_number() || !entry.at("tolerance").is_number()) return false;
  const double residual = entry.at("residual_norm").get<double>();
  const double tol = entry.at("tolerance").get<double>();
  if (!(residual <= tol)) return false;
  return entry.at("payload_sha256") == digest_hex(dump_canonical(entry.at("payload")));
}

}  // namespace

std::optional<json> ResultCache::load(const CacheKey& key, CacheStatus* status) const {
  const auto path = entry_path(key);
  if (status) *status = CacheStatus::miss;
  if (!fs::exists(path)) return std::nullopt;
  std::ifstream in(path);
  json entry = json::parse(in, nullptr, false);
  if (!entry.is_discarded() && entry_valid(entry, key)) {
    if (status) *status = CacheStatus::hit;
    return entry.at("payload");
  }
  std::error_code ec;
  fs::remove(path, ec);
  if (status) *status = CacheStatus::discarded;
  return std::nullopt;
}

bool ResultCache::store(const CacheKey& key, const json& payload, double residual_norm, double tolerance) const {
  if (!(residual_norm <= tolerance)) return false;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const json entry{{"digest", key.digest},
                   {"key", key.canonical},
                   {"tool_version", tool_version},
                   {"timestamp", std::chrono::duration_cast<std::chrono::seconds>(now).count()},
                   {"residual_norm", residual_norm},
                   {"tolerance", tolerance},
                   {"payload_sha256", digest_hex(dump_canonical(payload))},
                   {"payload", payload}};
  std::random_device rd;
  const auto target = entry_path(key);
  const auto tmp = dir_ / (key.digest + ".tmp." + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary);
    out << dump_pretty(entry);
    if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, target);
  return true;
}

fs::path resolve_cache_dir(const std::optional<std::string>& flag, const std::optional<std::string>& config_value,
                           const fs::path& out_dir) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CACHE_DIR"); env && *env) return env;
  if (config_value) return *config_value;
  return out_dir / "cache";
}

}  // namespace bogo::cli
