#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace bogo::cli {

inline constexpr const char* tool_version = "0.3.0";

/// Hex of the first 16 bytes of SHA-256(text).
std::string digest_hex(std::string_view text);

struct CacheKey {
  std::string digest;
  std::string canonical;  // the hashed text
};

/// Key over (kind, inputs, tool version); inputs must already be canonical
/// (model JSON plus every solver setting that can change the result).
CacheKey make_cache_key(std::string_view kind, const nlohmann::json& inputs);

enum class CacheStatus { hit, miss, discarded };

/// Content-addressed store of JSON payloads, one file per digest. Entries carry
/// the residual norm and tolerance of the solve plus a checksum of the payload;
/// any entry failing those checks on load is deleted and reported as discarded.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  const std::filesystem::path& directory() const { return dir_; }
  std::filesystem::path entry_path(const CacheKey& key) const;

  std::optional<nlohmann::json> load(const CacheKey& key, CacheStatus* status = nullptr) const;
  /// Atomic publish via a temporary file and rename. Refuses (returns false)
  /// payloads whose residual exceeds the tolerance.
  bool store(const CacheKey& key, const nlohmann::json& payload, double residual_norm, double tolerance) const;

 private:
  std::filesystem::path dir_;
};

/// --cache, then $CACHE_DIR, then the config's cache_dir, then <out>/cache.
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag,
                                        const std::optional<std::string>& config_value,
                                        const std::filesystem::path& out_dir);

}  // namespace bogo::cli
