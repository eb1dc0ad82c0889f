#pragma once

#include "ipoly/modroots.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>

namespace ipoly {

/// Environment variable that overrides the default cache location.
inline constexpr const char* kRootCacheEnv = "IPOLY_ROOT_CACHE";

/// $IPOLY_ROOT_CACHE if set, else "ipoly_roots.cache" in the working directory.
std::filesystem::path default_cache_path();

/// Canonical p-adic roots keyed by (polynomial hash, prime).
///
/// On disk the cache is append-only text, one entry per line:
///   <hash> <p> <k> <r> <unit>
/// A later line for the same key may only raise the precision of the same
/// residue class. Readers see the highest precision recorded.
class RootCache {
 public:
  /// In-memory cache with no backing file.
  RootCache() = default;
  /// Loads path if it exists; new entries are appended to it.
  explicit RootCache(std::filesystem::path path);

  std::optional<PadicRoot> lookup(const std::string& key, const Integer& p) const;

  /// Stores root unless a compatible entry of at least the same precision is
  /// present, and returns the entry now in force. The first root recorded for
  /// a key wins; a conflicting residue class throws std::runtime_error.
  PadicRoot record(const std::string& key, const PadicRoot& root);

  std::size_t size() const;
  const std::optional<std::filesystem::path>& path() const { return path_; }

 private:
  using Key = std::pair<std::string, Integer>;

  // Returns true if the entry changed.
  bool merge(const Key& key, const PadicRoot& root);

  std::optional<std::filesystem::path> path_;
  mutable std::shared_mutex mutex_;
  std::map<Key, PadicRoot> entries_;
};

}  // namespace ipoly
