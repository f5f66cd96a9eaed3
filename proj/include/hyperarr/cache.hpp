#pragma once

// On-disk lattice cache.
//
// A lattice is dumped as versioned text: the arrangement's canonical text,
// then every flat (support, rank, basis, RREF rows) level by level, then the
// cover table. Files are named <content_hash>.lattice and written to a
// temporary file first, then renamed into place.

#include <filesystem>
#include <optional>
#include <string>

#include "hyperarr/lattice.hpp"

namespace hyperarr {

inline constexpr const char* kCacheEnv = "HYPERARR_CACHE_DIR";

std::string serialize_lattice(const Arrangement& a, const IntersectionLattice& lat);

/// Throws ParseError on a malformed dump and DomainError when the dump
/// belongs to a different arrangement.
IntersectionLattice deserialize_lattice(const Arrangement& a, const std::string& text);

class LatticeCache {
 public:
  explicit LatticeCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// --cache-dir if given, else $HYPERARR_CACHE_DIR, else no cache.
  static std::optional<LatticeCache> from_flag_or_env(const std::string& flag);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const Arrangement& a) const;

  /// nullopt on a miss; stale or unreadable entries count as misses.
  std::optional<IntersectionLattice> load(const Arrangement& a) const;
  void store(const Arrangement& a, const IntersectionLattice& lat) const;

 private:
  std::filesystem::path dir_;
};

/// Loads from `cache` when possible, otherwise builds and stores.
IntersectionLattice cached_lattice(const Arrangement& a, const LatticeOptions& opts,
                                   const std::optional<LatticeCache>& cache,
                                   bool* hit = nullptr);

}  // namespace hyperarr
