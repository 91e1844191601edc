#pragma once

// On-disk cache of per-prefix chain counts.
//
//   # efrac chain cache
//   version=1
//   modulus=<M>
//   count=<l>
//   i,a,value,flag
//   1,1,2,exact
//   ...
//
// Rows are contiguous in i = 1..l; flag is exact, lemmaA or lifted.

#include "efrac/arith.hpp"
#include "efrac/bounds.hpp"
#include "efrac/config.hpp"
#include "efrac/subsetsum.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace efrac {

struct ChainCacheRow {
    std::size_t i;
    Natural a;
    Natural value;
    Provenance flag;

    friend bool operator==(const ChainCacheRow&, const ChainCacheRow&) = default;
};

struct ChainCacheFile {
    static constexpr int kFormatVersion = 1;

    Natural modulus;
    std::vector<ChainCacheRow> rows;

    std::string serialize() const;
    /// Throws StructuralError on any malformed header or row.
    static ChainCacheFile parse(std::string_view text);

    /// Writes to a temporary sibling, then renames over `path`.
    void write_atomic(const std::filesystem::path& path) const;
    static ChainCacheFile read(const std::filesystem::path& path);

    /// Values of all rows; throws StructuralError if any row is not exact.
    std::vector<Natural> exact_counts() const;

    friend bool operator==(const ChainCacheFile&, const ChainCacheFile&) = default;
};

std::filesystem::path chain_cache_path(const std::filesystem::path& dir, const Natural& modulus);

/// Exact counts for the chain, read from the cache when present and
/// consistent with the chain, computed and cached otherwise. A cache file
/// that exists but does not match is reported as StructuralError and left
/// untouched.
std::vector<Natural> cached_chain_counts(const DivisorChain& chain, const RunConfig& config);

}  // namespace efrac
