#pragma once

#include "efrac/subsetsum.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace efrac {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::uint64_t memory_budget_bytes = kDefaultMemoryBudget;
    /// Empty disables caching.
    std::filesystem::path cache_dir = ".efrac-cache";
    unsigned log_precision_bits = 64;
    OutputFormat output_format = OutputFormat::Csv;
    unsigned workers = 1;

    /// Throws StructuralError unless budget >= 2^20, precision >= 64 and
    /// workers >= 1.
    void validate() const;
};

/// Applies key=value settings (memory_budget, cache_dir, log_precision_bits,
/// format, workers) on top of base. Unknown keys are rejected.
RunConfig apply_settings(RunConfig base, const std::map<std::string, std::string>& settings);

/// Parses a key=value file; '#' starts a comment line.
std::map<std::string, std::string> read_settings_file(const std::filesystem::path& path);

/// Defaults overridden by the file named in EFRAC_CONFIG, if set.
RunConfig config_from_environment();

/// Byte counts with optional K, M, G (binary) suffix.
std::uint64_t parse_byte_size(const std::string& text);
OutputFormat parse_format(const std::string& text);

}  // namespace efrac
