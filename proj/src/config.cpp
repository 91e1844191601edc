#include "efrac/config.hpp"

#include "efrac/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

namespace efrac {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& text, const std::string& key) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw StructuralError("setting " + key + ": expected a nonnegative integer, got '" + text + "'");
    }
    try {
        return std::stoull(text);
    } catch (const std::out_of_range&) {
        throw StructuralError("setting " + key + ": value out of range");
    }
}

}  // namespace

void RunConfig::validate() const {
    if (memory_budget_bytes < (std::uint64_t{1} << 20)) throw StructuralError("memory budget must be at least 1 MiB");
    if (log_precision_bits < 64) throw StructuralError("log precision must be at least 64 bits");
    if (workers == 0) throw StructuralError("workers must be >= 1");
}

std::uint64_t parse_byte_size(const std::string& text) {
    std::string t = trim(text);
    std::uint64_t mult = 1;
    if (!t.empty()) {
        switch (std::toupper(static_cast<unsigned char>(t.back()))) {
            case 'K': mult = std::uint64_t{1} << 10; break;
            case 'M': mult = std::uint64_t{1} << 20; break;
            case 'G': mult = std::uint64_t{1} << 30; break;
            default: break;
        }
        if (mult != 1) t.pop_back();
    }
    const std::uint64_t v = parse_uint(t, "memory_budget");
    if (v > UINT64_MAX / mult) throw StructuralError("memory budget out of range");
    return v * mult;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw StructuralError("format must be csv or json, got '" + text + "'");
}

RunConfig apply_settings(RunConfig base, const std::map<std::string, std::string>& settings) {
    for (const auto& [key, value] : settings) {
        if (key == "memory_budget") {
            base.memory_budget_bytes = parse_byte_size(value);
        } else if (key == "cache_dir") {
            base.cache_dir = value;
        } else if (key == "log_precision_bits") {
            base.log_precision_bits = static_cast<unsigned>(parse_uint(value, key));
        } else if (key == "format") {
            base.output_format = parse_format(value);
        } else if (key == "workers") {
            base.workers = static_cast<unsigned>(parse_uint(value, key));
        } else {
            throw StructuralError("unknown setting '" + key + "'");
        }
    }
    base.validate();
    return base;
}

std::map<std::string, std::string> read_settings_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot read config file " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw StructuralError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig config_from_environment() {
    RunConfig cfg;
    if (const char* file = std::getenv("EFRAC_CONFIG"); file && *file) {
        cfg = apply_settings(cfg, read_settings_file(file));
    }
    return cfg;
}

}  // namespace efrac
