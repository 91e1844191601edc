#include "efrac/cache.hpp"

#include "efrac/errors.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

namespace efrac {
namespace {

Provenance parse_flag(const std::string& s) {
    if (s == "exact") return Provenance::Exact;
    if (s == "lemmaA") return Provenance::LemmaA;
    if (s == "lifted") return Provenance::Lifted;
    throw StructuralError("cache: unknown flag '" + s + "'");
}

std::string expect_field(std::istringstream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line)) throw StructuralError("cache: missing header field " + key);
    const std::string prefix = key + "=";
    if (line.rfind(prefix, 0) != 0) throw StructuralError("cache: expected '" + prefix + "...', got '" + line + "'");
    return line.substr(prefix.size());
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

std::string ChainCacheFile::serialize() const {
    std::ostringstream out;
    out << "# efrac chain cache\n"
        << "version=" << kFormatVersion << "\n"
        << "modulus=" << modulus << "\n"
        << "count=" << rows.size() << "\n"
        << "i,a,value,flag\n";
    for (const auto& r : rows) out << r.i << ',' << r.a << ',' << r.value << ',' << to_string(r.flag) << '\n';
    return out.str();
}

ChainCacheFile ChainCacheFile::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "# efrac chain cache") throw StructuralError("cache: bad magic line");
    if (expect_field(in, "version") != std::to_string(kFormatVersion)) throw StructuralError("cache: unsupported version");
    ChainCacheFile file;
    file.modulus = Natural::parse(expect_field(in, "modulus"));
    const std::string count_text = expect_field(in, "count");
    const Natural count = Natural::parse(count_text);
    if (!std::getline(in, line) || line != "i,a,value,flag") throw StructuralError("cache: bad column header");
    while (std::getline(in, line)) {
        const auto fields = split(line, ',');
        if (fields.size() != 4) throw StructuralError("cache: malformed row '" + line + "'");
        ChainCacheRow row{0, Natural::parse(fields[1]), Natural::parse(fields[2]), parse_flag(fields[3])};
        row.i = Natural::parse(fields[0]).to_u64();
        if (row.i != file.rows.size() + 1) throw StructuralError("cache: rows are not contiguous at i=" + fields[0]);
        if (!file.rows.empty() && row.a <= file.rows.back().a) throw StructuralError("cache: a_i not increasing");
        file.rows.push_back(std::move(row));
    }
    if (Natural(file.rows.size()) != count) throw StructuralError("cache: row count does not match header");
    return file;
}

void ChainCacheFile::write_atomic(const std::filesystem::path& path) const {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const auto tmp = path.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw StructuralError("cannot write " + tmp);
        out << serialize();
        out.flush();
        if (!out) throw StructuralError("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

ChainCacheFile ChainCacheFile::read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot read cache file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (const StructuralError& e) {
        throw StructuralError(path.string() + ": " + e.what());
    }
}

std::vector<Natural> ChainCacheFile::exact_counts() const {
    std::vector<Natural> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.flag != Provenance::Exact) throw StructuralError("cache row " + std::to_string(r.i) + " is not exact");
        out.push_back(r.value);
    }
    return out;
}

std::filesystem::path chain_cache_path(const std::filesystem::path& dir, const Natural& modulus) {
    return dir / ("chain-" + modulus.str() + ".csv");
}

std::vector<Natural> cached_chain_counts(const DivisorChain& chain, const RunConfig& config) {
    const bool use_cache = !config.cache_dir.empty();
    const auto path = use_cache ? chain_cache_path(config.cache_dir, chain.modulus) : std::filesystem::path{};
    if (use_cache && std::filesystem::exists(path)) {
        const ChainCacheFile file = ChainCacheFile::read(path);
        bool consistent = file.modulus == chain.modulus && file.rows.size() == chain.size();
        for (std::size_t i = 0; consistent && i < chain.size(); ++i) consistent = file.rows[i].a == chain.divisors[i];
        if (!consistent) throw StructuralError(path.string() + ": cache does not match the divisors of " + chain.modulus.str());
        auto counts = file.exact_counts();
        // r_i <= r_{i-1} would drop a sum, r_i > 2 r_{i-1} is impossible.
        const auto ceiling = lemma_a_bounds(chain);
        Natural prev(1);
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i] <= prev || counts[i] > prev + prev || counts[i] > ceiling[i]) {
                throw StructuralError(path.string() + ": implausible count at i=" + std::to_string(i + 1));
            }
            prev = counts[i];
        }
        return counts;
    }
    auto counts = chain_counts(chain, config.memory_budget_bytes);
    if (use_cache) {
        ChainCacheFile file{chain.modulus, {}};
        for (std::size_t i = 0; i < counts.size(); ++i) {
            file.rows.push_back({i + 1, chain.divisors[i], counts[i], Provenance::Exact});
        }
        file.write_atomic(path);
    }
    return counts;
}

}  // namespace efrac
