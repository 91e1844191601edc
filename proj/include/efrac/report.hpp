#pragma once

// Table emission. CSV uses ',' separators, '.' decimal points, LF line
// endings and a header row; JSON is one compact document per line.

#include "efrac/bounds.hpp"
#include "efrac/config.hpp"
#include "efrac/density.hpp"
#include "efrac/subsetsum.hpp"
#include "efrac/uset.hpp"

#include <optional>
#include <span>
#include <string>

namespace efrac {

/// Fixed-point rendering with 12 decimals, the same on every platform.
std::string format_real(double v);

std::string render_enumerate(std::span<const std::uint64_t> cards, OutputFormat fmt);
std::string render_figure(std::span<const FigureRow> rows, OutputFormat fmt);
/// Bound columns: 8 decimals rounded up, plus a 20-decimal machine field.
std::string render_bound(const BoundReport& rep, OutputFormat fmt);
std::string render_set_bound(std::span<const std::uint64_t> set, const Natural& r, const BoundReport& rep,
                             OutputFormat fmt);
std::string render_gm_table(const GmTable& table, OutputFormat fmt);

struct DensityRow {
    Natural modulus;
    Fraction delta;
    std::optional<std::uint64_t> x;
    std::optional<Fraction> empirical;
};
std::string render_density(const DensityRow& row, OutputFormat fmt);

/// Member certificates as JSON lines followed by a summary line. Lower bounds
/// 2^k are written in decimal up to k = 256 and as "2^k" beyond.
std::string render_u_set(const UCount& count, std::optional<std::int64_t> recursive_bound,
                         std::span<const LowerBoundRow> curve);

/// Parses "5040", "lcm:17", "lcm(1..17)" and products of these and of
/// prime powers such as "2^2*3^2*lcm:19".
FactoredInteger parse_modulus(const std::string& text);

}  // namespace efrac
