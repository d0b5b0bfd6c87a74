#pragma once

// SVG charts computed only from runs-CSV rows.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "harness/csv.hpp"

namespace slsched::harness {

enum class PlotKind { MakespanBars, RelativeDiff, HelpersCurve };

std::optional<PlotKind> parse_plot_kind(std::string_view name);
const char* to_string(PlotKind k);

class PlotError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// makespan-bars: median makespan per (J, I) group, one bar series per method.
/// relative-diff: median 100 * (ALG - EquiD) / EquiD per (J, I), one series
///   per non-equid method.
/// helpers-curve: median EquiD makespan (first method if no equid rows)
///   against J, one polyline per helper count I.
/// Throws PlotError when the rows hold nothing to draw.
std::string render_plot(PlotKind kind, const std::vector<CsvRow>& rows);

}  // namespace slsched::harness
