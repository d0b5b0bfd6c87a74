#pragma once

// Generated-instance sweeps: config parsing, parallel execution and the
// per-group summary table.

#include <filesystem>
#include <string>
#include <vector>

#include "harness/csv.hpp"
#include "slsched/instgen.hpp"

namespace slsched::harness {

/// Cartesian product clients x helpers x levels x seeds, in that nesting
/// order (seeds innermost).
struct SweepConfig {
	std::vector<std::size_t> clients;
	std::vector<std::size_t> helpers;
	std::vector<int> levels;
	std::vector<std::uint64_t> seeds;
	/// Everything else (profiles, slack, demands) shared by all runs.
	GeneratorConfig base = GeneratorConfig::defaults();
};

/// Document fields: "clients", "helpers", "levels" (lists or scalars);
/// either "seeds" (list) or "seed" + "repetitions"; plus any generator
/// config field. Throws ParseError.
SweepConfig parse_sweep_config(const std::string& text, const std::filesystem::path& base_dir = {});

/// Replaces the seed list by first, first+1, ..., first+count-1.
void set_seed_range(SweepConfig& config, std::uint64_t first, std::size_t count);

struct SweepOptions {
	std::vector<Method> methods;
	SearchBudget budget;
	/// 0 means one worker per logical processor.
	unsigned jobs = 0;
};

/// Stable id of a generated instance, e.g. "L3-J20-I5-s7".
std::string sweep_instance_id(int level, std::size_t clients, std::size_t helpers, std::uint64_t seed);

/// Runs every method on every generated instance. Rows come back in
/// config order whatever the completion order. Generation failures give
/// rejected rows; nothing aborts the sweep.
std::vector<CsvRow> run_sweep(const SweepConfig& config, const SweepOptions& options);

inline constexpr const char* kSummaryHeader =
	"J,I,level,method,runs,ok,median_makespan,mean_makespan,median_wall_ms,mean_wall_ms,"
	"median_rel_diff_vs_equid,mean_rel_diff_vs_equid,mean_subopt_vs_oracle,max_subopt_vs_oracle,"
	"max_ratio_vs_oracle";

struct SummaryRow {
	std::size_t clients = 0;
	std::size_t helpers = 0;
	std::optional<int> level;
	std::string method;
	std::size_t runs = 0;
	std::size_t ok = 0;
	std::optional<double> median_makespan, mean_makespan;
	double median_wall_ms = 0.0, mean_wall_ms = 0.0;
	/// (ALG - EquiD) / EquiD over instances where both produced a schedule.
	std::optional<double> median_rel_diff, mean_rel_diff;
	/// (ALG - OPT) / OPT and ALG / OPT over instances the oracle solved.
	std::optional<double> mean_subopt, max_subopt, max_ratio;
};

/// Groups by (J, I, level, method) in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<CsvRow>& rows);

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

double median(std::vector<double> v);

}  // namespace slsched::harness
