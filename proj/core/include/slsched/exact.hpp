#pragma once

// Exact solvers for small instances:
//  * min-max work assignment by branch-and-bound (the assignment step of
//    the EquiD heuristic), honoring arbitrary memory demands;
//  * the optimal non-preemptive makespan by exhaustive search, used as
//    ground truth in tests and benchmarks.
//
// Both are exponential in the worst case and run under a SearchBudget.

#include <cstdint>
#include <optional>

#include "slsched/model.hpp"

namespace slsched {

struct SearchBudget {
	std::uint64_t max_nodes = 50'000'000;
	std::int64_t time_limit_ms = 60'000;

	/// Throws InvalidInput unless both limits are positive.
	void require_valid() const;
};

enum class SearchStatus {
	Optimal,          // search finished; result is exact
	BudgetExhausted,  // stopped early; result (if any) is the incumbent
	Infeasible,       // no feasible assignment exists
};

const char* to_string(SearchStatus s);

struct MinMaxResult {
	SearchStatus status = SearchStatus::Infeasible;
	std::optional<Assignment> assignment;
	/// max_i sum_{j on i} p*_ij of `assignment`.
	Time objective = 0;
	std::uint64_t nodes = 0;
};

/// Minimizes the largest per-helper work sum_j p*_ij over assignments that
/// respect the graph and memory capacities. Clients are branched in
/// decreasing demand order; children in increasing p*_ij order.
MinMaxResult min_max_assign(const Instance& inst, const SearchBudget& budget);

struct OracleResult {
	SearchStatus status = SearchStatus::Infeasible;
	Time makespan = 0;
	std::optional<Assignment> assignment;
	std::optional<Schedule> schedule;
	std::uint64_t nodes = 0;
};

/// Optimal non-preemptive makespan. Enumerates feasible assignments in
/// lexicographic order; per helper and client set, searches all T2/T4
/// orders (each T2 before its own T4) realized with earliest starts. Ties
/// go to the lexicographically smallest assignment. Throws InvalidInput for
/// more than 62 clients.
OracleResult oracle_opt(const Instance& inst, const SearchBudget& budget);

/// Earliest-start realization of one helper's task order. Each entry is
/// (client, kind); T2 of a client must precede its T4. Returns the
/// completion time of the helper's last batch (max c_j) and appends the
/// intervals to `out` when non-null.
Time realize_order(const Instance& inst, HelperId helper,
                   const std::vector<std::pair<ClientId, TaskKind>>& order, Schedule* out = nullptr);

}  // namespace slsched
