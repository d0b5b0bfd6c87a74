#pragma once

// End-to-end methods: instance in, assignment + schedule + report out.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slsched/exact.hpp"
#include "slsched/model.hpp"

namespace slsched {

enum class Method { Approx5, EquiD, EdFcfs, Bg, Oracle };

/// CLI and CSV spelling: approx5, equid, ed-fcfs, bg, oracle.
const char* to_string(Method m);
std::optional<Method> parse_method(std::string_view name);
/// All methods in canonical order.
const std::vector<Method>& all_methods();

enum class RunStatus {
	Ok,
	AssignmentFailed,
	BudgetExhausted,  // a schedule exists but its assignment may not be optimal
	Rejected,         // input outside the method's domain
};

const char* to_string(RunStatus s);

struct RunReport {
	Method method = Method::EquiD;
	RunStatus status = RunStatus::AssignmentFailed;
	std::optional<Time> makespan;  // set iff status is Ok or BudgetExhausted
	double wall_time_ms = 0.0;
	std::string note;

	std::optional<Assignment> assignment;
	std::optional<Schedule> schedule;
	/// approx5 only: the least feasible LP target of the assignment step.
	std::optional<Time> certified_target;

	bool has_schedule() const { return makespan.has_value(); }
};

/// LP-rounded cardinality assignment + straggler-first schedule. Only for
/// unit demands; any other instance comes back Rejected.
RunReport run_approx5(const Instance& inst);

/// Exact min-max work assignment + straggler-first schedule.
RunReport run_equid(const Instance& inst, const SearchBudget& budget);

/// Same assignment as run_equid, FCFS schedule.
RunReport run_ed_fcfs(const Instance& inst, const SearchBudget& budget);

/// Greedy fewest-clients assignment in client order + FCFS schedule.
RunReport run_bg(const Instance& inst);

/// Exhaustive optimum; BudgetExhausted carries the best schedule found.
RunReport run_oracle(const Instance& inst, const SearchBudget& budget);

RunReport run_method(Method m, const Instance& inst, const SearchBudget& budget);

/// 2 T* + max r + max l + max r': the bound approx5 makespans obey.
Time approx5_bound(const Instance& inst, Time certified_target);

/// The B-G assignment step alone; nullopt when some client finds no helper.
std::optional<Assignment> bg_assign(const Instance& inst);

}  // namespace slsched
