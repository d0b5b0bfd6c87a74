#pragma once

// Core data model: split-learning batch instances, client-helper
// assignments and helper-side schedules.
//
// Indices are 0-based in memory. Every external format (files, CSV,
// diagnostics) uses 1-based client and helper numbers.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace slsched {

/// Discrete time, measured in slots.
using Time = std::int64_t;

using ClientId = std::size_t;
using HelperId = std::size_t;

/// Thrown when an input violates a precondition of the operation it was
/// handed to (malformed instance, infeasible assignment, bad schedule).
class InvalidInput : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// One batch of split-learning work.
///
/// Per client j: release r_j (T1), delay l_j (T3), tail r'_j (T5), memory
/// demand d_j. Per (client, helper) edge: forward time p_ij (T2) and
/// backward time p'_ij (T4). Per helper: memory capacity M_i.
/// Dense client-major tables hold the pairwise data; entries for
/// non-edges are kept but ignored.
struct Instance {
	std::size_t num_clients = 0;
	std::size_t num_helpers = 0;

	std::vector<std::uint8_t> edge;   // num_clients x num_helpers
	std::vector<Time> capacity;       // per helper
	std::vector<Time> demand;         // per client
	std::vector<Time> release;        // per client
	std::vector<Time> t2_time;        // num_clients x num_helpers
	std::vector<Time> t3_delay;       // per client
	std::vector<Time> t4_time;        // num_clients x num_helpers
	std::vector<Time> t5_time;        // per client

	/// Zero durations, unit demands, unit capacities, complete graph.
	static Instance blank(std::size_t clients, std::size_t helpers);

	bool has_edge(ClientId j, HelperId i) const { return edge[j * num_helpers + i] != 0; }
	Time t2(ClientId j, HelperId i) const { return t2_time[j * num_helpers + i]; }
	Time t4(ClientId j, HelperId i) const { return t4_time[j * num_helpers + i]; }
	/// Combined helper work p*_ij = p_ij + p'_ij.
	Time work(ClientId j, HelperId i) const { return t2(j, i) + t4(j, i); }
	/// r_j + p_ij + l_j + p'_ij + r'_j: the shortest possible batch for j on i.
	Time chain(ClientId j, HelperId i) const {
		return release[j] + t2(j, i) + t3_delay[j] + t4(j, i) + t5_time[j];
	}

	void set_edge(ClientId j, HelperId i, bool present) { edge[j * num_helpers + i] = present ? 1 : 0; }
	void set_t2(ClientId j, HelperId i, Time v) { t2_time[j * num_helpers + i] = v; }
	void set_t4(ClientId j, HelperId i, Time v) { t4_time[j * num_helpers + i] = v; }

	/// True when every d_j == 1 (the cardinality-constrained variant).
	bool unit_demand() const;

	/// Structural and value problems with the instance, empty when valid.
	std::vector<std::string> problems() const;

	/// Throws InvalidInput listing problems() when non-empty.
	void require_valid() const;

	bool operator==(const Instance&) const = default;
};

/// Client-to-helper map Y.
struct Assignment {
	std::vector<HelperId> helper_of;

	/// Z_Y(i) for every helper, each list in increasing client order.
	std::vector<std::vector<ClientId>> clients_by_helper(std::size_t num_helpers) const;

	bool operator==(const Assignment&) const = default;
};

/// Sum of d_j over clients on each helper.
std::vector<Time> memory_loads(const Instance& inst, const Assignment& a);

/// Sum of p*_ij over clients on each helper.
std::vector<Time> work_loads(const Instance& inst, const Assignment& a);

/// max_i of work_loads(); 0 for an empty instance.
Time max_work_load(const Instance& inst, const Assignment& a);

enum class TaskKind : std::uint8_t { T2, T4 };

const char* to_string(TaskKind kind);

/// A contiguous run of slots [start, end) on one helper. A task may be split
/// into several intervals (preemption); every schedule this library emits
/// uses exactly one interval per task.
struct Interval {
	HelperId helper = 0;
	ClientId client = 0;
	TaskKind kind = TaskKind::T2;
	Time start = 0;
	Time end = 0;

	Time length() const { return end - start; }
	bool operator==(const Interval&) const = default;
};

struct Schedule {
	std::vector<Interval> intervals;
	std::vector<Time> completion;   // c_j per client
	Time makespan = 0;

	bool operator==(const Schedule&) const = default;
};

enum class ViolationKind : std::uint8_t {
	BadIndex,
	MissingEdge,
	CapacityExceeded,
	WrongHelper,
	MissingTask,
	DurationMismatch,
	NegativeStart,
	MalformedInterval,
	ReleaseViolated,
	DelayViolated,
	Overlap,
	CompletionMismatch,
	MakespanMismatch,
};

const char* to_string(ViolationKind kind);

struct Violation {
	ViolationKind kind;
	std::string message;
};

/// Outcome of a feasibility check. Always exhaustive: every failed
/// constraint gets its own entry.
struct Verdict {
	std::vector<Violation> violations;

	bool ok() const { return violations.empty(); }
	bool has(ViolationKind kind) const;
	std::string summary() const;
};

/// Adjacency and memory-capacity check for an assignment.
Verdict validate_assignment(const Instance& inst, const Assignment& a);

/// Checks every schedule constraint: helper placement, durations, release
/// dates, T3 delays, single-threaded helpers, and the reported completion
/// times and makespan. Multi-interval (preemptive) tasks are accepted as
/// long as their pieces sum to the task duration.
Verdict validate_schedule(const Instance& inst, const Assignment& a, const Schedule& s);

/// max_j c_j recomputed from the intervals. Throws InvalidInput when the
/// schedule is not valid for the assignment.
Time compute_makespan(const Instance& inst, const Assignment& a, const Schedule& s);

/// Same, with the assignment read off the schedule (helper of each client's
/// first interval). An empty client set has makespan 0.
Time compute_makespan(const Instance& inst, const Schedule& s);

/// Helper of each client's first interval in s; clients without intervals
/// map to num_helpers (an invalid index).
Assignment assignment_from_schedule(const Instance& inst, const Schedule& s);

/// Completion times recomputed from intervals: end of last T4 piece + r'_j.
/// Clients without a T4 interval get -1.
std::vector<Time> recompute_completion(const Instance& inst, const Schedule& s);

}  // namespace slsched
