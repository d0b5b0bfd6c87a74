#include "slsched/pipelines.hpp"

#include <algorithm>
#include <chrono>

#include "slsched/gapcc.hpp"
#include "slsched/scheduler.hpp"

namespace slsched {

namespace {

class Stopwatch {
public:
	Stopwatch() : start_(std::chrono::steady_clock::now()) {}

	double ms() const {
		return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
	}

private:
	std::chrono::steady_clock::time_point start_;
};

RunReport failed(Method m, RunStatus status, std::string note) {
	RunReport r;
	r.method = m;
	r.status = status;
	r.note = std::move(note);
	return r;
}

void attach(RunReport& r, Assignment a, Schedule s) {
	r.makespan = s.makespan;
	r.assignment = std::move(a);
	r.schedule = std::move(s);
}

using Scheduler = Schedule (*)(const Instance&, const Assignment&);

RunReport min_max_then(Method m, const Instance& inst, const SearchBudget& budget, Scheduler schedule) {
	Stopwatch watch;
	const MinMaxResult mm = min_max_assign(inst, budget);
	RunReport r;
	if (!mm.assignment) {
		r = failed(m, RunStatus::AssignmentFailed,
		           mm.status == SearchStatus::Infeasible ? "no feasible assignment"
		                                                 : "budget exhausted before any feasible assignment");
	} else {
		r.method = m;
		r.status = mm.status == SearchStatus::Optimal ? RunStatus::Ok : RunStatus::BudgetExhausted;
		if (r.status == RunStatus::BudgetExhausted)
			r.note = "assignment not proven optimal";
		attach(r, *mm.assignment, schedule(inst, *mm.assignment));
	}
	r.wall_time_ms = watch.ms();
	return r;
}

}  // namespace

const char* to_string(Method m) {
	switch (m) {
	case Method::Approx5: return "approx5";
	case Method::EquiD: return "equid";
	case Method::EdFcfs: return "ed-fcfs";
	case Method::Bg: return "bg";
	case Method::Oracle: return "oracle";
	}
	return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
	for (Method m : all_methods())
		if (name == to_string(m))
			return m;
	return std::nullopt;
}

const std::vector<Method>& all_methods() {
	static const std::vector<Method> methods{Method::Approx5, Method::EquiD, Method::EdFcfs, Method::Bg,
	                                         Method::Oracle};
	return methods;
}

const char* to_string(RunStatus s) {
	switch (s) {
	case RunStatus::Ok: return "ok";
	case RunStatus::AssignmentFailed: return "assignment-failed";
	case RunStatus::BudgetExhausted: return "budget-exhausted";
	case RunStatus::Rejected: return "rejected";
	}
	return "unknown";
}

RunReport run_approx5(const Instance& inst) {
	inst.require_valid();
	if (!inst.unit_demand())
		return failed(Method::Approx5, RunStatus::Rejected, "approx5 requires unit demands");
	Stopwatch watch;
	RunReport r;
	auto res = gapcc::assign(inst);
	if (!res) {
		r = failed(Method::Approx5, RunStatus::AssignmentFailed, "no assignment respects the graph and capacities");
	} else {
		r.method = Method::Approx5;
		r.status = RunStatus::Ok;
		r.certified_target = res->certified_target;
		attach(r, res->assignment, schedule_straggler_first(inst, res->assignment));
	}
	r.wall_time_ms = watch.ms();
	return r;
}

RunReport run_equid(const Instance& inst, const SearchBudget& budget) {
	return min_max_then(Method::EquiD, inst, budget, &schedule_straggler_first);
}

RunReport run_ed_fcfs(const Instance& inst, const SearchBudget& budget) {
	return min_max_then(Method::EdFcfs, inst, budget, &schedule_fcfs);
}

std::optional<Assignment> bg_assign(const Instance& inst) {
	inst.require_valid();
	std::vector<Time> residual = inst.capacity;
	std::vector<std::size_t> count(inst.num_helpers, 0);
	Assignment a;
	a.helper_of.assign(inst.num_clients, inst.num_helpers);
	for (ClientId j = 0; j < inst.num_clients; ++j) {
		HelperId pick = inst.num_helpers;
		for (HelperId i = 0; i < inst.num_helpers; ++i)
			if (inst.has_edge(j, i) && residual[i] >= inst.demand[j] &&
			    (pick == inst.num_helpers || count[i] < count[pick]))
				pick = i;
		if (pick == inst.num_helpers)
			return std::nullopt;
		a.helper_of[j] = pick;
		residual[pick] -= inst.demand[j];
		++count[pick];
	}
	return a;
}

RunReport run_bg(const Instance& inst) {
	Stopwatch watch;
	RunReport r;
	if (auto a = bg_assign(inst)) {
		r.method = Method::Bg;
		r.status = RunStatus::Ok;
		attach(r, *a, schedule_fcfs(inst, *a));
	} else {
		r = failed(Method::Bg, RunStatus::AssignmentFailed, "a client found no helper with enough free memory");
	}
	r.wall_time_ms = watch.ms();
	return r;
}

RunReport run_oracle(const Instance& inst, const SearchBudget& budget) {
	Stopwatch watch;
	const OracleResult o = oracle_opt(inst, budget);
	RunReport r;
	if (!o.assignment) {
		r = failed(Method::Oracle, RunStatus::AssignmentFailed,
		           o.status == SearchStatus::Infeasible ? "no feasible assignment"
		                                                : "budget exhausted before any feasible assignment");
	} else {
		r.method = Method::Oracle;
		r.status = o.status == SearchStatus::Optimal ? RunStatus::Ok : RunStatus::BudgetExhausted;
		if (r.status == RunStatus::BudgetExhausted)
			r.note = "not proven optimal";
		attach(r, *o.assignment, *o.schedule);
	}
	r.wall_time_ms = watch.ms();
	return r;
}

RunReport run_method(Method m, const Instance& inst, const SearchBudget& budget) {
	switch (m) {
	case Method::Approx5: return run_approx5(inst);
	case Method::EquiD: return run_equid(inst, budget);
	case Method::EdFcfs: return run_ed_fcfs(inst, budget);
	case Method::Bg: return run_bg(inst);
	case Method::Oracle: return run_oracle(inst, budget);
	}
	throw InvalidInput("unknown method");
}

Time approx5_bound(const Instance& inst, Time certified_target) {
	auto max_of = [](const std::vector<Time>& v) { return v.empty() ? Time{0} : *std::max_element(v.begin(), v.end()); };
	return 2 * certified_target + max_of(inst.release) + max_of(inst.t3_delay) + max_of(inst.t5_time);
}

}  // namespace slsched
