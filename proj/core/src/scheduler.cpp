#include "slsched/scheduler.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <tuple>

namespace slsched {

namespace {

constexpr Time kNever = std::numeric_limits<Time>::max();

void require_feasible(const Instance& inst, const Assignment& a) {
	inst.require_valid();
	auto verdict = validate_assignment(inst, a);
	if (!verdict.ok())
		throw InvalidInput("infeasible assignment:\n" + verdict.summary());
}

Schedule start_schedule(const Instance& inst) {
	Schedule s;
	s.completion.assign(inst.num_clients, 0);
	return s;
}

void finish_schedule(Schedule& s) {
	s.makespan = 0;
	for (Time c : s.completion)
		s.makespan = std::max(s.makespan, c);
}

[[maybe_unused]] Time max_over(const std::vector<ClientId>& clients, const std::vector<Time>& v) {
	Time m = 0;
	for (ClientId j : clients)
		m = std::max(m, v[j]);
	return m;
}

}  // namespace

Schedule schedule_straggler_first(const Instance& inst, const Assignment& a) {
	require_feasible(inst, a);
	Schedule s = start_schedule(inst);
	std::vector<Time> ready4(inst.num_clients, kNever);
	const auto groups = a.clients_by_helper(inst.num_helpers);

	for (HelperId i = 0; i < inst.num_helpers; ++i) {
		std::vector<ClientId> q2 = groups[i];
		std::vector<ClientId> q4 = groups[i];
		std::stable_sort(q2.begin(), q2.end(),
		                 [&](ClientId x, ClientId y) { return inst.t3_delay[x] > inst.t3_delay[y]; });
		std::stable_sort(q4.begin(), q4.end(),
		                 [&](ClientId x, ClientId y) { return inst.t5_time[x] > inst.t5_time[y]; });

		Time t = 0;
		while (!q2.empty() || !q4.empty()) {
			Time next = kNever, next_release = kNever;
			for (ClientId j : q2)
				next_release = std::min(next_release, inst.release[j]);
			next = next_release;
			for (ClientId j : q4)
				next = std::min(next, ready4[j]);
			t = std::max(t, next);

			if (!q2.empty() && t >= next_release) {
				auto it = std::find_if(q2.begin(), q2.end(), [&](ClientId j) { return inst.release[j] <= t; });
				const ClientId j = *it;
				q2.erase(it);
				s.intervals.push_back({i, j, TaskKind::T2, t, t + inst.t2(j, i)});
				t += inst.t2(j, i);
				ready4[j] = t + inst.t3_delay[j];
			} else {
				auto it = std::find_if(q4.begin(), q4.end(), [&](ClientId j) { return ready4[j] <= t; });
				assert(it != q4.end());
				const ClientId j = *it;
				q4.erase(it);
				s.intervals.push_back({i, j, TaskKind::T4, t, t + inst.t4(j, i)});
				t += inst.t4(j, i);
				s.completion[j] = t + inst.t5_time[j];
			}
		}
		assert(idle_profile(s, i).while_t2_pending <= max_over(groups[i], inst.release));
		assert(idle_profile(s, i).while_only_t4_pending <= max_over(groups[i], inst.t3_delay));
	}
	finish_schedule(s);
	return s;
}

Schedule schedule_fcfs(const Instance& inst, const Assignment& a) {
	require_feasible(inst, a);
	Schedule s = start_schedule(inst);
	const auto groups = a.clients_by_helper(inst.num_helpers);

	struct Task {
		Time ready;
		TaskKind kind;
		ClientId client;
		auto key() const { return std::tie(ready, kind, client); }
	};

	for (HelperId i = 0; i < inst.num_helpers; ++i) {
		std::vector<Task> pending;
		for (ClientId j : groups[i])
			pending.push_back({inst.release[j], TaskKind::T2, j});

		Time t = 0;
		while (!pending.empty()) {
			auto earliest = std::min_element(pending.begin(), pending.end(),
			                                 [](const Task& x, const Task& y) { return x.key() < y.key(); });
			t = std::max(t, earliest->ready);
			const Task task = *earliest;
			pending.erase(earliest);
			const ClientId j = task.client;
			if (task.kind == TaskKind::T2) {
				s.intervals.push_back({i, j, TaskKind::T2, t, t + inst.t2(j, i)});
				t += inst.t2(j, i);
				pending.push_back({t + inst.t3_delay[j], TaskKind::T4, j});
			} else {
				s.intervals.push_back({i, j, TaskKind::T4, t, t + inst.t4(j, i)});
				t += inst.t4(j, i);
				s.completion[j] = t + inst.t5_time[j];
			}
		}
	}
	finish_schedule(s);
	return s;
}

IdleProfile idle_profile(const Schedule& s, HelperId helper) {
	std::vector<Interval> mine;
	for (const auto& iv : s.intervals)
		if (iv.helper == helper)
			mine.push_back(iv);
	IdleProfile out;
	if (mine.empty())
		return out;

	Time last_t2_start = -1, last_t2_end = 0, last_t4_start = -1;
	for (const auto& iv : mine) {
		if (iv.kind == TaskKind::T2 && iv.start >= last_t2_start) {
			last_t2_start = iv.start;
			last_t2_end = iv.end;
		}
		if (iv.kind == TaskKind::T4)
			last_t4_start = std::max(last_t4_start, iv.start);
	}
	// Busy slots inside [from, to).
	auto busy = [&](Time from, Time to) {
		Time b = 0;
		for (const auto& iv : mine)
			b += std::max<Time>(0, std::min(iv.end, to) - std::max(iv.start, from));
		return b;
	};
	if (last_t2_start >= 0)
		out.while_t2_pending = last_t2_start - busy(0, last_t2_start);
	if (last_t4_start > last_t2_end)
		out.while_only_t4_pending = (last_t4_start - last_t2_end) - busy(last_t2_end, last_t4_start);
	return out;
}

}  // namespace slsched
