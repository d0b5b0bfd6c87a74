#pragma once

// Helper-side schedulers. Both take a feasible assignment and produce a
// complete non-preemptive schedule; each helper is handled independently.

#include "slsched/model.hpp"

namespace slsched {

/// Straggler-aware list scheduling. Per helper: the pending-T2 queue is
/// ordered by decreasing T3 delay, the pending-T4 queue by decreasing T5
/// time (ties by client index). Whenever a T2 is released it runs the
/// first released T2 in queue order; otherwise the first T4 in queue order
/// whose delay has elapsed. When nothing can run the clock jumps to the
/// next release or T4 ready time.
///
/// Throws InvalidInput when the assignment is not feasible.
Schedule schedule_straggler_first(const Instance& inst, const Assignment& a);

/// First-come-first-serve: per helper, always run the ready task with the
/// earliest ready time (r_j for T2, T2-end + l_j for T4). Ties: T2 before
/// T4, then lower client index.
///
/// Throws InvalidInput when the assignment is not feasible.
Schedule schedule_fcfs(const Instance& inst, const Assignment& a);

/// Idle time of one helper, split by what was still pending.
struct IdleProfile {
	/// Idle slots before the last T2 on the helper starts.
	Time while_t2_pending = 0;
	/// Idle slots after the last T2 ends and before the last T4 starts.
	Time while_only_t4_pending = 0;
};

/// Read off a non-preemptive schedule.
IdleProfile idle_profile(const Schedule& s, HelperId helper);

}  // namespace slsched
