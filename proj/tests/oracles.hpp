#pragma once

// Slow reference implementations used only to check the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "slsched/lp.hpp"
#include "slsched/model.hpp"

namespace oracle {

using slsched::Assignment;
using slsched::Instance;
using slsched::Time;

inline constexpr Time kNone = std::numeric_limits<Time>::max();

/// Calls f on every map clients -> helpers (I^J of them), feasible or not.
inline void for_each_map(std::size_t J, std::size_t I, const std::function<void(const Assignment&)>& f) {
	Assignment a;
	a.helper_of.assign(J, 0);
	while (true) {
		f(a);
		std::size_t k = 0;
		while (k < J && ++a.helper_of[k] == I)
			a.helper_of[k++] = 0;
		if (k == J)
			return;
	}
}

/// Adjacency plus either cardinality (|Z(i)| <= M_i) or demand capacity.
inline bool feasible(const Instance& inst, const Assignment& a, bool cardinality) {
	std::vector<Time> used(inst.num_helpers, 0);
	for (std::size_t j = 0; j < inst.num_clients; ++j) {
		if (!inst.has_edge(j, a.helper_of[j]))
			return false;
		used[a.helper_of[j]] += cardinality ? 1 : inst.demand[j];
	}
	for (std::size_t i = 0; i < inst.num_helpers; ++i)
		if (used[i] > inst.capacity[i])
			return false;
	return true;
}

inline Time max_load(const Instance& inst, const Assignment& a) {
	std::vector<Time> load(inst.num_helpers, 0);
	for (std::size_t j = 0; j < inst.num_clients; ++j)
		load[a.helper_of[j]] += inst.t2(j, a.helper_of[j]) + inst.t4(j, a.helper_of[j]);
	return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

/// Minimum over feasible assignments of the largest helper work; kNone if
/// nothing is feasible.
inline Time min_max_load(const Instance& inst, bool cardinality) {
	Time best = kNone;
	for_each_map(inst.num_clients, inst.num_helpers, [&](const Assignment& a) {
		if (feasible(inst, a, cardinality))
			best = std::min(best, max_load(inst, a));
	});
	return best;
}

/// Best completion of one helper over every task permutation (T2 of a
/// client before its T4), each realized with earliest starts.
inline Time helper_optimum(const Instance& inst, std::size_t helper, const std::vector<std::size_t>& clients) {
	const std::size_t n = clients.size();
	if (n == 0)
		return 0;
	std::vector<int> tasks(2 * n);
	for (std::size_t k = 0; k < 2 * n; ++k)
		tasks[k] = static_cast<int>(k);  // 2c = T2 of clients[c], 2c+1 = T4
	Time best = kNone;
	do {
		std::vector<Time> t2_end(n, -1);
		bool ok = true;
		Time t = 0, worst = 0;
		for (int task : tasks) {
			const std::size_t c = static_cast<std::size_t>(task / 2);
			const std::size_t j = clients[c];
			if (task % 2 == 0) {
				t = std::max(t, inst.release[j]) + inst.t2(j, helper);
				t2_end[c] = t;
			} else {
				if (t2_end[c] < 0) {
					ok = false;
					break;
				}
				t = std::max(t, t2_end[c] + inst.t3_delay[j]) + inst.t4(j, helper);
				worst = std::max(worst, t + inst.t5_time[j]);
			}
		}
		if (ok)
			best = std::min(best, worst);
	} while (std::next_permutation(tasks.begin(), tasks.end()));
	return best;
}

/// Non-preemptive optimum under demand capacities; kNone if infeasible.
inline Time optimal_makespan(const Instance& inst) {
	Time best = kNone;
	for_each_map(inst.num_clients, inst.num_helpers, [&](const Assignment& a) {
		if (!feasible(inst, a, false))
			return;
		Time worst = 0;
		for (std::size_t i = 0; i < inst.num_helpers; ++i) {
			std::vector<std::size_t> mine;
			for (std::size_t j = 0; j < inst.num_clients; ++j)
				if (a.helper_of[j] == i)
					mine.push_back(j);
			worst = std::max(worst, helper_optimum(inst, i, mine));
		}
		best = std::min(best, worst);
	});
	return best;
}

/// Minimum of c.x for a two-variable program by enumerating every
/// intersection of two boundary lines (constraints and bounds). nullopt
/// when no vertex is feasible. Assumes a bounded feasible region.
inline std::optional<double> two_var_minimum(const slsched::lp::LinearProgram& p) {
	struct Line {
		double a, b, c;  // a x + b y = c
	};
	std::vector<Line> lines;
	for (const auto& con : p.constraints)
		lines.push_back({con.coeffs[0], con.coeffs[1], con.rhs});
	for (std::size_t v = 0; v < 2; ++v) {
		const double ax = v == 0 ? 1 : 0, ay = v == 1 ? 1 : 0;
		lines.push_back({ax, ay, p.bounds[v].lower});
		if (std::isfinite(p.bounds[v].upper))
			lines.push_back({ax, ay, p.bounds[v].upper});
	}
	std::optional<double> best;
	for (std::size_t u = 0; u < lines.size(); ++u)
		for (std::size_t w = u + 1; w < lines.size(); ++w) {
			const double det = lines[u].a * lines[w].b - lines[w].a * lines[u].b;
			if (std::abs(det) < 1e-12)
				continue;
			const double x = (lines[u].c * lines[w].b - lines[w].c * lines[u].b) / det;
			const double y = (lines[u].a * lines[w].c - lines[w].a * lines[u].c) / det;
			if (slsched::lp::max_violation(p, {x, y}) > 1e-7)
				continue;
			const double obj = p.objective[0] * x + p.objective[1] * y;
			if (!best || obj < *best)
				best = obj;
		}
	return best;
}

/// A random instance for property tests.
struct RandomSpec {
	std::size_t max_clients = 4;
	std::size_t max_helpers = 2;
	Time max_time = 8;
	bool unit_demand = true;
	Time max_demand = 3;
	double edge_probability = 1.0;
	bool zero_chain = false;  // r = l = r' = 0
};

inline Instance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
	auto pick = [&](Time lo, Time hi) { return std::uniform_int_distribution<Time>(lo, hi)(rng); };
	const std::size_t J = static_cast<std::size_t>(pick(1, static_cast<Time>(spec.max_clients)));
	const std::size_t I = static_cast<std::size_t>(pick(1, static_cast<Time>(spec.max_helpers)));
	Instance inst = Instance::blank(J, I);
	for (std::size_t j = 0; j < J; ++j) {
		inst.demand[j] = spec.unit_demand ? 1 : pick(1, spec.max_demand);
		if (!spec.zero_chain) {
			inst.release[j] = pick(0, spec.max_time);
			inst.t3_delay[j] = pick(0, spec.max_time);
			inst.t5_time[j] = pick(0, spec.max_time);
		}
		bool any = false;
		for (std::size_t i = 0; i < I; ++i) {
			const bool e = std::uniform_real_distribution<double>(0, 1)(rng) < spec.edge_probability;
			inst.set_edge(j, i, e);
			any = any || e;
			inst.set_t2(j, i, pick(0, spec.max_time));
			inst.set_t4(j, i, pick(0, spec.max_time));
		}
		if (!any)
			inst.set_edge(j, static_cast<std::size_t>(pick(0, static_cast<Time>(I) - 1)), true);
	}
	Time total = 0;
	for (Time d : inst.demand)
		total += d;
	for (std::size_t i = 0; i < I; ++i)
		inst.capacity[i] = pick(0, total);
	return inst;
}

}  // namespace oracle
