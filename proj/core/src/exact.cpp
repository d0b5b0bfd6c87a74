#include "slsched/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace slsched {

namespace {

constexpr Time kInf = std::numeric_limits<Time>::max() / 4;

class Clock {
public:
	explicit Clock(const SearchBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

	/// Counts one node; true once either limit is hit.
	bool tick() {
		if (stopped_)
			return true;
		++nodes_;
		if (nodes_ > budget_.max_nodes)
			stopped_ = true;
		else if ((nodes_ & 1023) == 0 && elapsed_ms() > budget_.time_limit_ms)
			stopped_ = true;
		return stopped_;
	}

	bool stopped() const { return stopped_; }
	std::uint64_t nodes() const { return nodes_; }

private:
	std::int64_t elapsed_ms() const {
		return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_)
			.count();
	}

	SearchBudget budget_;
	std::chrono::steady_clock::time_point start_;
	std::uint64_t nodes_ = 0;
	bool stopped_ = false;
};

Time ceil_div(Time a, Time b) {
	return (a + b - 1) / b;
}

// ---------------------------------------------------------------- min-max

class MinMaxSearch {
public:
	MinMaxSearch(const Instance& inst, const SearchBudget& budget) : inst_(inst), clock_(budget) {
		const std::size_t J = inst.num_clients;
		order_.resize(J);
		std::iota(order_.begin(), order_.end(), ClientId{0});
		auto least_work = [&](ClientId j) {
			Time least = kInf;
			for (HelperId i = 0; i < inst.num_helpers; ++i)
				if (inst.has_edge(j, i))
					least = std::min(least, inst.work(j, i));
			return least;
		};
		std::stable_sort(order_.begin(), order_.end(), [&](ClientId a, ClientId b) {
			if (inst.demand[a] != inst.demand[b])
				return inst.demand[a] > inst.demand[b];
			return least_work(a) > least_work(b);
		});

		choices_.resize(J);
		for (ClientId j = 0; j < J; ++j) {
			for (HelperId i = 0; i < inst.num_helpers; ++i)
				if (inst.has_edge(j, i) && inst.demand[j] <= inst.capacity[i])
					choices_[j].push_back(i);
			std::stable_sort(choices_[j].begin(), choices_[j].end(),
			                 [&](HelperId a, HelperId b) { return inst.work(j, a) < inst.work(j, b); });
		}

		// Helpers with identical columns are interchangeable.
		const std::size_t I = inst.num_helpers;
		twin_.assign(I, I);
		for (HelperId i = 0; i < I; ++i)
			for (HelperId k = i; k-- > 0 && twin_[i] == I;)
				if (same_helper(k, i))
					twin_[i] = k;

		// Convex helper weights for averaging bounds: uniform, and inversely
		// proportional to each helper's total work.
		std::vector<double> inverse(I, 0.0);
		double inverse_sum = 0.0;
		for (HelperId i = 0; i < I; ++i) {
			double col = 0.0;
			for (ClientId j = 0; j < J; ++j)
				if (inst.has_edge(j, i))
					col += static_cast<double>(inst.work(j, i));
			inverse[i] = col > 0.0 ? 1.0 / col : 0.0;
			inverse_sum += inverse[i];
		}
		weights_.push_back(std::vector<double>(I, 1.0 / static_cast<double>(I)));
		if (inverse_sum > 0.0) {
			for (double& w : inverse)
				w /= inverse_sum;
			weights_.push_back(inverse);
		}
		weighted_suffix_.assign(weights_.size(), std::vector<double>(J + 1, 0.0));
		for (std::size_t w = 0; w < weights_.size(); ++w)
			for (std::size_t k = J; k-- > 0;) {
				const ClientId j = order_[k];
				double least = std::numeric_limits<double>::infinity();
				for (HelperId i : choices_[j])
					least = std::min(least, weights_[w][i] * static_cast<double>(inst.work(j, i)));
				weighted_suffix_[w][k] = weighted_suffix_[w][k + 1] + (choices_[j].empty() ? 0.0 : least);
			}

		suffix_work_.assign(J + 1, 0);
		suffix_demand_.assign(J + 1, 0);
		for (std::size_t k = J; k-- > 0;) {
			const ClientId j = order_[k];
			Time least = kInf;
			for (HelperId i : choices_[j])
				least = std::min(least, inst.work(j, i));
			suffix_work_[k] = suffix_work_[k + 1] + (choices_[j].empty() ? 0 : least);
			suffix_demand_[k] = suffix_demand_[k + 1] + inst.demand[j];
		}
	}

	MinMaxResult run() {
		MinMaxResult out;
		for (ClientId j = 0; j < inst_.num_clients; ++j)
			if (choices_[j].empty())
				return out;

		load_.assign(inst_.num_helpers, 0);
		residual_ = inst_.capacity;
		current_.helper_of.assign(inst_.num_clients, inst_.num_helpers);
		greedy();

		load_.assign(inst_.num_helpers, 0);
		residual_ = inst_.capacity;
		dfs(0, 0);

		out.nodes = clock_.nodes();
		if (best_) {
			out.assignment = best_;
			out.objective = best_value_;
			out.status = clock_.stopped() ? SearchStatus::BudgetExhausted : SearchStatus::Optimal;
		} else {
			out.status = clock_.stopped() ? SearchStatus::BudgetExhausted : SearchStatus::Infeasible;
		}
		return out;
	}

private:
	void greedy() {
		Time worst = 0;
		for (ClientId j : order_) {
			HelperId pick = inst_.num_helpers;
			for (HelperId i : choices_[j])
				if (residual_[i] >= inst_.demand[j] &&
				    (pick == inst_.num_helpers || load_[i] + inst_.work(j, i) < load_[pick] + inst_.work(j, pick)))
					pick = i;
			if (pick == inst_.num_helpers)
				return;
			current_.helper_of[j] = pick;
			load_[pick] += inst_.work(j, pick);
			residual_[pick] -= inst_.demand[j];
			worst = std::max(worst, load_[pick]);
		}
		best_ = current_;
		best_value_ = worst;
	}

	bool same_helper(HelperId a, HelperId b) const {
		if (inst_.capacity[a] != inst_.capacity[b])
			return false;
		for (ClientId j = 0; j < inst_.num_clients; ++j)
			if (inst_.has_edge(j, a) != inst_.has_edge(j, b) ||
			    (inst_.has_edge(j, a) && inst_.work(j, a) != inst_.work(j, b)))
				return false;
		return true;
	}

	Time lower_bound(std::size_t depth, Time worst) const {
		Time lb = worst;
		const Time total = std::accumulate(load_.begin(), load_.end(), Time{0}) + suffix_work_[depth];
		lb = std::max(lb, ceil_div(total, static_cast<Time>(inst_.num_helpers)));
		for (std::size_t w = 0; w < weights_.size(); ++w) {
			double avg = weighted_suffix_[w][depth];
			for (HelperId i = 0; i < inst_.num_helpers; ++i)
				avg += weights_[w][i] * static_cast<double>(load_[i]);
			lb = std::max(lb, static_cast<Time>(std::ceil(avg - 1e-7)));
		}
		for (std::size_t k = depth; k < order_.size(); ++k) {
			const ClientId j = order_[k];
			Time least = kInf;
			for (HelperId i : choices_[j])
				if (residual_[i] >= inst_.demand[j])
					least = std::min(least, load_[i] + inst_.work(j, i));
			lb = std::max(lb, least);
		}
		return lb;
	}

	void dfs(std::size_t depth, Time worst) {
		if (clock_.tick())
			return;
		if (depth == order_.size()) {
			if (!best_ || worst < best_value_) {
				best_ = current_;
				best_value_ = worst;
			}
			return;
		}
		const Time room = std::accumulate(residual_.begin(), residual_.end(), Time{0});
		if (suffix_demand_[depth] > room)
			return;
		const Time lb = lower_bound(depth, worst);
		if (lb >= kInf || (best_ && lb >= best_value_))
			return;

		const ClientId j = order_[depth];
		for (HelperId i : choices_[j]) {
			if (residual_[i] < inst_.demand[j])
				continue;
			if (const HelperId t = twin_[i];
			    t != inst_.num_helpers && load_[t] == load_[i] && residual_[t] == residual_[i])
				continue;
			const Time next = load_[i] + inst_.work(j, i);
			if (best_ && next >= best_value_)
				continue;
			load_[i] = next;
			residual_[i] -= inst_.demand[j];
			current_.helper_of[j] = i;
			dfs(depth + 1, std::max(worst, next));
			load_[i] -= inst_.work(j, i);
			residual_[i] += inst_.demand[j];
			if (clock_.stopped())
				return;
		}
	}

	const Instance& inst_;
	Clock clock_;
	std::vector<ClientId> order_;
	std::vector<std::vector<HelperId>> choices_;
	std::vector<Time> suffix_work_, suffix_demand_;
	std::vector<HelperId> twin_;
	std::vector<std::vector<double>> weights_;
	std::vector<std::vector<double>> weighted_suffix_;
	std::vector<Time> load_, residual_;
	Assignment current_;
	std::optional<Assignment> best_;
	Time best_value_ = kInf;
};

// ----------------------------------------------------------------- oracle

using Order = std::vector<std::pair<ClientId, TaskKind>>;

// Best non-preemptive completion of one helper serving a client subset.
// Depth-first over task orders with earliest starts. Two reductions keep
// it small: a task is never started if another available task could run
// to completion before that start, and among clients with identical data
// only the lowest pending index may start its T2.
class HelperSearch {
public:
	HelperSearch(const Instance& inst, HelperId helper, std::vector<ClientId> clients, Clock& clock)
		: inst_(inst), helper_(helper), clients_(std::move(clients)), clock_(clock) {
		const std::size_t n = clients_.size();
		twin_of_.assign(n, n);
		for (std::size_t a = 0; a < n; ++a)
			for (std::size_t b = a; b-- > 0;)
				if (same_data(clients_[a], clients_[b])) {
					twin_of_[a] = b;
					break;
				}
		t2_end_.assign(n, -1);
		done2_.assign(n, 0);
		done4_.assign(n, 0);
	}

	/// kInf when the budget ran out before any order was completed.
	Time solve(Order* witness) {
		remaining_ = 0;
		for (ClientId j : clients_)
			remaining_ += inst_.work(j, helper_);
		dfs(0, 0, 0);
		if (witness)
			*witness = best_order_;
		return best_;
	}

private:
	bool same_data(ClientId a, ClientId b) const {
		return inst_.release[a] == inst_.release[b] && inst_.t3_delay[a] == inst_.t3_delay[b] &&
		       inst_.t5_time[a] == inst_.t5_time[b] && inst_.t2(a, helper_) == inst_.t2(b, helper_) &&
		       inst_.t4(a, helper_) == inst_.t4(b, helper_);
	}

	Time ready(std::size_t k, TaskKind kind) const {
		const ClientId j = clients_[k];
		return kind == TaskKind::T2 ? inst_.release[j] : t2_end_[k] + inst_.t3_delay[j];
	}

	Time duration(std::size_t k, TaskKind kind) const {
		const ClientId j = clients_[k];
		return kind == TaskKind::T2 ? inst_.t2(j, helper_) : inst_.t4(j, helper_);
	}

	bool available(std::size_t k, TaskKind kind) const {
		if (kind == TaskKind::T2)
			return !done2_[k] && (twin_of_[k] == clients_.size() || done2_[twin_of_[k]]);
		return done2_[k] && !done4_[k];
	}

	Time bound(Time t, Time worst) const {
		Time lb = worst;
		Time tail = kInf;
		for (std::size_t k = 0; k < clients_.size(); ++k) {
			if (done4_[k])
				continue;
			const ClientId j = clients_[k];
			tail = std::min(tail, inst_.t5_time[j]);
			if (!done2_[k])
				lb = std::max(lb, std::max(t, inst_.release[j]) + inst_.t2(j, helper_) + inst_.t3_delay[j] +
				                      inst_.t4(j, helper_) + inst_.t5_time[j]);
			else
				lb = std::max(lb, std::max(t, ready(k, TaskKind::T4)) + inst_.t4(j, helper_) + inst_.t5_time[j]);
		}
		if (tail < kInf)
			lb = std::max(lb, t + remaining_ + tail);
		return lb;
	}

	void dfs(std::size_t placed, Time t, Time worst) {
		if (clock_.tick())
			return;
		if (placed == 2 * clients_.size()) {
			if (worst < best_) {
				best_ = worst;
				best_order_ = order_;
			}
			return;
		}
		if (bound(t, worst) >= best_)
			return;

		// Earliest finish among available tasks, for the insertion rule.
		struct Cand {
			std::size_t k;
			TaskKind kind;
			Time start, finish;
		};
		std::vector<Cand> cands;
		for (std::size_t k = 0; k < clients_.size(); ++k)
			for (TaskKind kind : {TaskKind::T2, TaskKind::T4})
				if (available(k, kind)) {
					const Time s = std::max(t, ready(k, kind));
					cands.push_back({k, kind, s, s + duration(k, kind)});
				}
		std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
			return std::tie(a.start, a.finish, a.kind, a.k) < std::tie(b.start, b.finish, b.kind, b.k);
		});

		for (std::size_t c = 0; c < cands.size(); ++c) {
			const Cand& y = cands[c];
			bool dominated = false;
			for (std::size_t o = 0; o < cands.size() && !dominated; ++o)
				if (o != c && (cands[o].finish < y.start || (cands[o].finish == y.start && o < c)))
					dominated = true;
			if (dominated)
				continue;

			const ClientId j = clients_[y.k];
			const Time work = duration(y.k, y.kind);
			Time next_worst = worst;
			order_.emplace_back(j, y.kind);
			remaining_ -= work;
			if (y.kind == TaskKind::T2) {
				done2_[y.k] = 1;
				t2_end_[y.k] = y.finish;
			} else {
				done4_[y.k] = 1;
				next_worst = std::max(worst, y.finish + inst_.t5_time[j]);
			}
			dfs(placed + 1, y.finish, next_worst);
			if (y.kind == TaskKind::T2) {
				done2_[y.k] = 0;
				t2_end_[y.k] = -1;
			} else {
				done4_[y.k] = 0;
			}
			remaining_ += work;
			order_.pop_back();
			if (clock_.stopped())
				return;
		}
	}

	const Instance& inst_;
	HelperId helper_;
	std::vector<ClientId> clients_;
	Clock& clock_;
	std::vector<std::size_t> twin_of_;
	std::vector<Time> t2_end_;
	std::vector<char> done2_, done4_;
	Time remaining_ = 0;
	Order order_, best_order_;
	Time best_ = kInf;
};

class OracleSearch {
public:
	OracleSearch(const Instance& inst, const SearchBudget& budget) : inst_(inst), clock_(budget) {}

	OracleResult run() {
		OracleResult out;
		const std::size_t J = inst_.num_clients, I = inst_.num_helpers;
		chain_floor_.assign(J, kInf);
		for (ClientId j = 0; j < J; ++j)
			for (HelperId i = 0; i < I; ++i)
				if (inst_.has_edge(j, i) && inst_.demand[j] <= inst_.capacity[i])
					chain_floor_[j] = std::min(chain_floor_[j], inst_.chain(j, i));
		for (ClientId j = 0; j < J; ++j)
			if (chain_floor_[j] == kInf)
				return out;

		suffix_floor_.assign(J + 1, 0);
		for (std::size_t j = J; j-- > 0;)
			suffix_floor_[j] = std::max(suffix_floor_[j + 1], chain_floor_[j]);

		masks_.assign(I, 0);
		memo_.assign(I, {});
		residual_ = inst_.capacity;
		current_.helper_of.assign(J, I);
		dfs(0);

		out.nodes = clock_.nodes();
		if (!best_) {
			out.status = clock_.stopped() ? SearchStatus::BudgetExhausted : SearchStatus::Infeasible;
			return out;
		}
		out.status = clock_.stopped() ? SearchStatus::BudgetExhausted : SearchStatus::Optimal;
		out.makespan = best_value_;
		out.assignment = best_;
		out.schedule = witness(*best_);
		return out;
	}

private:
	// kInf when the search was cut short.
	Time helper_best(HelperId i, std::uint64_t mask) {
		if (mask == 0)
			return 0;
		auto& memo = memo_[i];
		if (auto it = memo.find(mask); it != memo.end())
			return it->second;
		HelperSearch search(inst_, i, clients_of(mask), clock_);
		const Time v = search.solve(nullptr);
		if (!clock_.stopped())
			memo.emplace(mask, v);
		return v;
	}

	std::vector<ClientId> clients_of(std::uint64_t mask) const {
		std::vector<ClientId> out;
		for (ClientId j = 0; j < inst_.num_clients; ++j)
			if (mask >> j & 1)
				out.push_back(j);
		return out;
	}

	void dfs(ClientId j) {
		if (clock_.tick())
			return;
		Time lb = suffix_floor_[j];
		for (HelperId i = 0; i < inst_.num_helpers && lb < best_value_; ++i)
			lb = std::max(lb, helper_best(i, masks_[i]));
		if (clock_.stopped() || lb >= best_value_)
			return;
		if (j == inst_.num_clients) {
			best_ = current_;
			best_value_ = lb;
			return;
		}
		for (HelperId i = 0; i < inst_.num_helpers; ++i) {
			if (!inst_.has_edge(j, i) || residual_[i] < inst_.demand[j])
				continue;
			masks_[i] |= std::uint64_t{1} << j;
			residual_[i] -= inst_.demand[j];
			current_.helper_of[j] = i;
			dfs(j + 1);
			masks_[i] &= ~(std::uint64_t{1} << j);
			residual_[i] += inst_.demand[j];
			if (clock_.stopped())
				return;
		}
	}

	Schedule witness(const Assignment& a) {
		Schedule s;
		s.completion.assign(inst_.num_clients, 0);
		const auto groups = a.clients_by_helper(inst_.num_helpers);
		SearchBudget unlimited{std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::int64_t>::max()};
		Clock free_clock(unlimited);
		for (HelperId i = 0; i < inst_.num_helpers; ++i) {
			if (groups[i].empty())
				continue;
			Order order;
			HelperSearch(inst_, i, groups[i], free_clock).solve(&order);
			realize_order(inst_, i, order, &s);
		}
		s.makespan = 0;
		for (Time c : s.completion)
			s.makespan = std::max(s.makespan, c);
		return s;
	}

	const Instance& inst_;
	Clock clock_;
	std::vector<Time> chain_floor_, suffix_floor_;
	std::vector<std::uint64_t> masks_;
	std::vector<Time> residual_;
	Assignment current_;
	std::optional<Assignment> best_;
	Time best_value_ = kInf;
	std::vector<std::unordered_map<std::uint64_t, Time>> memo_;
};

}  // namespace

void SearchBudget::require_valid() const {
	if (max_nodes == 0 || time_limit_ms <= 0)
		throw InvalidInput("search budget limits must be positive");
}

const char* to_string(SearchStatus s) {
	switch (s) {
	case SearchStatus::Optimal: return "optimal";
	case SearchStatus::BudgetExhausted: return "budget-exhausted";
	case SearchStatus::Infeasible: return "infeasible";
	}
	return "unknown";
}

MinMaxResult min_max_assign(const Instance& inst, const SearchBudget& budget) {
	inst.require_valid();
	budget.require_valid();
	return MinMaxSearch(inst, budget).run();
}

OracleResult oracle_opt(const Instance& inst, const SearchBudget& budget) {
	inst.require_valid();
	budget.require_valid();
	if (inst.num_clients > 62)
		throw InvalidInput("oracle: at most 62 clients are supported");
	return OracleSearch(inst, budget).run();
}

Time realize_order(const Instance& inst, HelperId helper, const Order& order, Schedule* out) {
	std::vector<Time> t2_end(inst.num_clients, -1);
	std::vector<char> t4_done(inst.num_clients, 0);
	if (out && out->completion.size() < inst.num_clients)
		out->completion.resize(inst.num_clients, 0);
	Time t = 0, worst = 0;
	for (const auto& [j, kind] : order) {
		if (j >= inst.num_clients)
			throw InvalidInput("realize_order: unknown client " + std::to_string(j + 1));
		if (kind == TaskKind::T2) {
			if (t2_end[j] >= 0)
				throw InvalidInput("realize_order: T2 of client " + std::to_string(j + 1) + " appears twice");
			const Time start = std::max(t, inst.release[j]);
			t = start + inst.t2(j, helper);
			t2_end[j] = t;
			if (out)
				out->intervals.push_back({helper, j, TaskKind::T2, start, t});
		} else {
			if (t2_end[j] < 0 || t4_done[j])
				throw InvalidInput("realize_order: T4 of client " + std::to_string(j + 1) +
				                   " without a preceding T2 or repeated");
			const Time start = std::max(t, t2_end[j] + inst.t3_delay[j]);
			t = start + inst.t4(j, helper);
			t4_done[j] = 1;
			const Time c = t + inst.t5_time[j];
			worst = std::max(worst, c);
			if (out)
				out->intervals.push_back({helper, j, TaskKind::T4, start, t});
			if (out)
				out->completion[j] = c;
		}
	}
	return worst;
}

}  // namespace slsched
