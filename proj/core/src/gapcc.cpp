#include "slsched/gapcc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "slsched/lp.hpp"

namespace slsched::gapcc {

namespace {

constexpr double kSupport = 1e-9;
constexpr double kCheck = 1e-6;

// Kuhn's augmenting-path matching of clients to slots. Clients are tried
// in index order and slots in list order, which fixes the result.
class SlotMatcher {
public:
	SlotMatcher(std::size_t clients, std::size_t slots) : adj_(clients), slot_owner_(slots, kNone) {}

	void link(ClientId j, std::size_t slot) {
		if (std::find(adj_[j].begin(), adj_[j].end(), slot) == adj_[j].end())
			adj_[j].push_back(slot);
	}

	bool match_all() {
		for (ClientId j = 0; j < adj_.size(); ++j) {
			seen_.assign(slot_owner_.size(), 0);
			if (!augment(j))
				return false;
		}
		return true;
	}

	/// Client matched to each slot, kNone for empty slots.
	const std::vector<std::size_t>& owners() const { return slot_owner_; }

	static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

private:
	bool augment(ClientId j) {
		for (std::size_t s : adj_[j]) {
			if (seen_[s])
				continue;
			seen_[s] = 1;
			if (slot_owner_[s] == kNone || augment(slot_owner_[s])) {
				slot_owner_[s] = j;
				return true;
			}
		}
		return false;
	}

	std::vector<std::vector<std::size_t>> adj_;
	std::vector<std::size_t> slot_owner_;
	std::vector<char> seen_;
};

}  // namespace

FractionalAssignment FractionalAssignment::zeros(std::size_t clients, std::size_t helpers, Time target) {
	FractionalAssignment fa;
	fa.num_clients = clients;
	fa.num_helpers = helpers;
	fa.x.assign(clients * helpers, 0.0);
	fa.target = target;
	return fa;
}

FractionalAssignment FractionalAssignment::from(const Instance& inst, const Assignment& a, Time target) {
	auto fa = zeros(inst.num_clients, inst.num_helpers, target);
	for (ClientId j = 0; j < inst.num_clients; ++j)
		fa.at(a.helper_of.at(j), j) = 1.0;
	return fa;
}

std::vector<std::string> check_fractional(const Instance& inst, const FractionalAssignment& fa) {
	std::vector<std::string> out;
	const std::size_t J = inst.num_clients, I = inst.num_helpers;
	if (fa.num_clients != J || fa.num_helpers != I || fa.x.size() != J * I) {
		out.emplace_back("fractional assignment shape does not match the instance");
		return out;
	}
	for (ClientId j = 0; j < J; ++j) {
		double sum = 0.0;
		for (HelperId i = 0; i < I; ++i) {
			const double v = fa.at(i, j);
			sum += v;
			std::ostringstream os;
			if (v < -kCheck || v > 1.0 + kCheck)
				os << "x(" << i + 1 << "," << j + 1 << ") = " << v << " outside [0,1]";
			else if (v > kCheck && !inst.has_edge(j, i))
				os << "x(" << i + 1 << "," << j + 1 << ") > 0 on a non-edge";
			else if (v > kCheck && inst.work(j, i) > fa.target)
				os << "x(" << i + 1 << "," << j + 1 << ") > 0 with p* " << inst.work(j, i) << " > target "
				   << fa.target;
			if (!os.str().empty())
				out.push_back(os.str());
		}
		if (std::abs(sum - 1.0) > kCheck)
			out.push_back("client " + std::to_string(j + 1) + " is covered " + std::to_string(sum) + " times");
	}
	for (HelperId i = 0; i < I; ++i) {
		double count = 0.0, load = 0.0;
		for (ClientId j = 0; j < J; ++j) {
			count += fa.at(i, j);
			load += fa.at(i, j) * static_cast<double>(inst.work(j, i));
		}
		if (count > static_cast<double>(inst.capacity[i]) + kCheck)
			out.push_back("helper " + std::to_string(i + 1) + " holds " + std::to_string(count) + " clients > " +
			              std::to_string(inst.capacity[i]));
		if (load > static_cast<double>(fa.target) + kCheck * (1.0 + static_cast<double>(fa.target)))
			out.push_back("helper " + std::to_string(i + 1) + " load " + std::to_string(load) + " > target " +
			              std::to_string(fa.target));
	}
	return out;
}

std::optional<FractionalAssignment> lp_feasible(const Instance& inst, Time target) {
	if (target < 0)
		throw InvalidInput("gapcc: negative target");
	const std::size_t J = inst.num_clients, I = inst.num_helpers;

	struct Var {
		HelperId helper;
		ClientId client;
	};
	std::vector<Var> vars;
	for (ClientId j = 0; j < J; ++j) {
		bool any = false;
		for (HelperId i = 0; i < I; ++i)
			if (inst.has_edge(j, i) && inst.work(j, i) <= target && inst.capacity[i] > 0) {
				vars.push_back({i, j});
				any = true;
			}
		if (!any)
			return std::nullopt;
	}
	if (J == 0)
		return FractionalAssignment::zeros(J, I, target);

	lp::LinearProgram prog(vars.size());
	for (std::size_t v = 0; v < vars.size(); ++v) {
		prog.bounds[v] = {0.0, 1.0};
		prog.objective[v] = static_cast<double>(inst.work(vars[v].client, vars[v].helper));
	}
	for (ClientId j = 0; j < J; ++j) {
		std::vector<double> row(vars.size(), 0.0);
		for (std::size_t v = 0; v < vars.size(); ++v)
			if (vars[v].client == j)
				row[v] = 1.0;
		prog.add(std::move(row), lp::Relation::Equal, 1.0);
	}
	for (HelperId i = 0; i < I; ++i) {
		std::vector<double> count(vars.size(), 0.0), load(vars.size(), 0.0);
		bool used = false;
		for (std::size_t v = 0; v < vars.size(); ++v)
			if (vars[v].helper == i) {
				used = true;
				count[v] = 1.0;
				load[v] = static_cast<double>(inst.work(vars[v].client, i));
			}
		if (!used)
			continue;
		prog.add(std::move(count), lp::Relation::LessEqual, static_cast<double>(inst.capacity[i]));
		prog.add(std::move(load), lp::Relation::LessEqual, static_cast<double>(target));
	}

	const lp::Solution sol = lp::solve(prog);
	switch (sol.status) {
	case lp::Status::Optimal: break;
	case lp::Status::Infeasible: return std::nullopt;
	default:
		throw NumericalFailure(std::string("gapcc: LP solver stopped with status ") + lp::to_string(sol.status));
	}
	auto fa = FractionalAssignment::zeros(J, I, target);
	for (std::size_t v = 0; v < vars.size(); ++v)
		fa.at(vars[v].helper, vars[v].client) = sol.values[v];
	return fa;
}

Assignment round_assignment(const FractionalAssignment& fa, const Instance& inst) {
	if (auto problems = check_fractional(inst, fa); !problems.empty()) {
		std::string msg = "gapcc: fractional assignment violates its invariants:";
		for (const auto& p : problems)
			msg += "\n  " + p;
		throw InvalidInput(msg);
	}
	const std::size_t J = inst.num_clients, I = inst.num_helpers;

	// Slot layout: helper i owns slots [first_slot[i], first_slot[i+1]).
	std::vector<std::size_t> first_slot(I + 1, 0);
	std::vector<std::vector<ClientId>> support(I);
	for (HelperId i = 0; i < I; ++i) {
		double total = 0.0;
		for (ClientId j = 0; j < J; ++j)
			if (fa.at(i, j) > kSupport && inst.capacity[i] > 0 && inst.has_edge(j, i) && inst.work(j, i) <= fa.target) {
				support[i].push_back(j);
				total += fa.at(i, j);
			}
		std::size_t slots = 0;
		if (!support[i].empty()) {
			slots = static_cast<std::size_t>(std::ceil(total - kCheck));
			slots = std::clamp<std::size_t>(slots, 1, static_cast<std::size_t>(inst.capacity[i]));
		}
		first_slot[i + 1] = first_slot[i] + slots;
	}

	SlotMatcher matcher(J, first_slot[I]);
	for (HelperId i = 0; i < I; ++i) {
		auto& order = support[i];
		std::stable_sort(order.begin(), order.end(),
		                 [&](ClientId a, ClientId b) { return inst.work(a, i) > inst.work(b, i); });
		std::size_t slot = first_slot[i];
		const std::size_t last = first_slot[i + 1] - 1;
		double room = 1.0;
		for (ClientId j : order) {
			double rest = fa.at(i, j);
			while (rest > kSupport) {
				matcher.link(j, slot);
				if (slot == last)
					break;
				const double take = std::min(rest, room);
				rest -= take;
				room -= take;
				if (room <= kSupport) {
					++slot;
					room = 1.0;
				}
			}
		}
	}
	if (!matcher.match_all())
		throw std::logic_error("gapcc: no client-perfect matching in the slot graph");

	Assignment a;
	a.helper_of.assign(J, I);
	const auto& owners = matcher.owners();
	for (HelperId i = 0; i < I; ++i)
		for (std::size_t s = first_slot[i]; s < first_slot[i + 1]; ++s)
			if (owners[s] != SlotMatcher::kNone)
				a.helper_of[owners[s]] = i;
	return a;
}

std::optional<Result> assign(const Instance& inst) {
	inst.require_valid();
	Time hi = 0;
	for (ClientId j = 0; j < inst.num_clients; ++j) {
		Time best = 0;
		for (HelperId i = 0; i < inst.num_helpers; ++i)
			if (inst.has_edge(j, i))
				best = std::max(best, inst.work(j, i));
		hi += best;
	}
	auto at_hi = lp_feasible(inst, hi);
	if (!at_hi)
		return std::nullopt;

	Time lo = 0;
	FractionalAssignment best = std::move(*at_hi);
	while (lo < hi) {
		const Time mid = lo + (hi - lo) / 2;
		if (auto fa = lp_feasible(inst, mid)) {
			hi = mid;
			best = std::move(*fa);
		} else {
			lo = mid + 1;
		}
	}
	return Result{round_assignment(best, inst), hi};
}

}  // namespace slsched::gapcc
