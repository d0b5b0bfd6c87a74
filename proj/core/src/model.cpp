#include "slsched/model.hpp"

#include <algorithm>
#include <sstream>

namespace slsched {

namespace {

std::string pair_str(ClientId j, HelperId i) {
	std::ostringstream os;
	os << "(" << j + 1 << "," << i + 1 << ")";
	return os.str();
}

}  // namespace

Instance Instance::blank(std::size_t clients, std::size_t helpers) {
	Instance inst;
	inst.num_clients = clients;
	inst.num_helpers = helpers;
	inst.edge.assign(clients * helpers, 1);
	inst.capacity.assign(helpers, 1);
	inst.demand.assign(clients, 1);
	inst.release.assign(clients, 0);
	inst.t2_time.assign(clients * helpers, 0);
	inst.t3_delay.assign(clients, 0);
	inst.t4_time.assign(clients * helpers, 0);
	inst.t5_time.assign(clients, 0);
	return inst;
}

bool Instance::unit_demand() const {
	return std::all_of(demand.begin(), demand.end(), [](Time d) { return d == 1; });
}

std::vector<std::string> Instance::problems() const {
	std::vector<std::string> out;
	const std::size_t J = num_clients;
	const std::size_t I = num_helpers;
	if (I == 0)
		out.emplace_back("helpers must be positive");

	auto check_len = [&](const char* name, std::size_t got, std::size_t want) {
		if (got != want) {
			std::ostringstream os;
			os << name << ": expected " << want << " entries, got " << got;
			out.push_back(os.str());
			return false;
		}
		return true;
	};
	bool shapes = true;
	shapes &= check_len("edges", edge.size(), J * I);
	shapes &= check_len("capacity", capacity.size(), I);
	shapes &= check_len("demand", demand.size(), J);
	shapes &= check_len("release", release.size(), J);
	shapes &= check_len("t2_time", t2_time.size(), J * I);
	shapes &= check_len("t3_delay", t3_delay.size(), J);
	shapes &= check_len("t4_time", t4_time.size(), J * I);
	shapes &= check_len("t5_time", t5_time.size(), J);
	if (!shapes)
		return out;

	auto check_vec = [&](const char* name, const std::vector<Time>& v) {
		for (std::size_t k = 0; k < v.size(); ++k)
			if (v[k] < 0) {
				std::ostringstream os;
				os << name << "[" << k + 1 << "] is negative (" << v[k] << ")";
				out.push_back(os.str());
			}
	};
	check_vec("capacity", capacity);
	check_vec("demand", demand);
	check_vec("release", release);
	check_vec("t3_delay", t3_delay);
	check_vec("t5_time", t5_time);

	for (ClientId j = 0; j < J; ++j) {
		bool any = false;
		for (HelperId i = 0; i < I; ++i) {
			if (!has_edge(j, i))
				continue;
			any = true;
			if (t2(j, i) < 0)
				out.push_back("t2_time" + pair_str(j, i) + " is negative");
			if (t4(j, i) < 0)
				out.push_back("t4_time" + pair_str(j, i) + " is negative");
		}
		if (!any)
			out.push_back("client " + std::to_string(j + 1) + " has no incident edge");
	}
	return out;
}

void Instance::require_valid() const {
	auto p = problems();
	if (p.empty())
		return;
	std::string msg = "invalid instance:";
	for (const auto& s : p)
		msg += "\n  " + s;
	throw InvalidInput(msg);
}

std::vector<std::vector<ClientId>> Assignment::clients_by_helper(std::size_t num_helpers) const {
	std::vector<std::vector<ClientId>> z(num_helpers);
	for (ClientId j = 0; j < helper_of.size(); ++j)
		if (helper_of[j] < num_helpers)
			z[helper_of[j]].push_back(j);
	return z;
}

std::vector<Time> memory_loads(const Instance& inst, const Assignment& a) {
	std::vector<Time> load(inst.num_helpers, 0);
	for (ClientId j = 0; j < a.helper_of.size(); ++j)
		load.at(a.helper_of[j]) += inst.demand[j];
	return load;
}

std::vector<Time> work_loads(const Instance& inst, const Assignment& a) {
	std::vector<Time> load(inst.num_helpers, 0);
	for (ClientId j = 0; j < a.helper_of.size(); ++j)
		load.at(a.helper_of[j]) += inst.work(j, a.helper_of[j]);
	return load;
}

Time max_work_load(const Instance& inst, const Assignment& a) {
	auto load = work_loads(inst, a);
	return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

const char* to_string(TaskKind kind) {
	return kind == TaskKind::T2 ? "T2" : "T4";
}

const char* to_string(ViolationKind kind) {
	switch (kind) {
	case ViolationKind::BadIndex: return "bad-index";
	case ViolationKind::MissingEdge: return "missing-edge";
	case ViolationKind::CapacityExceeded: return "capacity-exceeded";
	case ViolationKind::WrongHelper: return "wrong-helper";
	case ViolationKind::MissingTask: return "missing-task";
	case ViolationKind::DurationMismatch: return "duration-mismatch";
	case ViolationKind::NegativeStart: return "negative-start";
	case ViolationKind::MalformedInterval: return "malformed-interval";
	case ViolationKind::ReleaseViolated: return "release-violated";
	case ViolationKind::DelayViolated: return "delay-violated";
	case ViolationKind::Overlap: return "overlap";
	case ViolationKind::CompletionMismatch: return "completion-mismatch";
	case ViolationKind::MakespanMismatch: return "makespan-mismatch";
	}
	return "unknown";
}

bool Verdict::has(ViolationKind kind) const {
	return std::any_of(violations.begin(), violations.end(),
	                   [kind](const Violation& v) { return v.kind == kind; });
}

std::string Verdict::summary() const {
	if (ok())
		return "ok";
	std::string s;
	for (const auto& v : violations) {
		if (!s.empty())
			s += "\n";
		s += std::string(to_string(v.kind)) + ": " + v.message;
	}
	return s;
}

Verdict validate_assignment(const Instance& inst, const Assignment& a) {
	Verdict verdict;
	auto add = [&](ViolationKind k, std::string msg) { verdict.violations.push_back({k, std::move(msg)}); };

	if (a.helper_of.size() != inst.num_clients) {
		add(ViolationKind::BadIndex, "assignment covers " + std::to_string(a.helper_of.size()) +
		                                 " clients, instance has " + std::to_string(inst.num_clients));
		return verdict;
	}
	std::vector<Time> load(inst.num_helpers, 0);
	for (ClientId j = 0; j < inst.num_clients; ++j) {
		HelperId i = a.helper_of[j];
		if (i >= inst.num_helpers) {
			add(ViolationKind::BadIndex,
			    "client " + std::to_string(j + 1) + " mapped to unknown helper " + std::to_string(i + 1));
			continue;
		}
		if (!inst.has_edge(j, i))
			add(ViolationKind::MissingEdge, "edge " + pair_str(j, i) + " not in graph");
		load[i] += inst.demand[j];
	}
	for (HelperId i = 0; i < inst.num_helpers; ++i)
		if (load[i] > inst.capacity[i]) {
			std::ostringstream os;
			os << "helper " << i + 1 << " load " << load[i] << " > " << inst.capacity[i];
			add(ViolationKind::CapacityExceeded, os.str());
		}
	return verdict;
}

Assignment assignment_from_schedule(const Instance& inst, const Schedule& s) {
	Assignment a;
	a.helper_of.assign(inst.num_clients, inst.num_helpers);
	for (const auto& iv : s.intervals)
		if (iv.client < inst.num_clients && a.helper_of[iv.client] == inst.num_helpers)
			a.helper_of[iv.client] = iv.helper;
	return a;
}

std::vector<Time> recompute_completion(const Instance& inst, const Schedule& s) {
	std::vector<Time> t4_end(inst.num_clients, -1);
	for (const auto& iv : s.intervals)
		if (iv.kind == TaskKind::T4 && iv.client < inst.num_clients)
			t4_end[iv.client] = std::max(t4_end[iv.client], iv.end);
	std::vector<Time> c(inst.num_clients, -1);
	for (ClientId j = 0; j < inst.num_clients; ++j)
		if (t4_end[j] >= 0)
			c[j] = t4_end[j] + inst.t5_time[j];
	return c;
}

Verdict validate_schedule(const Instance& inst, const Assignment& a, const Schedule& s) {
	Verdict verdict = validate_assignment(inst, a);
	if (verdict.has(ViolationKind::BadIndex))
		return verdict;
	auto add = [&](ViolationKind k, std::string msg) { verdict.violations.push_back({k, std::move(msg)}); };

	const std::size_t J = inst.num_clients;
	struct Pieces {
		Time total = 0;
		Time first_start = 0;
		Time last_end = 0;
		int count = 0;
	};
	std::vector<Pieces> t2(J), t4(J);
	std::vector<std::vector<const Interval*>> by_helper(inst.num_helpers);

	for (const auto& iv : s.intervals) {
		const std::string who = std::string(to_string(iv.kind)) + " of client " + std::to_string(iv.client + 1);
		if (iv.client >= J || iv.helper >= inst.num_helpers) {
			add(ViolationKind::BadIndex, "interval references client " + std::to_string(iv.client + 1) +
			                                 " / helper " + std::to_string(iv.helper + 1));
			continue;
		}
		if (iv.end < iv.start) {
			add(ViolationKind::MalformedInterval,
			    who + " ends at " + std::to_string(iv.end) + " before its start " + std::to_string(iv.start));
			continue;
		}
		if (iv.start < 0)
			add(ViolationKind::NegativeStart, who + " starts at " + std::to_string(iv.start));
		if (iv.helper != a.helper_of[iv.client])
			add(ViolationKind::WrongHelper, who + " runs on helper " + std::to_string(iv.helper + 1) +
			                                    ", assigned helper is " + std::to_string(a.helper_of[iv.client] + 1));
		Pieces& p = iv.kind == TaskKind::T2 ? t2[iv.client] : t4[iv.client];
		if (p.count == 0) {
			p.first_start = iv.start;
			p.last_end = iv.end;
		} else {
			p.first_start = std::min(p.first_start, iv.start);
			p.last_end = std::max(p.last_end, iv.end);
		}
		p.total += iv.length();
		++p.count;
		by_helper[iv.helper].push_back(&iv);
	}

	for (ClientId j = 0; j < J; ++j) {
		const HelperId i = a.helper_of[j];
		const std::string cj = "client " + std::to_string(j + 1);
		if (t2[j].count == 0)
			add(ViolationKind::MissingTask, "T2 of " + cj + " not scheduled");
		if (t4[j].count == 0)
			add(ViolationKind::MissingTask, "T4 of " + cj + " not scheduled");
		if (t2[j].count > 0 && t2[j].total != inst.t2(j, i)) {
			std::ostringstream os;
			os << "T2 of " << cj << " runs " << t2[j].total << " slots, needs " << inst.t2(j, i);
			add(ViolationKind::DurationMismatch, os.str());
		}
		if (t4[j].count > 0 && t4[j].total != inst.t4(j, i)) {
			std::ostringstream os;
			os << "T4 of " << cj << " runs " << t4[j].total << " slots, needs " << inst.t4(j, i);
			add(ViolationKind::DurationMismatch, os.str());
		}
		if (t2[j].count > 0 && t2[j].first_start < inst.release[j]) {
			std::ostringstream os;
			os << "T2 of " << cj << " starts at " << t2[j].first_start << " before release " << inst.release[j];
			add(ViolationKind::ReleaseViolated, os.str());
		}
		if (t2[j].count > 0 && t4[j].count > 0) {
			const Time ready = t2[j].last_end + inst.t3_delay[j];
			if (t4[j].first_start < ready) {
				std::ostringstream os;
				os << "T4 of " << cj << " starts at " << t4[j].first_start << " before T2-end + delay = " << ready;
				add(ViolationKind::DelayViolated, os.str());
			}
		}
	}

	for (HelperId i = 0; i < inst.num_helpers; ++i) {
		auto& ivs = by_helper[i];
		std::erase_if(ivs, [](const Interval* iv) { return iv->length() <= 0; });
		std::sort(ivs.begin(), ivs.end(), [](const Interval* x, const Interval* y) {
			return x->start != y->start ? x->start < y->start : x->end < y->end;
		});
		const Interval* reach = nullptr;
		for (const Interval* iv : ivs) {
			if (reach && iv->start < reach->end) {
				std::ostringstream os;
				os << "helper " << i + 1 << ": " << to_string(iv->kind) << " of client " << iv->client + 1 << " ["
				   << iv->start << "," << iv->end << ") overlaps " << to_string(reach->kind) << " of client "
				   << reach->client + 1 << " [" << reach->start << "," << reach->end << ")";
				add(ViolationKind::Overlap, os.str());
			}
			if (!reach || iv->end > reach->end)
				reach = iv;
		}
	}

	const auto c = recompute_completion(inst, s);
	if (s.completion.size() != J) {
		add(ViolationKind::CompletionMismatch, "completion list has " + std::to_string(s.completion.size()) +
		                                           " entries, expected " + std::to_string(J));
	} else {
		for (ClientId j = 0; j < J; ++j)
			if (c[j] >= 0 && s.completion[j] != c[j]) {
				std::ostringstream os;
				os << "client " << j + 1 << " reports completion " << s.completion[j] << ", intervals give " << c[j];
				add(ViolationKind::CompletionMismatch, os.str());
			}
	}
	Time ms = 0;
	for (Time v : c)
		ms = std::max(ms, v);
	if (s.makespan != ms) {
		std::ostringstream os;
		os << "reported makespan " << s.makespan << ", intervals give " << ms;
		add(ViolationKind::MakespanMismatch, os.str());
	}
	return verdict;
}

Time compute_makespan(const Instance& inst, const Assignment& a, const Schedule& s) {
	auto verdict = validate_schedule(inst, a, s);
	if (!verdict.ok())
		throw InvalidInput("invalid schedule:\n" + verdict.summary());
	Time ms = 0;
	for (Time v : recompute_completion(inst, s))
		ms = std::max(ms, v);
	return ms;
}

Time compute_makespan(const Instance& inst, const Schedule& s) {
	return compute_makespan(inst, assignment_from_schedule(inst, s), s);
}

}  // namespace slsched
