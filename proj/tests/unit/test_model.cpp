#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "slsched/instance_io.hpp"
#include "slsched/model.hpp"

using namespace slsched;

TEST_CASE("validate_assignment on the capacity (1,2) instance") {
	const Instance inst = fixtures::memory(1, 2);
	CHECK(validate_assignment(inst, {{0, 1}}).ok());

	const Verdict v = validate_assignment(inst, {{1, 1}});
	REQUIRE(v.violations.size() == 1);
	CHECK(v.violations[0].kind == ViolationKind::CapacityExceeded);
	CHECK(v.violations[0].message == "helper 2 load 3 > 2");
}

TEST_CASE("validate_assignment zero demand and zero capacity") {
	Instance inst = Instance::blank(1, 1);
	inst.demand = {0};
	inst.capacity = {0};
	CHECK(validate_assignment(inst, {{0}}).ok());
}

TEST_CASE("validate_assignment lists every failure") {
	Instance inst = fixtures::memory(1, 1);
	inst.set_edge(0, 1, false);
	const Verdict v = validate_assignment(inst, {{1, 1}});
	CHECK(v.has(ViolationKind::MissingEdge));
	CHECK(v.has(ViolationKind::CapacityExceeded));
	CHECK(validate_assignment(inst, {{0}}).has(ViolationKind::BadIndex));
	CHECK(validate_assignment(inst, {{0, 5}}).has(ViolationKind::BadIndex));
}

TEST_CASE("validate_schedule on the forced chain") {
	const Instance inst = fixtures::chain();
	const Assignment a{{0}};

	const Schedule good = fixtures::one_client_schedule(1, 4);
	CHECK(validate_schedule(inst, a, good).ok());
	CHECK(good.completion[0] == 6);
	CHECK(compute_makespan(inst, a, good) == 6);
	CHECK(compute_makespan(inst, good) == 6);

	Schedule early = fixtures::one_client_schedule(0, 4);
	early.intervals[0].end = 2;
	const Verdict v1 = validate_schedule(inst, a, early);
	CHECK(v1.has(ViolationKind::ReleaseViolated));
	CHECK(v1.summary().find("T2 of client 1 starts at 0 before release 1") != std::string::npos);

	const Schedule rushed = fixtures::one_client_schedule(1, 3);
	const Verdict v2 = validate_schedule(inst, a, rushed);
	CHECK(v2.has(ViolationKind::DelayViolated));
	CHECK(v2.summary().find("T4 of client 1 starts at 3 before T2-end + delay = 4") != std::string::npos);
	CHECK_THROWS_AS(compute_makespan(inst, a, rushed), InvalidInput);
}

TEST_CASE("compute_makespan takes the longest chain") {
	Instance inst = Instance::blank(2, 2);
	inst.capacity = {1, 1};
	inst.release = {1, 2};
	inst.t3_delay = {1, 2};
	inst.t5_time = {1, 2};
	inst.set_t2(0, 0, 2);
	inst.set_t4(0, 0, 1);
	inst.set_t2(1, 1, 2);
	inst.set_t4(1, 1, 1);
	Schedule s;
	s.intervals = {{0, 0, TaskKind::T2, 1, 3}, {0, 0, TaskKind::T4, 4, 5}, {1, 1, TaskKind::T2, 2, 4},
	               {1, 1, TaskKind::T4, 6, 7}};
	s.completion = {6, 9};
	s.makespan = 9;
	CHECK(compute_makespan(inst, {{0, 1}}, s) == 9);
}

TEST_CASE("compute_makespan of an empty client set is 0") {
	const Instance inst = Instance::blank(0, 1);
	const Schedule s;
	CHECK(compute_makespan(inst, Assignment{}, s) == 0);
}

TEST_CASE("validate_schedule catches structural problems") {
	const Instance inst = fixtures::straggler(0, 0);
	const Assignment a{{0, 0}};
	Schedule s;
	s.intervals = {{0, 0, TaskKind::T2, 0, 1}, {0, 1, TaskKind::T2, 0, 1}, {0, 0, TaskKind::T4, 1, 3}};
	s.completion = {3, 0};
	s.makespan = 4;
	const Verdict v = validate_schedule(inst, a, s);
	CHECK(v.has(ViolationKind::Overlap));
	CHECK(v.has(ViolationKind::MissingTask));
	CHECK(v.has(ViolationKind::DurationMismatch));
	CHECK(v.has(ViolationKind::MakespanMismatch));

	Schedule neg;
	neg.intervals = {{0, 0, TaskKind::T2, -1, 0}, {0, 0, TaskKind::T4, 0, 1}, {0, 1, TaskKind::T2, 1, 0}};
	neg.completion = {1, 0};
	neg.makespan = 1;
	const Verdict v2 = validate_schedule(inst, a, neg);
	CHECK(v2.has(ViolationKind::NegativeStart));
	CHECK(v2.has(ViolationKind::MalformedInterval));

	Schedule other = neg;
	other.intervals = {{0, 0, TaskKind::T2, 0, 1}, {0, 0, TaskKind::T4, 1, 2}, {0, 1, TaskKind::T2, 2, 3},
	                   {0, 1, TaskKind::T4, 3, 4}};
	other.completion = {2, 3};
	other.makespan = 4;
	CHECK(validate_schedule(inst, a, other).has(ViolationKind::CompletionMismatch));
}

TEST_CASE("validate_schedule flags a task on the wrong helper") {
	Instance inst = Instance::blank(1, 2);
	inst.set_t2(0, 0, 1);
	inst.set_t4(0, 0, 1);
	Schedule s;
	s.intervals = {{1, 0, TaskKind::T2, 0, 1}, {1, 0, TaskKind::T4, 1, 2}};
	s.completion = {2};
	s.makespan = 2;
	CHECK(validate_schedule(inst, {{0}}, s).has(ViolationKind::WrongHelper));
}

TEST_CASE("validate_schedule accepts split (preemptive) tasks") {
	Instance inst = Instance::blank(2, 1);
	inst.capacity = {2};
	inst.set_t2(0, 0, 4);
	inst.set_t4(0, 0, 1);
	inst.set_t2(1, 0, 1);
	inst.set_t4(1, 0, 1);
	inst.release = {0, 1};
	Schedule s;
	s.intervals = {{0, 0, TaskKind::T2, 0, 1}, {0, 1, TaskKind::T2, 1, 2}, {0, 0, TaskKind::T2, 2, 5},
	               {0, 1, TaskKind::T4, 5, 6}, {0, 0, TaskKind::T4, 6, 7}};
	s.completion = {7, 6};
	s.makespan = 7;
	CHECK(validate_schedule(inst, {{0, 0}}, s).ok());

	Schedule bad = s;
	bad.intervals[2] = {0, 0, TaskKind::T2, 2, 4};
	CHECK(validate_schedule(inst, {{0, 0}}, bad).has(ViolationKind::DurationMismatch));
}

TEST_CASE("chain lower bound holds for valid schedules") {
	const Instance inst = fixtures::chain();
	for (Time t2 = 1; t2 < 4; ++t2)
		for (Time t4 = t2 + 3; t4 < 8; ++t4) {
			const Schedule s = fixtures::one_client_schedule(t2, t4);
			REQUIRE(validate_schedule(inst, {{0}}, s).ok());
			CHECK(s.makespan >= inst.chain(0, 0));
		}
}

TEST_CASE("Instance::problems reports bad instances") {
	Instance inst = Instance::blank(2, 2);
	CHECK(inst.problems().empty());
	inst.set_edge(1, 0, false);
	inst.set_edge(1, 1, false);
	inst.release[0] = -1;
	const auto p = inst.problems();
	CHECK(p.size() == 2);
	CHECK_THROWS_AS(inst.require_valid(), InvalidInput);
	CHECK(Instance::blank(1, 0).problems().size() >= 1);
}

TEST_CASE("instance file round-trip") {
	Instance inst = fixtures::memory(3, 4);
	inst.set_edge(0, 1, false);
	// Non-edge entries are written as null and read back as 0.
	inst.set_t2(0, 1, 0);
	inst.set_t4(0, 1, 0);
	const InstanceMeta meta{"rt", 2, 99};
	const InstanceFile back = parse_instance(format_instance(inst, meta));
	CHECK(back.instance == inst);
	CHECK(back.meta == meta);

	const Instance full = fixtures::chain();
	const std::string text = format_instance(full);
	CHECK(text.find("\"complete\"") != std::string::npos);
	CHECK(parse_instance(text).instance == full);
}

TEST_CASE("instance parse errors name the field") {
	const std::string base = R"({"clients": 1, "helpers": 2, "edges": [[1, 1]], "capacity": [1, 1],
	  "demand": [1], "release": [0], "t3_delay": [0], "t5_time": [0],
	  "t2_time": [[1, null]], "t4_time": [[1, null]]})";
	CHECK_NOTHROW(parse_instance(base));

	std::string neg = base;
	neg.replace(neg.find("\"t2_time\": [[1"), 14, "\"t2_time\": [[-1");
	try {
		parse_instance(neg);
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(e.where() == "t2_time[1][1]");
		CHECK(std::string(e.what()).find("negative") != std::string::npos);
	}

	std::string missing = base;
	missing.replace(missing.find("\"t4_time\": [[1"), 14, "\"t4_time\": [[null");
	try {
		parse_instance(missing);
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(std::string(e.what()).find("missing duration for edge (1,1)") != std::string::npos);
	}

	try {
		parse_instance("{\n  \"clients\": 1,\n  oops\n}");
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(e.where().rfind("line 3", 0) == 0);
	}

	std::string no_edge = base;
	no_edge.replace(no_edge.find("[[1, 1]]"), 8, "[]");
	CHECK_THROWS_AS(parse_instance(no_edge), ParseError);
	CHECK_THROWS_AS(parse_instance(R"({"clients": 1})"), ParseError);
}

TEST_CASE("schedule file round-trip") {
	const Schedule s = fixtures::one_client_schedule(1, 4);
	const Assignment a{{0}};
	const ScheduleFile f = parse_schedule(format_schedule(a, s, "equid"));
	CHECK(f.assignment == a);
	CHECK(f.schedule == s);
	CHECK(f.method == "equid");
}

TEST_CASE("shipped fixtures load") {
	CHECK(fixtures::load("chain.json") == fixtures::chain());
	CHECK(fixtures::load("straggler.json") == fixtures::straggler(5, 0));
	CHECK(fixtures::load("straggler_late.json") == fixtures::straggler(0, 5));
	const Instance m = fixtures::load("memory_1_2.json");
	CHECK(m.capacity == std::vector<Time>{1, 2});
	CHECK(m.demand == std::vector<Time>{1, 2});
	const Instance trap = fixtures::load("bg_trap.json");
	CHECK(trap.capacity == std::vector<Time>{2, 1});
}
