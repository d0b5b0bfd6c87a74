#pragma once

#include <filesystem>

#include "slsched/instance_io.hpp"
#include "slsched/model.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() {
	return SLSCHED_DATA_DIR;
}

inline slsched::Instance load(const char* name) {
	return slsched::load_instance(data_dir() / "fixtures" / name).instance;
}

/// r=1, p=2, l=1, p'=1, r'=1 on one helper.
inline slsched::Instance chain() {
	auto inst = slsched::Instance::blank(1, 1);
	inst.release = {1};
	inst.set_t2(0, 0, 2);
	inst.t3_delay = {1};
	inst.set_t4(0, 0, 1);
	inst.t5_time = {1};
	return inst;
}

/// Two unit clients on one helper; p = p' = 1, r = r' = 0, delays as given.
inline slsched::Instance straggler(slsched::Time la, slsched::Time lb) {
	auto inst = slsched::Instance::blank(2, 1);
	inst.capacity = {2};
	for (std::size_t j = 0; j < 2; ++j) {
		inst.set_t2(j, 0, 1);
		inst.set_t4(j, 0, 1);
	}
	inst.t3_delay = {la, lb};
	return inst;
}

/// Capacities (c1, c2), demands (1, 2), complete graph, small positive times.
inline slsched::Instance memory(slsched::Time c1, slsched::Time c2) {
	auto inst = slsched::Instance::blank(2, 2);
	inst.capacity = {c1, c2};
	inst.demand = {1, 2};
	inst.release = {2, 3};
	inst.t3_delay = {4, 2};
	inst.t5_time = {2, 3};
	for (std::size_t j = 0; j < 2; ++j)
		for (std::size_t i = 0; i < 2; ++i) {
			inst.set_t2(j, i, 2 + static_cast<slsched::Time>(j + i));
			inst.set_t4(j, i, 4 + static_cast<slsched::Time>(j + i));
		}
	return inst;
}

inline slsched::Schedule one_client_schedule(slsched::Time t2_start, slsched::Time t4_start) {
	slsched::Schedule s;
	s.intervals = {{0, 0, slsched::TaskKind::T2, t2_start, t2_start + 2},
	               {0, 0, slsched::TaskKind::T4, t4_start, t4_start + 1}};
	s.completion = {t4_start + 1 + 1};
	s.makespan = s.completion[0];
	return s;
}

}  // namespace fixtures
