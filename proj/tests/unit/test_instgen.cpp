#include <cmath>
#include <fstream>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "slsched/instgen.hpp"

using namespace slsched;

namespace {

GeneratorConfig config(int level, std::size_t J, std::size_t I, std::uint64_t seed) {
	GeneratorConfig c = GeneratorConfig::defaults();
	c.level = level;
	c.num_clients = J;
	c.num_helpers = I;
	c.seed = seed;
	return c;
}

double cv(const std::vector<Time>& v) {
	double mean = 0.0, sq = 0.0;
	for (Time x : v)
		mean += static_cast<double>(x);
	mean /= static_cast<double>(v.size());
	for (Time x : v)
		sq += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
	return std::sqrt(sq / static_cast<double>(v.size())) / mean;
}

// Spread of every p_ij in one instance, averaged over seeds.
double mean_t2_cv(int level) {
	double total = 0.0;
	const int seeds = 100;
	for (int s = 0; s < seeds; ++s) {
		const Instance inst = generate(config(level, 20, 2, 1000 + s));
		total += cv(inst.t2_time);
	}
	return total / seeds;
}

bool within(Time v, const Range& r) {
	return v >= r.lo && v <= r.hi;
}

}  // namespace

TEST_CASE("raw draws follow the engine output") {
	std::mt19937_64 rng;
	rng.discard(9999);
	std::mt19937_64 copy = rng;
	// The 10000th output of a default-seeded mt19937_64 is fixed by the standard.
	const std::uint64_t tenth_thousand = 9981545732273789042ULL;
	CHECK(draw_unit(rng) == static_cast<double>(tenth_thousand >> 11) / 9007199254740992.0);
	CHECK(draw_int(copy, 3, 10) == 3 + static_cast<Time>(tenth_thousand % 8));
	CHECK(draw_int(copy, 5, 5) == 5);
	std::mt19937_64 a(42), b(42);
	for (int k = 0; k < 1000; ++k) {
		const Time x = draw_int(a, -3, 17);
		CHECK(x >= -3);
		CHECK(x <= 17);
		CHECK(x == draw_int(b, -3, 17));
	}
}

TEST_CASE("generation is deterministic in the config") {
	for (int level = 1; level <= 4; ++level) {
		const GeneratorConfig c = config(level, 12, 3, 5);
		CHECK(generate(c) == generate(c));
		GeneratorConfig other = c;
		other.seed = 6;
		if (level > 1)
			CHECK_FALSE(generate(c) == generate(other));
		CHECK(generate(c).problems().empty());
	}
}

TEST_CASE("level 1 alternates two nominal client types") {
	const Instance inst = generate(config(1, 10, 4, 3));
	for (ClientId j = 2; j < inst.num_clients; ++j) {
		CHECK(inst.release[j] == inst.release[j - 2]);
		CHECK(inst.t3_delay[j] == inst.t3_delay[j - 2]);
		CHECK(inst.demand[j] == inst.demand[j - 2]);
		for (HelperId i = 0; i < inst.num_helpers; ++i)
			CHECK(inst.work(j, i) == inst.work(j - 2, i));
	}
	CHECK(inst.release[0] != inst.release[1]);
	const auto prof = default_client_profiles();
	CHECK(inst.release[0] == (prof[0].release.lo + prof[0].release.hi) / 2);
	for (HelperId i = 2; i < inst.num_helpers; ++i)
		CHECK(inst.t2(0, i) == inst.t2(0, i - 2));
}

TEST_CASE("level 4 values stay inside the profile ranges") {
	const auto clients = default_client_profiles();
	const auto helpers = default_helper_profiles();
	for (std::uint64_t seed = 0; seed < 30; ++seed) {
		GeneratorConfig c = config(4, 25, 3, seed);
		c.capacity_slack = 2.0;
		const Instance inst = generate(c);
		for (ClientId j = 0; j < inst.num_clients; ++j) {
			bool fits_some = false;
			for (const auto& p : clients) {
				bool ok = within(inst.release[j], p.release) && within(inst.t3_delay[j], p.t3_delay) &&
				          within(inst.t5_time[j], p.t5_time) && within(inst.demand[j], p.demand);
				for (HelperId i = 0; i < inst.num_helpers && ok; ++i) {
					const auto& h = helpers[i % helpers.size()];
					ok = within(inst.t2(j, i), helper_range(p.t2_work, h)) &&
					     within(inst.t4(j, i), helper_range(p.t4_work, h));
				}
				fits_some = fits_some || ok;
			}
			CHECK(fits_some);
		}
		Time demand = 0, cap = 0;
		for (Time d : inst.demand)
			demand += d;
		for (Time m : inst.capacity)
			cap += m;
		CHECK(cap >= 2 * demand);
		CHECK(cap <= 2 * demand + static_cast<Time>(inst.num_helpers));
	}
}

TEST_CASE("heterogeneity grows with the level") {
	const double l1 = mean_t2_cv(1), l2 = mean_t2_cv(2), l3 = mean_t2_cv(3), l4 = mean_t2_cv(4);
	CHECK(l1 <= l2);
	CHECK(l2 <= l3);
	CHECK(l3 <= l4);
}

TEST_CASE("unit demands, sparse graphs and absolute capacities") {
	GeneratorConfig c = config(3, 30, 4, 9);
	c.unit_demand = true;
	c.edge_density = 0.3;
	const Instance inst = generate(c);
	CHECK(inst.unit_demand());
	for (ClientId j = 0; j < inst.num_clients; ++j) {
		int deg = 0;
		for (HelperId i = 0; i < inst.num_helpers; ++i)
			deg += inst.has_edge(j, i) ? 1 : 0;
		CHECK(deg >= 1);
	}
	c.capacity_slack = 0.0;
	c.num_clients = 5;
	const Instance abs = generate(c);
	CHECK(abs.capacity == std::vector<Time>{10, 16, 10, 16});
}

TEST_CASE("infeasible or malformed configs are rejected") {
	GeneratorConfig c = config(2, 100, 1, 1);
	c.capacity_slack = 0.0;
	CHECK_THROWS_AS(generate(c), InvalidInput);
	c = config(5, 3, 1, 1);
	CHECK_THROWS_AS(generate(c), InvalidInput);
	c = config(2, 3, 1, 1);
	c.connectivity.clear();
	CHECK_THROWS_AS(generate(c), InvalidInput);
	c = config(2, 0, 1, 1);
	CHECK_THROWS_AS(generate(c), InvalidInput);
	c = config(2, 3, 1, 1);
	c.edge_density = 0.0;
	CHECK_THROWS_AS(generate(c), InvalidInput);
}

TEST_CASE("shipped profile files equal the built-ins") {
	GeneratorConfig c;
	load_profiles(fixtures::data_dir() / "profiles", c);
	CHECK(c.client_profiles == default_client_profiles());
	CHECK(c.helper_profiles == default_helper_profiles());
	CHECK(c.connectivity == default_connectivity());
}

TEST_CASE("generator configs parse") {
	const GeneratorConfig c = parse_generator_config(
	    R"({"level": 3, "clients": 7, "helpers": 2, "seed": 11, "unit_demand": true, "cut_spread": 0.25})");
	CHECK(c.level == 3);
	CHECK(c.num_clients == 7);
	CHECK(c.num_helpers == 2);
	CHECK(c.seed == 11);
	CHECK(c.unit_demand);
	CHECK(c.cut_spread == 0.25);
	CHECK(c.client_profiles == default_client_profiles());

	const GeneratorConfig d = parse_generator_config(R"({"profiles": "profiles"})", fixtures::data_dir());
	CHECK(d.helper_profiles == default_helper_profiles());

	CHECK_THROWS_AS(parse_generator_config("{"), ParseError);
	CHECK_THROWS_AS(parse_generator_config("[]"), ParseError);
	CHECK_THROWS_AS(parse_generator_config(R"({"level": "three"})"), ParseError);
	CHECK_THROWS_AS(parse_generator_config(R"({"profiles": "no/such/dir"})"), ParseError);
}

TEST_CASE("generated instances round-trip through the file format") {
	const Instance inst = generate(config(4, 9, 3, 2));
	const auto path = std::filesystem::temp_directory_path() / "slsched_instgen_roundtrip.json";
	save_instance(path, inst);
	CHECK(load_instance(path).instance == inst);
	std::filesystem::remove(path);
}
