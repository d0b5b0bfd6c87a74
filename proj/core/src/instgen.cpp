#include "slsched/instgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "slsched/instance_io.hpp"

namespace slsched {

using nlohmann::json;

namespace {

Range range(Time lo, Time hi) {
	return Range{lo, hi};
}

Time at_position(const Range& r, double q) {
	q = std::clamp(q, 0.0, 1.0);
	return r.lo + static_cast<Time>(std::llround(q * static_cast<double>(r.hi - r.lo)));
}

Time on_helper(Time base, double speed) {
	return std::max<Time>(1, static_cast<Time>(std::llround(static_cast<double>(base) / speed)));
}

std::size_t pick_weighted(std::mt19937_64& rng, const std::vector<ConnectivityClass>& classes) {
	double total = 0.0;
	for (const auto& c : classes)
		total += c.probability;
	double u = draw_unit(rng) * total;
	for (std::size_t k = 0; k < classes.size(); ++k) {
		if (u < classes[k].probability)
			return k;
		u -= classes[k].probability;
	}
	return classes.size() - 1;
}

// Positions of one client's quantities inside their ranges.
struct Positions {
	double release = 0.5, t3 = 0.5, t5 = 0.5;
	double t2 = 0.5, t4 = 0.5;
	double demand = 0.5;
};

Positions draw_positions(const GeneratorConfig& cfg, std::mt19937_64& rng) {
	Positions p;
	if (cfg.level == 4) {
		p.release = draw_unit(rng);
		p.t3 = draw_unit(rng);
		p.t5 = draw_unit(rng);
		p.t2 = draw_unit(rng);
		p.t4 = draw_unit(rng);
		p.demand = draw_unit(rng);
		return p;
	}
	if (cfg.level >= 2) {
		const double q = cfg.connectivity[pick_weighted(rng, cfg.connectivity)].position;
		p.release = p.t3 = p.t5 = q;
	}
	if (cfg.level == 3) {
		const double shift = (2.0 * draw_unit(rng) - 1.0) * cfg.cut_spread;
		p.release += shift;
		p.t3 += shift;
		p.t5 += shift;
		p.t2 -= shift;
		p.t4 -= shift;
	}
	return p;
}

// ------------------------------------------------------------- json helpers

json read_json_file(const std::filesystem::path& path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError(path.string(), "cannot open file");
	std::stringstream ss;
	ss << in.rdbuf();
	try {
		return json::parse(ss.str());
	} catch (const json::parse_error& e) {
		throw ParseError(path.string(), std::string("malformed JSON: ") + e.what());
	}
}

Range read_range(const json& doc, const char* field, const std::string& ctx) {
	const std::string where = ctx + "." + field;
	auto it = doc.find(field);
	if (it == doc.end())
		throw ParseError(where, "missing field");
	if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer())
		throw ParseError(where, "expected [lo, hi] integers");
	Range r{(*it)[0].get<Time>(), (*it)[1].get<Time>()};
	if (r.lo < 0 || r.hi < r.lo)
		throw ParseError(where, "need 0 <= lo <= hi");
	return r;
}

template <class T>
T read_value(const json& doc, const char* field, const std::string& ctx, T fallback) {
	auto it = doc.find(field);
	if (it == doc.end())
		return fallback;
	try {
		return it->get<T>();
	} catch (const json::exception&) {
		throw ParseError(ctx.empty() ? std::string(field) : ctx + "." + field, "wrong type");
	}
}

ClientProfile client_profile_from(const json& doc, const std::string& ctx) {
	ClientProfile p;
	p.name = read_value<std::string>(doc, "name", ctx, ctx);
	p.release = read_range(doc, "release", ctx);
	p.t2_work = read_range(doc, "t2_work", ctx);
	p.t3_delay = read_range(doc, "t3_delay", ctx);
	p.t4_work = read_range(doc, "t4_work", ctx);
	p.t5_time = read_range(doc, "t5_time", ctx);
	p.demand = read_range(doc, "demand", ctx);
	return p;
}

HelperProfile helper_profile_from(const json& doc, const std::string& ctx) {
	HelperProfile p;
	p.name = read_value<std::string>(doc, "name", ctx, ctx);
	p.speed = read_value<double>(doc, "speed", ctx, 1.0);
	p.capacity = read_value<Time>(doc, "capacity", ctx, 1);
	p.share = read_value<double>(doc, "share", ctx, 1.0);
	return p;
}

std::vector<std::filesystem::path> json_files(const std::filesystem::path& dir) {
	std::vector<std::filesystem::path> out;
	if (!std::filesystem::is_directory(dir))
		throw ParseError(dir.string(), "not a directory");
	for (const auto& e : std::filesystem::directory_iterator(dir))
		if (e.is_regular_file() && e.path().extension() == ".json")
			out.push_back(e.path());
	std::sort(out.begin(), out.end());
	return out;
}

}  // namespace

std::vector<ClientProfile> default_client_profiles() {
	return {
		{"rpi3", range(6, 10), range(5, 9), range(8, 14), range(10, 18), range(8, 12), range(2, 3)},
		{"rpi4", range(4, 7), range(5, 9), range(5, 9), range(10, 18), range(5, 8), range(2, 3)},
		{"jetson_gpu", range(1, 3), range(8, 14), range(2, 4), range(16, 28), range(1, 3), range(3, 4)},
		{"jetson_cpu", range(3, 6), range(6, 11), range(4, 8), range(12, 22), range(3, 6), range(3, 4)},
	};
}

std::vector<HelperProfile> default_helper_profiles() {
	return {
		{"laptop", 1.0, 10, 1.0},
		{"vm", 1.6, 16, 1.6},
	};
}

std::vector<ConnectivityClass> default_connectivity() {
	return {
		{"fast", 0.3, 0.15},
		{"medium", 0.5, 0.5},
		{"slow", 0.2, 0.9},
	};
}

GeneratorConfig GeneratorConfig::defaults() {
	GeneratorConfig c;
	c.client_profiles = default_client_profiles();
	c.helper_profiles = default_helper_profiles();
	c.connectivity = default_connectivity();
	return c;
}

void GeneratorConfig::require_valid() const {
	auto fail = [](const std::string& msg) { throw InvalidInput("generator config: " + msg); };
	if (level < 1 || level > 4)
		fail("level must be 1..4");
	if (num_clients == 0 || num_helpers == 0)
		fail("clients and helpers must be positive");
	if (client_profiles.empty() || helper_profiles.empty())
		fail("at least one client and one helper profile are required");
	if (level == 1 && (client_profiles.size() < 2 || helper_profiles.size() < 2))
		fail("level 1 needs two client profiles and two helper profiles");
	if (level >= 2 && level <= 3 && connectivity.empty())
		fail("levels 2 and 3 need connectivity classes");
	for (const auto& c : connectivity)
		if (!(c.probability >= 0.0) || !(c.position >= 0.0 && c.position <= 1.0))
			fail("connectivity class " + c.name + " needs probability >= 0 and position in [0,1]");
	for (const auto& p : client_profiles)
		for (const Range* r : {&p.release, &p.t2_work, &p.t3_delay, &p.t4_work, &p.t5_time, &p.demand})
			if (r->lo < 0 || r->hi < r->lo)
				fail("client profile " + p.name + " has a bad range");
	for (const auto& h : helper_profiles)
		if (!(h.speed > 0.0) || h.capacity < 0 || !(h.share > 0.0))
			fail("helper profile " + h.name + " needs speed > 0, capacity >= 0, share > 0");
	if (!(capacity_slack >= 0.0))
		fail("capacity_slack must be >= 0");
	if (!(cut_spread >= 0.0 && cut_spread <= 1.0))
		fail("cut_spread must be in [0,1]");
	if (!(edge_density > 0.0 && edge_density <= 1.0))
		fail("edge_density must be in (0,1]");

	if (capacity_slack == 0.0) {
		const std::size_t hp = level == 1 ? 2 : helper_profiles.size();
		Time total = 0;
		for (HelperId i = 0; i < num_helpers; ++i)
			total += helper_profiles[i % hp].capacity;
		const std::size_t cp = level == 1 ? 2 : client_profiles.size();
		Time least = unit_demand ? 1 : client_profiles[0].demand.lo;
		for (std::size_t k = 0; k < cp && !unit_demand; ++k)
			least = std::min(least, client_profiles[k].demand.lo);
		if (least * static_cast<Time>(num_clients) > total)
			fail("total minimum demand exceeds total capacity; no assignment can be feasible");
	}
}

Time draw_int(std::mt19937_64& rng, Time lo, Time hi) {
	if (hi <= lo)
		return lo;
	const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
	const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
	std::uint64_t x;
	do
		x = rng();
	while (x >= limit);
	return lo + static_cast<Time>(x % span);
}

double draw_unit(std::mt19937_64& rng) {
	return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Range helper_range(const Range& work, const HelperProfile& helper) {
	return Range{on_helper(work.lo, helper.speed), on_helper(work.hi, helper.speed)};
}

Instance generate(const GeneratorConfig& cfg) {
	cfg.require_valid();
	std::mt19937_64 rng(cfg.seed);
	const std::size_t J = cfg.num_clients, I = cfg.num_helpers;
	const std::size_t cp = cfg.level == 1 ? 2 : cfg.client_profiles.size();
	const std::size_t hp = cfg.level == 1 ? 2 : cfg.helper_profiles.size();

	Instance inst = Instance::blank(J, I);
	std::vector<Time> base2(J), base4(J);
	for (ClientId j = 0; j < J; ++j) {
		const std::size_t k = cfg.level == 1 ? j % cp : static_cast<std::size_t>(draw_int(rng, 0, static_cast<Time>(cp) - 1));
		const ClientProfile& prof = cfg.client_profiles[k];
		const Positions pos = draw_positions(cfg, rng);
		inst.release[j] = at_position(prof.release, pos.release);
		inst.t3_delay[j] = at_position(prof.t3_delay, pos.t3);
		inst.t5_time[j] = at_position(prof.t5_time, pos.t5);
		inst.demand[j] = cfg.unit_demand ? 1 : at_position(prof.demand, pos.demand);
		base2[j] = at_position(prof.t2_work, pos.t2);
		base4[j] = at_position(prof.t4_work, pos.t4);
	}
	for (ClientId j = 0; j < J; ++j)
		for (HelperId i = 0; i < I; ++i) {
			const HelperProfile& h = cfg.helper_profiles[i % hp];
			inst.set_t2(j, i, on_helper(base2[j], h.speed));
			inst.set_t4(j, i, on_helper(base4[j], h.speed));
		}

	if (cfg.edge_density < 1.0) {
		for (ClientId j = 0; j < J; ++j) {
			bool any = false;
			for (HelperId i = 0; i < I; ++i) {
				const bool keep = draw_unit(rng) < cfg.edge_density;
				inst.set_edge(j, i, keep);
				any = any || keep;
			}
			if (!any)
				inst.set_edge(j, static_cast<HelperId>(draw_int(rng, 0, static_cast<Time>(I) - 1)), true);
		}
	}

	Time total_demand = 0;
	for (Time d : inst.demand)
		total_demand += d;
	if (cfg.capacity_slack > 0.0) {
		double shares = 0.0;
		for (HelperId i = 0; i < I; ++i)
			shares += cfg.helper_profiles[i % hp].share;
		for (HelperId i = 0; i < I; ++i) {
			const double want = cfg.helper_profiles[i % hp].share / shares * cfg.capacity_slack *
			                    static_cast<double>(total_demand);
			inst.capacity[i] = static_cast<Time>(std::ceil(want - 1e-9));
		}
	} else {
		for (HelperId i = 0; i < I; ++i)
			inst.capacity[i] = cfg.helper_profiles[i % hp].capacity;
	}
	Time total_capacity = 0;
	for (Time m : inst.capacity)
		total_capacity += m;
	if (total_demand > total_capacity)
		throw InvalidInput("generator config: total demand " + std::to_string(total_demand) +
		                   " exceeds total capacity " + std::to_string(total_capacity));
	return inst;
}

void load_profiles(const std::filesystem::path& dir, GeneratorConfig& config) {
	std::vector<ClientProfile> clients;
	for (const auto& f : json_files(dir / "clients"))
		clients.push_back(client_profile_from(read_json_file(f), f.stem().string()));
	std::vector<HelperProfile> helpers;
	for (const auto& f : json_files(dir / "helpers"))
		helpers.push_back(helper_profile_from(read_json_file(f), f.stem().string()));
	if (clients.empty() || helpers.empty())
		throw ParseError(dir.string(), "no client or helper profiles found");
	config.client_profiles = std::move(clients);
	config.helper_profiles = std::move(helpers);

	const auto conn = dir / "connectivity.json";
	if (std::filesystem::exists(conn)) {
		const json doc = read_json_file(conn);
		if (!doc.is_array())
			throw ParseError(conn.string(), "expected a list of classes");
		config.connectivity.clear();
		for (std::size_t k = 0; k < doc.size(); ++k) {
			const std::string ctx = "connectivity[" + std::to_string(k + 1) + "]";
			ConnectivityClass c;
			c.name = read_value<std::string>(doc[k], "name", ctx, ctx);
			c.probability = read_value<double>(doc[k], "probability", ctx, 1.0);
			c.position = read_value<double>(doc[k], "position", ctx, 0.5);
			config.connectivity.push_back(c);
		}
	}
}

GeneratorConfig parse_generator_config(const std::string& text, const std::filesystem::path& base_dir) {
	json doc;
	try {
		doc = json::parse(text);
	} catch (const json::parse_error& e) {
		throw ParseError("config", std::string("malformed JSON: ") + e.what());
	}
	if (!doc.is_object())
		throw ParseError("config", "expected an object");

	GeneratorConfig c = GeneratorConfig::defaults();
	if (auto it = doc.find("profiles"); it != doc.end()) {
		if (!it->is_string())
			throw ParseError("profiles", "expected a directory path");
		std::filesystem::path dir = it->get<std::string>();
		if (dir.is_relative() && !base_dir.empty())
			dir = base_dir / dir;
		load_profiles(dir, c);
	}
	c.level = read_value<int>(doc, "level", "", c.level);
	c.num_clients = read_value<std::size_t>(doc, "clients", "", c.num_clients);
	c.num_helpers = read_value<std::size_t>(doc, "helpers", "", c.num_helpers);
	c.seed = read_value<std::uint64_t>(doc, "seed", "", c.seed);
	c.unit_demand = read_value<bool>(doc, "unit_demand", "", c.unit_demand);
	c.capacity_slack = read_value<double>(doc, "capacity_slack", "", c.capacity_slack);
	c.cut_spread = read_value<double>(doc, "cut_spread", "", c.cut_spread);
	c.edge_density = read_value<double>(doc, "edge_density", "", c.edge_density);
	return c;
}

}  // namespace slsched
