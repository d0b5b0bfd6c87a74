#include "harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <thread>

#include "json.hpp"

namespace slsched::harness {

using nlohmann::json;

namespace {

template <class T>
std::vector<T> read_axis(const json& doc, const char* field, bool required) {
	auto it = doc.find(field);
	if (it == doc.end()) {
		if (required)
			throw ParseError(field, "missing field");
		return {};
	}
	std::vector<T> out;
	try {
		if (it->is_array())
			for (const auto& v : *it)
				out.push_back(v.get<T>());
		else
			out.push_back(it->get<T>());
	} catch (const json::exception&) {
		throw ParseError(field, "expected an integer or a list of integers");
	}
	if (out.empty())
		throw ParseError(field, "empty list");
	return out;
}

std::string fmt(const std::optional<double>& v) {
	if (!v)
		return "";
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.4f", *v);
	return buf;
}

double mean(const std::vector<double>& v) {
	double s = 0.0;
	for (double x : v)
		s += x;
	return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

bool scheduled(const CsvRow& r) {
	return r.makespan.has_value();
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& text, const std::filesystem::path& base_dir) {
	json doc;
	try {
		doc = json::parse(text);
	} catch (const json::parse_error& e) {
		throw ParseError("sweep config", std::string("malformed JSON: ") + e.what());
	}
	if (!doc.is_object())
		throw ParseError("sweep config", "expected an object");

	SweepConfig c;
	c.clients = read_axis<std::size_t>(doc, "clients", true);
	c.helpers = read_axis<std::size_t>(doc, "helpers", true);
	c.levels = read_axis<int>(doc, "levels", false);
	if (c.levels.empty())
		c.levels = read_axis<int>(doc, "level", true);
	c.seeds = read_axis<std::uint64_t>(doc, "seeds", false);
	if (c.seeds.empty()) {
		const auto first = read_axis<std::uint64_t>(doc, "seed", false);
		const auto reps = read_axis<std::size_t>(doc, "repetitions", false);
		set_seed_range(c, first.empty() ? 1 : first[0], reps.empty() ? 1 : reps[0]);
	}

	json shared = doc;
	for (const char* k : {"clients", "helpers", "levels", "level", "seeds", "seed", "repetitions"})
		shared.erase(k);
	shared["clients"] = c.clients[0];
	shared["helpers"] = c.helpers[0];
	shared["level"] = c.levels[0];
	c.base = parse_generator_config(shared.dump(), base_dir);
	for (int level : c.levels) {
		GeneratorConfig probe = c.base;
		probe.level = level;
		try {
			probe.require_valid();
		} catch (const InvalidInput& e) {
			throw ParseError("levels", e.what());
		}
	}
	return c;
}

void set_seed_range(SweepConfig& config, std::uint64_t first, std::size_t count) {
	config.seeds.clear();
	for (std::size_t k = 0; k < count; ++k)
		config.seeds.push_back(first + k);
}

std::string sweep_instance_id(int level, std::size_t clients, std::size_t helpers, std::uint64_t seed) {
	return "L" + std::to_string(level) + "-J" + std::to_string(clients) + "-I" + std::to_string(helpers) + "-s" +
	       std::to_string(seed);
}

std::vector<CsvRow> run_sweep(const SweepConfig& config, const SweepOptions& options) {
	struct Task {
		GeneratorConfig gen;
		InstanceMeta meta;
	};
	std::vector<Task> tasks;
	for (std::size_t J : config.clients)
		for (std::size_t I : config.helpers)
			for (int level : config.levels)
				for (std::uint64_t seed : config.seeds) {
					Task t{config.base, {}};
					t.gen.num_clients = J;
					t.gen.num_helpers = I;
					t.gen.level = level;
					t.gen.seed = seed;
					t.meta = {sweep_instance_id(level, J, I, seed), level, seed};
					tasks.push_back(std::move(t));
				}

	std::vector<std::vector<CsvRow>> results(tasks.size());
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();) {
			const Task& t = tasks[k];
			auto& out = results[k];
			Instance inst;
			try {
				inst = generate(t.gen);
			} catch (const InvalidInput&) {
				for (Method m : options.methods) {
					CsvRow row;
					row.instance_id = t.meta.id;
					row.method = to_string(m);
					row.status = to_string(RunStatus::Rejected);
					row.clients = t.gen.num_clients;
					row.helpers = t.gen.num_helpers;
					row.level = t.meta.level;
					row.seed = t.meta.seed;
					out.push_back(row);
				}
				continue;
			}
			for (Method m : options.methods)
				out.push_back(make_row(run_method(m, inst, options.budget), inst, t.meta));
		}
	};

	unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
	jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
	std::vector<std::thread> pool;
	for (unsigned w = 1; w < jobs; ++w)
		pool.emplace_back(worker);
	worker();
	for (auto& th : pool)
		th.join();

	std::vector<CsvRow> rows;
	for (auto& r : results)
		rows.insert(rows.end(), r.begin(), r.end());
	return rows;
}

double median(std::vector<double> v) {
	if (v.empty())
		return 0.0;
	std::sort(v.begin(), v.end());
	const std::size_t n = v.size();
	return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

std::vector<SummaryRow> summarize(const std::vector<CsvRow>& rows) {
	// Reference makespans per instance.
	std::map<std::string, Time> equid, oracle;
	for (const auto& r : rows) {
		if (r.method == "equid" && scheduled(r))
			equid[r.instance_id] = *r.makespan;
		if (r.method == "oracle" && r.status == "ok" && r.makespan)
			oracle[r.instance_id] = *r.makespan;
	}

	using Key = std::tuple<std::size_t, std::size_t, int, std::string>;
	std::vector<Key> order;
	std::map<Key, std::vector<const CsvRow*>> groups;
	for (const auto& r : rows) {
		Key k{r.clients, r.helpers, r.level.value_or(-1), r.method};
		if (!groups.count(k))
			order.push_back(k);
		groups[k].push_back(&r);
	}

	std::vector<SummaryRow> out;
	for (const auto& k : order) {
		const auto& g = groups[k];
		SummaryRow s;
		s.clients = std::get<0>(k);
		s.helpers = std::get<1>(k);
		if (std::get<2>(k) >= 0)
			s.level = std::get<2>(k);
		s.method = std::get<3>(k);
		s.runs = g.size();
		std::vector<double> mk, wall, rel, sub, ratio;
		for (const CsvRow* r : g) {
			wall.push_back(r->wall_time_ms);
			if (r->status == "ok")
				++s.ok;
			if (!scheduled(*r))
				continue;
			const double m = static_cast<double>(*r->makespan);
			mk.push_back(m);
			if (auto e = equid.find(r->instance_id); e != equid.end() && e->second > 0)
				rel.push_back((m - static_cast<double>(e->second)) / static_cast<double>(e->second));
			if (auto o = oracle.find(r->instance_id); o != oracle.end() && o->second > 0) {
				sub.push_back((m - static_cast<double>(o->second)) / static_cast<double>(o->second));
				ratio.push_back(m / static_cast<double>(o->second));
			}
		}
		if (!mk.empty()) {
			s.median_makespan = median(mk);
			s.mean_makespan = mean(mk);
		}
		s.median_wall_ms = median(wall);
		s.mean_wall_ms = mean(wall);
		if (!rel.empty()) {
			s.median_rel_diff = median(rel);
			s.mean_rel_diff = mean(rel);
		}
		if (!sub.empty()) {
			s.mean_subopt = mean(sub);
			s.max_subopt = *std::max_element(sub.begin(), sub.end());
			s.max_ratio = *std::max_element(ratio.begin(), ratio.end());
		}
		out.push_back(std::move(s));
	}
	return out;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
	out << kSummaryHeader << "\n";
	for (const auto& s : rows) {
		out << s.clients << "," << s.helpers << "," << (s.level ? std::to_string(*s.level) : "") << "," << s.method
		    << "," << s.runs << "," << s.ok << "," << fmt(s.median_makespan) << "," << fmt(s.mean_makespan) << ","
		    << fmt(s.median_wall_ms) << "," << fmt(s.mean_wall_ms) << "," << fmt(s.median_rel_diff) << ","
		    << fmt(s.mean_rel_diff) << "," << fmt(s.mean_subopt) << "," << fmt(s.max_subopt) << ","
		    << fmt(s.max_ratio) << "\n";
	}
}

}  // namespace slsched::harness
