#include "slsched/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace slsched {

using nlohmann::json;

namespace {

std::string location_of(const std::string& text, std::size_t byte) {
	std::size_t line = 1, col = 1;
	for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
		if (text[k] == '\n') {
			++line;
			col = 1;
		} else {
			++col;
		}
	}
	return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_document(const std::string& text) {
	try {
		return json::parse(text);
	} catch (const json::parse_error& e) {
		throw ParseError(location_of(text, e.byte > 0 ? e.byte - 1 : 0), "malformed JSON");
	}
}

std::string index_path(const std::string& field, std::size_t k) {
	return field + "[" + std::to_string(k + 1) + "]";
}

const json& require(const json& doc, const char* field) {
	auto it = doc.find(field);
	if (it == doc.end())
		throw ParseError(field, "missing field");
	return *it;
}

Time read_count(const json& v, const std::string& where, bool allow_negative = false) {
	if (!v.is_number_integer())
		throw ParseError(where, "expected an integer");
	auto x = v.get<std::int64_t>();
	if (x < 0 && !allow_negative)
		throw ParseError(where, "negative value " + std::to_string(x));
	return x;
}

std::vector<Time> read_list(const json& doc, const char* field, std::size_t len) {
	const json& v = require(doc, field);
	if (!v.is_array())
		throw ParseError(field, "expected a list");
	if (v.size() != len)
		throw ParseError(field, "expected " + std::to_string(len) + " entries, got " + std::to_string(v.size()));
	std::vector<Time> out(len);
	for (std::size_t k = 0; k < len; ++k)
		out[k] = read_count(v[k], index_path(field, k));
	return out;
}

std::vector<Time> read_table(const json& doc, const char* field, const Instance& inst) {
	const json& v = require(doc, field);
	const std::size_t J = inst.num_clients, I = inst.num_helpers;
	if (!v.is_array() || v.size() != J)
		throw ParseError(field, "expected " + std::to_string(J) + " rows");
	std::vector<Time> out(J * I, 0);
	for (ClientId j = 0; j < J; ++j) {
		const json& row = v[j];
		const std::string rp = index_path(field, j);
		if (!row.is_array() || row.size() != I)
			throw ParseError(rp, "expected " + std::to_string(I) + " entries");
		for (HelperId i = 0; i < I; ++i) {
			const std::string where = rp + "[" + std::to_string(i + 1) + "]";
			if (row[i].is_null()) {
				if (inst.has_edge(j, i))
					throw ParseError(where, "missing duration for edge (" + std::to_string(j + 1) + "," +
					                            std::to_string(i + 1) + ")");
				continue;
			}
			Time x = read_count(row[i], where, !inst.has_edge(j, i));
			out[j * I + i] = inst.has_edge(j, i) ? x : 0;
		}
	}
	return out;
}

std::size_t read_size(const json& doc, const char* field) {
	const json& v = require(doc, field);
	if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
		throw ParseError(field, "expected a non-negative integer");
	return v.get<std::size_t>();
}

std::string slurp(const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw ParseError(path.string(), "cannot open file");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("cannot write " + path.string());
	out << text;
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
	json doc = parse_document(text);
	if (!doc.is_object())
		throw ParseError("", "instance document must be an object");

	InstanceFile file;
	Instance& inst = file.instance;
	inst.num_clients = read_size(doc, "clients");
	inst.num_helpers = read_size(doc, "helpers");
	if (inst.num_helpers == 0)
		throw ParseError("helpers", "must be positive");
	const std::size_t J = inst.num_clients, I = inst.num_helpers;

	const json& edges = require(doc, "edges");
	if (edges.is_string()) {
		if (edges.get<std::string>() != "complete")
			throw ParseError("edges", "expected \"complete\" or a list of [client, helper] pairs");
		inst.edge.assign(J * I, 1);
	} else if (edges.is_array()) {
		inst.edge.assign(J * I, 0);
		for (std::size_t k = 0; k < edges.size(); ++k) {
			const json& e = edges[k];
			const std::string where = index_path("edges", k);
			if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
				throw ParseError(where, "expected a [client, helper] pair");
			auto j = e[0].get<std::int64_t>(), i = e[1].get<std::int64_t>();
			if (j < 1 || j > static_cast<std::int64_t>(J) || i < 1 || i > static_cast<std::int64_t>(I))
				throw ParseError(where, "pair [" + std::to_string(j) + "," + std::to_string(i) + "] out of range");
			inst.edge[(j - 1) * I + (i - 1)] = 1;
		}
	} else {
		throw ParseError("edges", "expected \"complete\" or a list of [client, helper] pairs");
	}

	inst.capacity = read_list(doc, "capacity", I);
	inst.demand = read_list(doc, "demand", J);
	inst.release = read_list(doc, "release", J);
	inst.t3_delay = read_list(doc, "t3_delay", J);
	inst.t5_time = read_list(doc, "t5_time", J);
	inst.t2_time = read_table(doc, "t2_time", inst);
	inst.t4_time = read_table(doc, "t4_time", inst);

	for (ClientId j = 0; j < J; ++j) {
		bool any = false;
		for (HelperId i = 0; i < I; ++i)
			any = any || inst.has_edge(j, i);
		if (!any)
			throw ParseError("edges", "client " + std::to_string(j + 1) + " has no incident edge");
	}

	if (auto it = doc.find("meta"); it != doc.end() && it->is_object()) {
		if (auto id = it->find("id"); id != it->end() && id->is_string())
			file.meta.id = id->get<std::string>();
		if (auto lv = it->find("level"); lv != it->end() && lv->is_number_integer())
			file.meta.level = lv->get<int>();
		if (auto sd = it->find("seed"); sd != it->end() && sd->is_number_integer())
			file.meta.seed = sd->get<std::uint64_t>();
	}
	return file;
}

InstanceFile load_instance(const std::filesystem::path& path) {
	const std::string text = slurp(path);
	InstanceFile file;
	try {
		file = parse_instance(text);
	} catch (const ParseError& e) {
		throw ParseError(path.string() + (e.where().empty() ? "" : ": " + e.where()),
		                 std::string(e.what()).substr(e.where().empty() ? 0 : e.where().size() + 2));
	}
	if (file.meta.id.empty())
		file.meta.id = path.stem().string();
	return file;
}

std::string format_instance(const Instance& inst, const InstanceMeta& meta) {
	const std::size_t J = inst.num_clients, I = inst.num_helpers;
	json doc = json::object();
	doc["clients"] = J;
	doc["helpers"] = I;
	bool complete = std::all_of(inst.edge.begin(), inst.edge.end(), [](std::uint8_t e) { return e != 0; });
	if (complete) {
		doc["edges"] = "complete";
	} else {
		json pairs = json::array();
		for (ClientId j = 0; j < J; ++j)
			for (HelperId i = 0; i < I; ++i)
				if (inst.has_edge(j, i))
					pairs.push_back({j + 1, i + 1});
		doc["edges"] = std::move(pairs);
	}
	doc["capacity"] = inst.capacity;
	doc["demand"] = inst.demand;
	doc["release"] = inst.release;
	doc["t3_delay"] = inst.t3_delay;
	doc["t5_time"] = inst.t5_time;
	auto table = [&](const std::vector<Time>& v) {
		json rows = json::array();
		for (ClientId j = 0; j < J; ++j) {
			json row = json::array();
			for (HelperId i = 0; i < I; ++i)
				row.push_back(inst.has_edge(j, i) ? json(v[j * I + i]) : json(nullptr));
			rows.push_back(std::move(row));
		}
		return rows;
	};
	doc["t2_time"] = table(inst.t2_time);
	doc["t4_time"] = table(inst.t4_time);
	if (!meta.id.empty() || meta.level || meta.seed) {
		json m = json::object();
		if (!meta.id.empty())
			m["id"] = meta.id;
		if (meta.level)
			m["level"] = *meta.level;
		if (meta.seed)
			m["seed"] = *meta.seed;
		doc["meta"] = std::move(m);
	}
	return doc.dump(1) + "\n";
}

void save_instance(const std::filesystem::path& path, const Instance& inst, const InstanceMeta& meta) {
	spit(path, format_instance(inst, meta));
}

ScheduleFile parse_schedule(const std::string& text) {
	json doc = parse_document(text);
	if (!doc.is_object())
		throw ParseError("", "schedule document must be an object");
	ScheduleFile file;
	if (auto m = doc.find("method"); m != doc.end() && m->is_string())
		file.method = m->get<std::string>();

	const json& asg = require(doc, "assignment");
	if (!asg.is_array())
		throw ParseError("assignment", "expected a list of helper numbers");
	for (std::size_t k = 0; k < asg.size(); ++k) {
		Time h = read_count(asg[k], index_path("assignment", k));
		if (h < 1)
			throw ParseError(index_path("assignment", k), "helper numbers start at 1");
		file.assignment.helper_of.push_back(static_cast<HelperId>(h - 1));
	}

	const json& ivs = require(doc, "intervals");
	if (!ivs.is_array())
		throw ParseError("intervals", "expected a list");
	for (std::size_t k = 0; k < ivs.size(); ++k) {
		const json& e = ivs[k];
		const std::string where = index_path("intervals", k);
		if (!e.is_object())
			throw ParseError(where, "expected an object");
		Interval iv;
		Time h = read_count(require(e, "helper"), where + ".helper");
		Time c = read_count(require(e, "client"), where + ".client");
		if (h < 1 || c < 1)
			throw ParseError(where, "client and helper numbers start at 1");
		iv.helper = static_cast<HelperId>(h - 1);
		iv.client = static_cast<ClientId>(c - 1);
		const json& task = require(e, "task");
		if (task == "T2")
			iv.kind = TaskKind::T2;
		else if (task == "T4")
			iv.kind = TaskKind::T4;
		else
			throw ParseError(where + ".task", "expected \"T2\" or \"T4\"");
		iv.start = read_count(require(e, "start"), where + ".start", true);
		iv.end = read_count(require(e, "end"), where + ".end", true);
		file.schedule.intervals.push_back(iv);
	}

	const json& comp = require(doc, "completion");
	if (!comp.is_array())
		throw ParseError("completion", "expected a list");
	for (std::size_t k = 0; k < comp.size(); ++k)
		file.schedule.completion.push_back(read_count(comp[k], index_path("completion", k), true));
	file.schedule.makespan = read_count(require(doc, "makespan"), "makespan", true);
	return file;
}

ScheduleFile load_schedule(const std::filesystem::path& path) {
	return parse_schedule(slurp(path));
}

std::string format_schedule(const Assignment& a, const Schedule& s, const std::string& method) {
	json doc = json::object();
	if (!method.empty())
		doc["method"] = method;
	json asg = json::array();
	for (HelperId h : a.helper_of)
		asg.push_back(h + 1);
	doc["assignment"] = std::move(asg);
	json ivs = json::array();
	for (const auto& iv : s.intervals)
		ivs.push_back({{"helper", iv.helper + 1},
		               {"client", iv.client + 1},
		               {"task", to_string(iv.kind)},
		               {"start", iv.start},
		               {"end", iv.end}});
	doc["intervals"] = std::move(ivs);
	doc["completion"] = s.completion;
	doc["makespan"] = s.makespan;
	return doc.dump(1) + "\n";
}

void save_schedule(const std::filesystem::path& path, const Assignment& a, const Schedule& s,
                   const std::string& method) {
	spit(path, format_schedule(a, s, method));
}

}  // namespace slsched
