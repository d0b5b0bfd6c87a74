#include "harness/csv.hpp"

#include <charconv>
#include <cstdio>

namespace slsched::harness {

namespace {

std::string quoted(const std::string& s) {
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string out = "\"";
	for (char c : s) {
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + "\"";
}

const std::vector<std::string>& columns() {
	static const std::vector<std::string> cols = split_csv_line(kRunsHeader);
	return cols;
}

template <class T>
T parse_number(const std::string& s, std::size_t line, const std::string& column) {
	T v{};
	auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (ec != std::errc() || end != s.data() + s.size())
		throw CsvError("line " + std::to_string(line) + ", column " + column + ": cannot parse '" + s + "'");
	return v;
}

}  // namespace

CsvRow make_row(const RunReport& r, const Instance& inst, const InstanceMeta& meta) {
	CsvRow row;
	row.instance_id = meta.id;
	row.method = to_string(r.method);
	row.status = to_string(r.status);
	row.makespan = r.makespan;
	row.wall_time_ms = r.wall_time_ms;
	row.clients = inst.num_clients;
	row.helpers = inst.num_helpers;
	row.level = meta.level;
	row.seed = meta.seed;
	return row;
}

std::string format_row(const CsvRow& row) {
	char wall[64];
	std::snprintf(wall, sizeof wall, "%.1f", row.wall_time_ms);
	std::string s = quoted(row.instance_id) + "," + row.method + "," + row.status + ",";
	if (row.makespan)
		s += std::to_string(*row.makespan);
	s += std::string(",") + wall + "," + std::to_string(row.clients) + "," + std::to_string(row.helpers) + ",";
	if (row.level)
		s += std::to_string(*row.level);
	s += ",";
	if (row.seed)
		s += std::to_string(*row.seed);
	return s;
}

void write_rows(std::ostream& out, const std::vector<CsvRow>& rows, bool header) {
	if (header)
		out << kRunsHeader << "\n";
	for (const auto& r : rows)
		out << format_row(r) << "\n";
}

std::vector<std::string> split_csv_line(const std::string& line) {
	std::vector<std::string> out;
	std::string cur;
	bool in_quotes = false;
	for (std::size_t k = 0; k < line.size(); ++k) {
		const char c = line[k];
		if (in_quotes) {
			if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
				cur += '"';
				++k;
			} else if (c == '"') {
				in_quotes = false;
			} else {
				cur += c;
			}
		} else if (c == '"') {
			in_quotes = true;
		} else if (c == ',') {
			out.push_back(cur);
			cur.clear();
		} else if (c != '\r') {
			cur += c;
		}
	}
	out.push_back(cur);
	return out;
}

std::vector<CsvRow> read_rows(std::istream& in) {
	std::string line;
	if (!std::getline(in, line) || line.empty())
		throw CsvError("empty CSV: no header");
	const auto header = split_csv_line(line);
	const auto& want = columns();
	for (std::size_t k = 0; k < want.size(); ++k) {
		if (k >= header.size())
			throw CsvError("header: missing column " + want[k]);
		if (header[k] != want[k])
			throw CsvError("header: column " + std::to_string(k + 1) + " is '" + header[k] + "', expected '" +
			               want[k] + "'");
	}
	if (header.size() > want.size())
		throw CsvError("header: unexpected column '" + header[want.size()] + "'");

	std::vector<CsvRow> rows;
	std::size_t lineno = 1;
	while (std::getline(in, line)) {
		++lineno;
		if (line.empty() || line == "\r")
			continue;
		const auto f = split_csv_line(line);
		if (f.size() != want.size())
			throw CsvError("line " + std::to_string(lineno) + ": expected " + std::to_string(want.size()) +
			               " columns, got " + std::to_string(f.size()));
		CsvRow r;
		r.instance_id = f[0];
		r.method = f[1];
		if (r.method.empty())
			throw CsvError("line " + std::to_string(lineno) + ", column method: empty");
		r.status = f[2];
		if (r.status.empty())
			throw CsvError("line " + std::to_string(lineno) + ", column status: empty");
		if (!f[3].empty())
			r.makespan = parse_number<Time>(f[3], lineno, "makespan");
		r.wall_time_ms = parse_number<double>(f[4], lineno, "wall_time_ms");
		r.clients = parse_number<std::size_t>(f[5], lineno, "J");
		r.helpers = parse_number<std::size_t>(f[6], lineno, "I");
		if (!f[7].empty())
			r.level = parse_number<int>(f[7], lineno, "level");
		if (!f[8].empty())
			r.seed = parse_number<std::uint64_t>(f[8], lineno, "seed");
		rows.push_back(std::move(r));
	}
	return rows;
}

}  // namespace slsched::harness
