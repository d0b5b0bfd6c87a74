#pragma once

// JSON text formats for instances and schedules. See docs/formats.md for
// the schema; all indices in files are 1-based.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "slsched/model.hpp"

namespace slsched {

/// A structured parse failure. `where` is either "line L, column C" for
/// syntax errors or a field path such as "t2_time[3][2]".
class ParseError : public std::runtime_error {
public:
	ParseError(std::string where, const std::string& what)
		: std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

	const std::string& where() const { return where_; }

private:
	std::string where_;
};

/// Optional provenance carried next to an instance in its file.
struct InstanceMeta {
	std::string id;
	std::optional<int> level;
	std::optional<std::uint64_t> seed;

	bool operator==(const InstanceMeta&) const = default;
};

struct InstanceFile {
	Instance instance;
	InstanceMeta meta;
};

/// Parses an instance document. Throws ParseError on syntax errors, wrong
/// types, negative values, or a missing duration on an edge; the result
/// satisfies Instance::problems().empty() except possibly for clients
/// without any edge, which are reported as ParseError too.
InstanceFile parse_instance(const std::string& text);

/// Reads and parses a file. The meta id defaults to the file stem.
InstanceFile load_instance(const std::filesystem::path& path);

/// Serializes with "edges": "complete" when every pair is an edge, else an
/// explicit pair list; non-edge table entries are written as null.
std::string format_instance(const Instance& inst, const InstanceMeta& meta = {});

void save_instance(const std::filesystem::path& path, const Instance& inst, const InstanceMeta& meta = {});

/// Schedule documents carry the assignment alongside the intervals.
struct ScheduleFile {
	Assignment assignment;
	Schedule schedule;
	std::string method;
};

ScheduleFile parse_schedule(const std::string& text);
ScheduleFile load_schedule(const std::filesystem::path& path);
std::string format_schedule(const Assignment& a, const Schedule& s, const std::string& method = {});
void save_schedule(const std::filesystem::path& path, const Assignment& a, const Schedule& s,
                   const std::string& method = {});

}  // namespace slsched
