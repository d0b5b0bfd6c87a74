#pragma once

// Result rows shared by `run`, `sweep` and `plot`.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "slsched/instance_io.hpp"
#include "slsched/pipelines.hpp"

namespace slsched::harness {

inline constexpr const char* kRunsHeader = "instance_id,method,status,makespan,wall_time_ms,J,I,level,seed";

class CsvError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

struct CsvRow {
	std::string instance_id;
	std::string method;
	std::string status;
	std::optional<Time> makespan;
	double wall_time_ms = 0.0;
	std::size_t clients = 0;
	std::size_t helpers = 0;
	std::optional<int> level;
	std::optional<std::uint64_t> seed;

	bool operator==(const CsvRow&) const = default;
};

CsvRow make_row(const RunReport& r, const Instance& inst, const InstanceMeta& meta);

/// One line, no trailing newline. wall_time_ms has one decimal.
std::string format_row(const CsvRow& row);

void write_rows(std::ostream& out, const std::vector<CsvRow>& rows, bool header = true);

/// Parses a runs CSV. Throws CsvError naming the line and column on any
/// schema problem; a file with no header is an error, a header alone
/// yields no rows.
std::vector<CsvRow> read_rows(std::istream& in);

/// Splits one CSV line, honoring double quotes.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace slsched::harness
