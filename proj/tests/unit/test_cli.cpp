#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "harness/commands.hpp"
#include "harness/csv.hpp"
#include "harness/plot.hpp"
#include "harness/sweep.hpp"

using namespace slsched;
using namespace slsched::harness;
namespace fs = std::filesystem;

namespace {

struct Cli {
	int code = -1;
	std::string out, err;
};

Cli cli(std::vector<std::string> args) {
	std::ostringstream out, err;
	Cli r;
	r.code = run_cli(args, out, err);
	r.out = out.str();
	r.err = err.str();
	return r;
}

class TempDir {
public:
	explicit TempDir(const std::string& tag) : path_(fs::temp_directory_path() / ("slsched_test_" + tag)) {
		fs::remove_all(path_);
		fs::create_directories(path_);
	}
	~TempDir() { fs::remove_all(path_); }
	fs::path operator/(const std::string& name) const { return path_ / name; }
	const fs::path& path() const { return path_; }

private:
	fs::path path_;
};

std::string fixture(const char* name) {
	return (fixtures::data_dir() / "fixtures" / name).string();
}

std::string slurp(const fs::path& p) {
	std::ifstream in(p);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::vector<CsvRow> rows_of(const std::string& text) {
	std::istringstream in(text);
	return read_rows(in);
}

std::size_t count(const std::string& hay, const std::string& needle) {
	std::size_t n = 0;
	for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1))
		++n;
	return n;
}

fs::path golden(const std::string& name) {
	return fs::path(SLSCHED_GOLDEN_DIR) / name;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
	CHECK(cli({}).code == kExitUsage);
	CHECK(cli({"frobnicate"}).code == kExitUsage);
	CHECK(cli({"run"}).code == kExitUsage);
	CHECK(cli({"run", fixture("chain.json"), "--methods", "simplex"}).code == kExitUsage);
	CHECK(cli({"run", "/no/such/instance.json"}).code == kExitUsage);
	CHECK(cli({"run", fixture("chain.json"), "--budget-ms", "0"}).code == kExitUsage);
	CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("run prints one CSV row per method") {
	const Cli r = cli({"run", fixture("chain.json"), "--oracle"});
	REQUIRE(r.code == kExitOk);
	CHECK(r.out.rfind(kRunsHeader, 0) == 0);
	const auto rows = rows_of(r.out);
	REQUIRE(rows.size() == 5);
	const char* order[] = {"approx5", "equid", "ed-fcfs", "bg", "oracle"};
	for (std::size_t k = 0; k < rows.size(); ++k) {
		CHECK(rows[k].method == order[k]);
		CHECK(rows[k].status == "ok");
		CHECK(rows[k].makespan == 6);
		CHECK(rows[k].instance_id == "chain");
		CHECK(rows[k].clients == 1);
	}
}

TEST_CASE("run exits with 1 when a method fails and still reports it") {
	TempDir dir("run_fail");
	const Cli r = cli({"run", fixture("bg_trap.json"), "--methods", "bg,equid", "--out", (dir / "runs.csv").string(),
	                   "--schedule-dir", (dir / "sched").string()});
	CHECK(r.code == kExitFailure);
	CHECK(r.err.find("bg:") != std::string::npos);
	const auto rows = rows_of(slurp(dir / "runs.csv"));
	REQUIRE(rows.size() == 2);
	CHECK(rows[0].status == "assignment-failed");
	CHECK_FALSE(rows[0].makespan.has_value());
	CHECK(rows[1].status == "ok");
	CHECK(fs::exists(dir / "sched" / "bg_trap.equid.json"));
	CHECK_FALSE(fs::exists(dir / "sched" / "bg_trap.bg.json"));

	const Cli v = cli({"validate", fixture("bg_trap.json"), "--schedule", (dir / "sched" / "bg_trap.equid.json").string()});
	CHECK(v.code == kExitOk);
}

TEST_CASE("straggler priority beats first-come-first-serve") {
	const Cli r = cli({"run", fixture("straggler_late.json"), "--methods", "equid,ed-fcfs"});
	CHECK(r.code == kExitOk);
	const auto rows = rows_of(r.out);
	REQUIRE(rows.size() == 2);
	CHECK(rows[0].makespan == 7);
	CHECK(rows[1].makespan == 8);
}

TEST_CASE("oracle sweep: suboptimality is non-negative and approx5 stays within 5x") {
	TempDir dir("sweep_oracle");
	const std::string cfg = (fixtures::data_dir() / "sweeps" / "small_oracle.json").string();
	const Cli r = cli({"sweep", cfg, "--out", dir.path().string(), "--methods", "approx5,equid", "--oracle"});
	REQUIRE(r.code == kExitOk);
	std::istringstream in(r.out);
	std::string line;
	std::getline(in, line);
	const auto header = split_csv_line(line);
	const auto col = [&](const char* name) {
		return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
	};
	int checked = 0;
	while (std::getline(in, line)) {
		const auto f = split_csv_line(line);
		if (f[col("method")] == "oracle")
			continue;
		REQUIRE_FALSE(f[col("max_subopt_vs_oracle")].empty());
		CHECK(std::stod(f[col("mean_subopt_vs_oracle")]) >= 0.0);
		if (f[col("method")] == "approx5")
			CHECK(std::stod(f[col("max_ratio_vs_oracle")]) <= 5.0);
		++checked;
	}
	CHECK(checked == 4);
}

TEST_CASE("approx5 on general demands is reported as rejected") {
	const Cli r = cli({"run", fixture("memory_1_2.json"), "--methods", "approx5"});
	CHECK(r.code == kExitFailure);
	CHECK(rows_of(r.out).at(0).status == "rejected");
}

TEST_CASE("validate flags a tampered schedule") {
	TempDir dir("validate");
	REQUIRE(cli({"run", fixture("straggler.json"), "--methods", "equid", "--schedule-dir", dir.path().string()}).code ==
	        kExitOk);
	const fs::path good = dir / "straggler.equid.json";
	REQUIRE(fs::exists(good));
	ScheduleFile s = load_schedule(good);
	s.schedule.intervals[0].start += 1;
	s.schedule.intervals[0].end += 1;
	save_schedule(dir / "bad.json", s.assignment, s.schedule);
	const Cli v = cli({"validate", fixture("straggler.json"), "--schedule", (dir / "bad.json").string()});
	CHECK(v.code == kExitFailure);
	CHECK_FALSE(v.out.empty());
	CHECK(cli({"validate", fixture("straggler.json")}).code == kExitOk);
}

TEST_CASE("gen writes loadable instances") {
	TempDir dir("gen");
	CHECK(cli({"gen", "--level", "3", "--clients", "6", "--helpers", "2", "--seed", "4", "--count", "3", "--out",
	           (dir / "many").string()})
	          .code == kExitOk);
	for (int s = 4; s <= 6; ++s) {
		const auto file = load_instance(dir / "many" / ("L3-J6-I2-s" + std::to_string(s) + ".json"));
		CHECK(file.instance.num_clients == 6);
		CHECK(file.meta.seed == static_cast<std::uint64_t>(s));
		CHECK(file.meta.level == 3);
	}
	const Cli one = cli({"gen", "--level", "2", "--clients", "3"});
	CHECK(one.code == kExitOk);
	CHECK(parse_instance(one.out).instance.num_clients == 3);
	CHECK(cli({"gen", "--level", "7"}).code == kExitFailure);
}

TEST_CASE("sweep writes runs and summary with one row per instance and method") {
	TempDir dir("sweep");
	std::ofstream(dir / "cfg.json") << R"({"clients": [3, 4], "helpers": 2, "levels": [2, 4], "seed": 10,
	                                      "repetitions": 2, "unit_demand": true})";
	const Cli r = cli({"sweep", (dir / "cfg.json").string(), "--out", (dir / "out").string(), "--oracle", "--methods",
	                   "approx5,equid,bg", "--jobs", "3"});
	REQUIRE(r.code == kExitOk);
	const auto rows = rows_of(slurp(dir / "out" / "runs.csv"));
	CHECK(rows.size() == 2 * 2 * 2 * 4);
	CHECK(rows[0].instance_id == "L2-J3-I2-s10");
	CHECK(rows[0].method == "approx5");
	CHECK(rows[3].method == "oracle");
	const std::string summary = slurp(dir / "out" / "summary.csv");
	CHECK(summary.rfind(kSummaryHeader, 0) == 0);
	CHECK(r.out == summary);
	CHECK(count(summary, "\n") == 1 + 2 * 2 * 4);

	// Same config twice: identical makespans regardless of thread count.
	const Cli again = cli({"sweep", (dir / "cfg.json").string(), "--out", (dir / "out2").string(), "--oracle",
	                       "--methods", "approx5,equid,bg", "--jobs", "1"});
	REQUIRE(again.code == kExitOk);
	const auto rows2 = rows_of(slurp(dir / "out2" / "runs.csv"));
	REQUIRE(rows2.size() == rows.size());
	for (std::size_t k = 0; k < rows.size(); ++k) {
		CHECK(rows[k].instance_id == rows2[k].instance_id);
		CHECK(rows[k].makespan == rows2[k].makespan);
	}
}

TEST_CASE("sweep with a single client") {
	TempDir dir("sweep_one");
	std::ofstream(dir / "cfg.json") << R"({"clients": 1, "helpers": [1, 3], "levels": 4, "seeds": [1, 2]})";
	const Cli r = cli({"sweep", (dir / "cfg.json").string(), "--out", (dir / "out").string(), "--oracle"});
	REQUIRE(r.code == kExitOk);
	const auto rows = rows_of(slurp(dir / "out" / "runs.csv"));
	REQUIRE(rows.size() == 2 * 2 * 4);
	for (std::size_t k = 0; k < rows.size(); k += 4) {
		CHECK(rows[k].status == "ok");
		for (std::size_t m = 1; m < 4; ++m)
			CHECK(rows[k + m].makespan == rows[k].makespan);
	}
}

TEST_CASE("sweep --repetitions overrides the config seeds") {
	TempDir dir("sweep_reps");
	std::ofstream(dir / "cfg.json") << R"({"clients": 2, "helpers": 1, "levels": 1, "seeds": [1, 2, 3]})";
	REQUIRE(cli({"sweep", (dir / "cfg.json").string(), "--out", (dir / "out").string(), "--methods", "bg",
	             "--repetitions", "5", "--seed", "100"})
	            .code == kExitOk);
	const auto rows = rows_of(slurp(dir / "out" / "runs.csv"));
	REQUIRE(rows.size() == 5);
	CHECK(rows[0].seed == 100u);
	CHECK(rows[4].seed == 104u);
	std::ofstream(dir / "bad.json") << R"({"clients": 2})";
	CHECK(cli({"sweep", (dir / "bad.json").string(), "--out", (dir / "out").string()}).code == kExitUsage);
}

TEST_CASE("plots match the golden files") {
	TempDir dir("plot");
	const std::string csv = golden("runs_small.csv").string();
	for (const char* kind : {"makespan-bars", "relative-diff", "helpers-curve"}) {
		const fs::path out = dir / (std::string(kind) + ".svg");
		REQUIRE(cli({"plot", csv, "--kind", kind, "--out", out.string()}).code == kExitOk);
		CHECK(slurp(out) == slurp(golden(std::string(kind) + ".svg")));
	}
	const std::string curve = slurp(dir / "helpers-curve.svg");
	CHECK(count(curve, "class=\"series\"") == 2);
	CHECK(count(slurp(dir / "makespan-bars.svg"), "class=\"bar\"") > 0);
}

TEST_CASE("plot errors") {
	TempDir dir("plot_err");
	std::ofstream(dir / "empty.csv") << kRunsHeader << "\n";
	const Cli empty = cli({"plot", (dir / "empty.csv").string(), "--kind", "makespan-bars", "--out",
	                       (dir / "e.svg").string()});
	CHECK(empty.code == kExitUsage);
	CHECK_FALSE(fs::exists(dir / "e.svg"));

	std::ofstream(dir / "schema.csv") << "instance_id,method,status,makespan,wall_ms,J,I,level,seed\n";
	const Cli schema = cli({"plot", (dir / "schema.csv").string(), "--kind", "makespan-bars", "--out",
	                        (dir / "s.svg").string()});
	CHECK(schema.code == kExitUsage);
	CHECK(schema.err.find("wall_time_ms") != std::string::npos);
	CHECK_FALSE(fs::exists(dir / "s.svg"));

	CHECK(cli({"plot", golden("runs_small.csv").string(), "--kind", "pie", "--out", (dir / "p.svg").string()}).code ==
	      kExitUsage);
}

TEST_CASE("csv rows round-trip") {
	std::istringstream in(slurp(golden("runs_small.csv")));
	const auto rows = read_rows(in);
	REQUIRE(rows.size() == 16);
	std::ostringstream out;
	write_rows(out, rows);
	std::istringstream back(out.str());
	CHECK(read_rows(back) == rows);
	CHECK(split_csv_line("a,,\"b,c\",d") == std::vector<std::string>{"a", "", "b,c", "d"});
	std::istringstream bad(std::string(kRunsHeader) + "\nx,equid,ok,notanumber,1.0,2,1,3,4\n");
	CHECK_THROWS_AS(read_rows(bad), CsvError);
}
