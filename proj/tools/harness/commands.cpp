#include "harness/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "harness/csv.hpp"
#include "harness/plot.hpp"
#include "harness/sweep.hpp"
#include "slsched/instgen.hpp"
#include "slsched/pipelines.hpp"

namespace slsched::harness {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

std::vector<Method> parse_methods(const std::string& list, bool with_oracle) {
	std::vector<Method> out;
	std::stringstream ss(list);
	for (std::string name; std::getline(ss, name, ',');) {
		if (name.empty())
			continue;
		auto m = parse_method(name);
		if (!m)
			throw UsageError("unknown method '" + name + "' (expected approx5, equid, ed-fcfs, bg, oracle)");
		if (std::find(out.begin(), out.end(), *m) == out.end())
			out.push_back(*m);
	}
	if (with_oracle && std::find(out.begin(), out.end(), Method::Oracle) == out.end())
		out.push_back(Method::Oracle);
	if (out.empty())
		throw UsageError("no methods selected");
	return out;
}

std::string read_file(const fs::path& p) {
	std::ifstream in(p);
	if (!in)
		throw ParseError(p.string(), "cannot open file");
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
	if (p.has_parent_path())
		fs::create_directories(p.parent_path());
	std::ofstream f(p);
	if (!f)
		throw std::runtime_error("cannot write " + p.string());
	f << text;
}

struct BudgetFlags {
	std::int64_t ms = SearchBudget{}.time_limit_ms;
	std::uint64_t nodes = SearchBudget{}.max_nodes;

	void attach(CLI::App* app) {
		app->add_option("--budget-ms", ms, "Wall-clock limit per exact search (ms)")->check(CLI::PositiveNumber);
		app->add_option("--budget-nodes", nodes, "Node limit per exact search")->check(CLI::PositiveNumber);
	}

	SearchBudget get() const { return {nodes, ms}; }
};

const char* kDefaultMethods = "approx5,equid,ed-fcfs,bg";

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
	CLI::App app{"Split-learning client-helper assignment and scheduling benchmarks", "slsched"};
	app.require_subcommand(1);

	// run
	auto* run = app.add_subcommand("run", "Run methods on one instance file and print CSV rows");
	std::string run_instance, run_methods = kDefaultMethods, run_out, run_schedules;
	bool run_oracle = false;
	BudgetFlags run_budget;
	run->add_option("instance", run_instance, "Instance JSON file")->required();
	run->add_option("--methods", run_methods, "Comma-separated methods");
	run->add_flag("--oracle", run_oracle, "Also run the exact oracle");
	run->add_option("--out", run_out, "Write CSV here instead of standard output");
	run->add_option("--schedule-dir", run_schedules, "Write each method's schedule as JSON into this directory");
	run_budget.attach(run);

	// sweep
	auto* sweep = app.add_subcommand("sweep", "Run methods over a generated sweep");
	std::string sweep_config, sweep_methods = "equid,ed-fcfs,bg", sweep_out = "sweep-out";
	bool sweep_oracle = false;
	std::size_t repetitions = 0;
	std::uint64_t sweep_seed = 1;
	unsigned jobs = 0;
	BudgetFlags sweep_budget;
	sweep->add_option("config", sweep_config, "Sweep config JSON file")->required();
	sweep->add_option("--methods", sweep_methods, "Comma-separated methods");
	sweep->add_flag("--oracle", sweep_oracle, "Also run the exact oracle");
	auto* reps_opt = sweep->add_option("--repetitions", repetitions, "Seeds per (J, I, level); overrides the config");
	auto* seed_opt = sweep->add_option("--seed", sweep_seed, "First seed when --repetitions is given");
	sweep->add_option("--out", sweep_out, "Output directory for runs.csv and summary.csv");
	sweep->add_option("--jobs", jobs, "Worker threads (default: logical processors)");
	sweep_budget.attach(sweep);

	// plot
	auto* plot = app.add_subcommand("plot", "Render an SVG chart from a runs CSV");
	std::string plot_csv, plot_kind, plot_out;
	plot->add_option("csv", plot_csv, "runs CSV")->required();
	plot->add_option("--kind", plot_kind, "makespan-bars | relative-diff | helpers-curve")->required();
	plot->add_option("--out", plot_out, "Output SVG path")->required();

	// validate
	auto* validate = app.add_subcommand("validate", "Check an instance file and optionally a schedule for it");
	std::string val_instance, val_schedule;
	validate->add_option("instance", val_instance, "Instance JSON file")->required();
	validate->add_option("--schedule", val_schedule, "Schedule JSON file");

	// gen
	auto* gen = app.add_subcommand("gen", "Generate instance files");
	std::string gen_config, gen_out;
	int gen_level = 1;
	std::size_t gen_clients = 4, gen_helpers = 2, gen_count = 1;
	std::uint64_t gen_seed = 1;
	bool gen_unit = false;
	double gen_slack = -1;
	gen->add_option("--config", gen_config, "Generator config JSON (flags given explicitly override it)");
	auto* lvl_opt = gen->add_option("--level", gen_level, "Heterogeneity level 1..4");
	auto* j_opt = gen->add_option("--clients", gen_clients, "Number of clients");
	auto* i_opt = gen->add_option("--helpers", gen_helpers, "Number of helpers");
	auto* gseed_opt = gen->add_option("--seed", gen_seed, "Seed of the first instance");
	gen->add_flag("--unit-demand", gen_unit, "Force unit demands");
	gen->add_option("--capacity-slack", gen_slack, "Capacity slack (0: absolute profile capacities)");
	gen->add_option("--count", gen_count, "Number of instances (consecutive seeds)")->check(CLI::PositiveNumber);
	gen->add_option("--out", gen_out, "Output file (count 1) or directory; standard output if omitted");

	std::vector<std::string> reversed(args.rbegin(), args.rend());
	try {
		app.parse(reversed);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? kExitOk : kExitUsage;
	}

	try {
		if (run->parsed()) {
			const auto methods = parse_methods(run_methods, run_oracle);
			const InstanceFile file = load_instance(run_instance);
			if (!run_schedules.empty())
				fs::create_directories(run_schedules);
			std::vector<CsvRow> rows;
			bool all_ok = true;
			for (Method m : methods) {
				const RunReport r = run_method(m, file.instance, run_budget.get());
				all_ok = all_ok && r.status == RunStatus::Ok;
				rows.push_back(make_row(r, file.instance, file.meta));
				if (!r.note.empty() && r.status != RunStatus::Ok)
					err << to_string(m) << ": " << r.note << "\n";
				if (!run_schedules.empty() && r.schedule)
					save_schedule(fs::path(run_schedules) / (file.meta.id + "." + to_string(m) + ".json"),
					              *r.assignment, *r.schedule, to_string(m));
			}
			if (run_out.empty()) {
				write_rows(out, rows);
			} else {
				std::ostringstream os;
				write_rows(os, rows);
				write_file(run_out, os.str());
			}
			return all_ok ? kExitOk : kExitFailure;
		}

		if (sweep->parsed()) {
			const fs::path cfg_path = sweep_config;
			SweepConfig cfg = parse_sweep_config(read_file(cfg_path), cfg_path.parent_path());
			if (reps_opt->count() > 0)
				set_seed_range(cfg, seed_opt->count() > 0 ? sweep_seed : (cfg.seeds.empty() ? 1 : cfg.seeds[0]),
				               repetitions);
			else if (seed_opt->count() > 0)
				set_seed_range(cfg, sweep_seed, cfg.seeds.size());
			SweepOptions opts{parse_methods(sweep_methods, sweep_oracle), sweep_budget.get(), jobs};
			const auto rows = run_sweep(cfg, opts);
			std::ostringstream runs, summary;
			write_rows(runs, rows);
			write_summary(summary, summarize(rows));
			write_file(fs::path(sweep_out) / "runs.csv", runs.str());
			write_file(fs::path(sweep_out) / "summary.csv", summary.str());
			out << summary.str();
			return kExitOk;
		}

		if (plot->parsed()) {
			const auto kind = parse_plot_kind(plot_kind);
			if (!kind)
				throw UsageError("unknown plot kind '" + plot_kind + "'");
			std::ifstream in(plot_csv);
			if (!in)
				throw ParseError(plot_csv, "cannot open file");
			const std::string svg = render_plot(*kind, read_rows(in));
			write_file(plot_out, svg);
			return kExitOk;
		}

		if (validate->parsed()) {
			const InstanceFile file = load_instance(val_instance);
			if (auto problems = file.instance.problems(); !problems.empty()) {
				for (const auto& p : problems)
					out << p << "\n";
				return kExitFailure;
			}
			if (val_schedule.empty()) {
				out << "instance ok: " << file.instance.num_clients << " clients, " << file.instance.num_helpers
				    << " helpers\n";
				return kExitOk;
			}
			const ScheduleFile sched = load_schedule(val_schedule);
			const Verdict v = validate_schedule(file.instance, sched.assignment, sched.schedule);
			out << v.summary() << "\n";
			return v.ok() ? kExitOk : kExitFailure;
		}

		if (gen->parsed()) {
			GeneratorConfig cfg = GeneratorConfig::defaults();
			if (!gen_config.empty()) {
				const fs::path p = gen_config;
				cfg = parse_generator_config(read_file(p), p.parent_path());
			}
			if (lvl_opt->count() > 0 || gen_config.empty())
				cfg.level = gen_level;
			if (j_opt->count() > 0 || gen_config.empty())
				cfg.num_clients = gen_clients;
			if (i_opt->count() > 0 || gen_config.empty())
				cfg.num_helpers = gen_helpers;
			if (gseed_opt->count() > 0 || gen_config.empty())
				cfg.seed = gen_seed;
			if (gen_unit)
				cfg.unit_demand = true;
			if (gen_slack >= 0)
				cfg.capacity_slack = gen_slack;
			if (!gen_out.empty() && gen_count > 1)
				fs::create_directories(gen_out);
			for (std::size_t k = 0; k < gen_count; ++k) {
				GeneratorConfig c = cfg;
				c.seed = cfg.seed + k;
				const Instance inst = generate(c);
				const InstanceMeta meta{sweep_instance_id(c.level, c.num_clients, c.num_helpers, c.seed), c.level,
				                        c.seed};
				if (gen_out.empty())
					out << format_instance(inst, meta) << "\n";
				else if (gen_count == 1)
					save_instance(gen_out, inst, meta);
				else
					save_instance(fs::path(gen_out) / (meta.id + ".json"), inst, meta);
			}
			return kExitOk;
		}
	} catch (const UsageError& e) {
		err << "error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const ParseError& e) {
		err << "parse error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const CsvError& e) {
		err << "csv error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const PlotError& e) {
		err << "plot error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const InvalidInput& e) {
		err << "infeasible: " << e.what() << "\n";
		return kExitFailure;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << "\n";
		return kExitFailure;
	}
	return kExitUsage;
}

}  // namespace slsched::harness
