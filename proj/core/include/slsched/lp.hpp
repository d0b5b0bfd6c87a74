#pragma once

// Dense bounded-variable primal simplex. Sized for the assignment
// relaxations in gapcc (a few hundred variables at most); no sparse or
// revised machinery.

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace slsched::lp {

/// Feasibility and optimality tolerance.
inline constexpr double kTolerance = 1e-9;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
	std::vector<double> coeffs;
	Relation relation = Relation::LessEqual;
	double rhs = 0.0;
};

struct Bounds {
	double lower = 0.0;
	double upper = kInfinity;
};

/// minimize objective . x  subject to constraints and per-variable bounds.
/// Lower bounds must be finite; upper bounds may be kInfinity.
struct LinearProgram {
	std::size_t num_vars = 0;
	std::vector<double> objective;
	std::vector<Constraint> constraints;
	std::vector<Bounds> bounds;

	explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(n, 0.0), bounds(n) {}

	void add(std::vector<double> coeffs, Relation rel, double rhs) {
		constraints.push_back({std::move(coeffs), rel, rhs});
	}
};

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(Status s);

struct Solution {
	Status status = Status::Infeasible;
	std::vector<double> values;        // set iff Optimal
	std::optional<double> objective;   // set iff Optimal
	std::size_t pivots = 0;
};

/// Two-phase simplex with Bland's rule. Iteration cap is
/// 50 * (num_vars + num_constraints) pivots per phase. Returned values are
/// clamped into their bounds. Throws std::invalid_argument when the program
/// is malformed (vector lengths, lower > upper, non-finite lower bound).
Solution solve(const LinearProgram& program);

/// Largest absolute constraint or bound violation of x.
double max_violation(const LinearProgram& program, const std::vector<double>& x);

}  // namespace slsched::lp
