#pragma once

// 2-approximation for min-max load assignment under per-helper
// cardinality caps (GAPcc): LP relaxation at a target makespan T, then
// slot-based rounding through a bipartite matching.
//
// Cardinality semantics: helper i accepts at most M_i clients; client
// memory demands are ignored here.

#include <optional>
#include <stdexcept>
#include <vector>

#include "slsched/model.hpp"

namespace slsched::gapcc {

/// Raised when the LP solver stops without a verdict (iteration cap).
class NumericalFailure : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/// x_ij in [0,1] for each helper i and client j (helper-major), with
/// sum_i x_ij = 1, sum_j x_ij <= M_i, sum_j p*_ij x_ij <= target, and
/// x_ij = 0 off the graph or where p*_ij > target.
struct FractionalAssignment {
	std::size_t num_clients = 0;
	std::size_t num_helpers = 0;
	std::vector<double> x;
	Time target = 0;

	double at(HelperId i, ClientId j) const { return x[i * num_clients + j]; }
	double& at(HelperId i, ClientId j) { return x[i * num_clients + j]; }

	static FractionalAssignment zeros(std::size_t clients, std::size_t helpers, Time target);
	/// The 0/1 matrix of an integral assignment.
	static FractionalAssignment from(const Instance& inst, const Assignment& a, Time target);
};

/// Invariant violations of fa against inst (tolerance 1e-6), empty when valid.
std::vector<std::string> check_fractional(const Instance& inst, const FractionalAssignment& fa);

/// Fractional assignment with every helper's load at most `target`, or
/// nullopt when none exists. Throws NumericalFailure when the LP solver
/// gives up.
std::optional<FractionalAssignment> lp_feasible(const Instance& inst, Time target);

/// Rounds fa to an integral assignment that respects the graph, gives
/// helper i at most min(M_i, ceil(sum_j x_ij)) clients, and keeps each
/// helper's load within target + max p*_ij of its own clients.
/// Throws InvalidInput when fa breaks its invariants.
Assignment round_assignment(const FractionalAssignment& fa, const Instance& inst);

struct Result {
	Assignment assignment;
	/// Least integer T with a feasible relaxation; a lower bound on the
	/// optimal max-load, and max-load(assignment) <= 2 * certified_target.
	Time certified_target = 0;
};

/// Binary search over T in [0, sum_j max_i p*_ij] for the least feasible
/// relaxation, then rounds it. nullopt when even the upper bound is
/// infeasible (no assignment respects the graph and the caps).
std::optional<Result> assign(const Instance& inst);

}  // namespace slsched::gapcc
