#pragma once

// Synthetic instance generator with four heterogeneity levels, plus the
// device profile files it draws from.
//
// Every duration is picked at a position q in [0,1] inside a profile range
// [lo, hi] as lo + round(q * (hi - lo)):
//   level 1  the first two client profiles, alternating by client index;
//            q = 0.5 everywhere (nominal values)
//   level 2  client profile drawn per client from all profiles; r, l, r'
//            placed by a sampled connectivity class; p, p' nominal
//   level 3  level 2 plus a per-client cut shift c that moves r, l, r'
//            by +c and p, p' by -c (clamped to [0,1])
//   level 4  every position drawn uniformly from [0,1]
// Helper-side times are p_ij = max(1, round(base_j / speed_i)).

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "slsched/model.hpp"

namespace slsched {

struct Range {
	Time lo = 1;
	Time hi = 1;

	bool operator==(const Range&) const = default;
};

struct ClientProfile {
	std::string name;
	Range release;   // T1
	Range t2_work;   // T2 on a speed-1 helper
	Range t3_delay;  // T3
	Range t4_work;   // T4 on a speed-1 helper
	Range t5_time;   // T5
	Range demand;

	bool operator==(const ClientProfile&) const = default;
};

struct HelperProfile {
	std::string name;
	double speed = 1.0;
	/// Absolute memory, used when capacity_slack is 0.
	Time capacity = 1;
	/// Relative memory share, used when capacity_slack is positive.
	double share = 1.0;

	bool operator==(const HelperProfile&) const = default;
};

struct ConnectivityClass {
	std::string name;
	double probability = 1.0;
	/// Position of r, l, r' inside their ranges.
	double position = 0.5;

	bool operator==(const ConnectivityClass&) const = default;
};

struct GeneratorConfig {
	int level = 1;
	std::size_t num_clients = 1;
	std::size_t num_helpers = 1;
	std::uint64_t seed = 0;

	std::vector<ClientProfile> client_profiles;
	std::vector<HelperProfile> helper_profiles;
	std::vector<ConnectivityClass> connectivity;

	/// Force d_j = 1 (the cardinality-constrained variant).
	bool unit_demand = false;
	/// M_i = ceil(share_i / sum(share) * slack * sum_j d_j); 0 selects the
	/// profiles' absolute capacities.
	double capacity_slack = 1.5;
	/// Largest level-3 cut shift.
	double cut_spread = 0.4;
	/// Probability of each client-helper edge; every client keeps at least one.
	double edge_density = 1.0;

	/// Default profiles and connectivity, all other fields at their defaults.
	static GeneratorConfig defaults();

	/// Throws InvalidInput describing the first problem found.
	void require_valid() const;
};

/// Built-in synthetic profiles (also shipped under data/profiles).
std::vector<ClientProfile> default_client_profiles();
std::vector<HelperProfile> default_helper_profiles();
std::vector<ConnectivityClass> default_connectivity();

/// Deterministic in config (including seed). Throws InvalidInput for an
/// invalid config or when total demand exceeds total capacity.
Instance generate(const GeneratorConfig& config);

/// Positions the generator would accept for p_ij: [lo, hi] of the profile's
/// work range mapped through helper i's speed.
Range helper_range(const Range& work, const HelperProfile& helper);

/// Reads <dir>/clients/*.json and <dir>/helpers/*.json (sorted by file
/// name) and <dir>/connectivity.json when present. Throws ParseError.
void load_profiles(const std::filesystem::path& dir, GeneratorConfig& config);

/// Parses a generator config document; profiles default to the built-ins
/// unless the document names a "profiles" directory (relative paths are
/// resolved against base_dir). Throws ParseError.
GeneratorConfig parse_generator_config(const std::string& text, const std::filesystem::path& base_dir = {});

/// Seeded integer in [lo, hi] by rejection sampling on raw 64-bit output,
/// so results do not depend on the standard library's distributions.
Time draw_int(std::mt19937_64& rng, Time lo, Time hi);
/// Seeded double in [0, 1) from the top 53 bits.
double draw_unit(std::mt19937_64& rng);

}  // namespace slsched
