#pragma once

// Generators and exhaustive oracles that are independent of the block
// construction: down-set enumeration, exact minimum maximal family size at
// tiny n, seeded greedy saturation, and distance-to-cubes probes.

#include "kwise/construction.hpp"
#include "kwise/setcore.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace kwise {

inline constexpr int max_downset_universe = 5;

/// Calls visit once per down-set of P([n]), n <= 5. Down-sets are produced as
/// closures of antichains, which are grown by appending masks in increasing
/// order that are incomparable with every mask already chosen.
void for_each_downset(Universe u, const std::function<void(const Family&)>& visit);
std::vector<Family> enumerate_downsets(Universe u);

struct OracleResult {
    int k = 0;
    int n = 0;
    std::uint64_t min_size = 0;       // f_k(n)
    std::uint64_t extremal_count = 0; // families attaining min_size
    std::uint64_t maximal_count = 0;  // all maximal families seen
    std::optional<Family> sample_extremal; // direct world, first in enumeration order
};

/// Complement-world down-sets that are maximal k-wise intersecting.
void for_each_maximal_downset(int k, Universe u, const std::function<void(const Family&)>& visit);

OracleResult oracle_min_size(int k, Universe u);

enum class CandidateOrder { random, popcount };

CandidateOrder parse_order(const std::string& name);

/// Grows g0 (complement world, k-wise intersecting) by adding every candidate
/// mask that keeps it k-wise intersecting, pass after pass, until a full pass
/// adds nothing. Random order is a Fisher-Yates shuffle driven by a
/// mt19937_64 seeded with `seed`; popcount order is descending popcount then
/// ascending mask and ignores the seed. Requires n <= 20.
Family greedy_saturate(const Family& g0, int k, std::uint64_t seed,
                       CandidateOrder order = CandidateOrder::random);

struct CubeReport {
    BlockPartition partition;
    std::uint64_t q_size = 0;   // |P(X_1) u ... u P(X_m)|
    std::uint64_t distance = 0; // members outside every block's powerset
};

CubeReport cube_distance(const Family& f, const BlockPartition& bp);

/// Minimum cube distance over all partitions into `parts` nonempty blocks.
/// Requires n <= 8.
CubeReport minimize_cube_distance(const Family& f, int parts);

struct TableOptions {
    int k_min = 3;
    int k_max = 5;
    int n_min = 4;
    int n_max = 12;
    int runs = 5;
    std::uint64_t seed = 1;
    int greedy_max_n = 12;
    int construction_max_n = 24;
};

struct SizeRow {
    int k = 0;
    int n = 0;
    std::optional<std::uint64_t> construction;
    std::optional<std::uint64_t> formula;
    std::optional<std::uint64_t> oracle;
    std::optional<std::uint64_t> greedy_min;
};

std::vector<SizeRow> size_table(const TableOptions& options);
void write_size_table(std::ostream& out, const std::vector<SizeRow>& rows);

} // namespace kwise
