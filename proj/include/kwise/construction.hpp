#pragma once

// The complement-world family F built from k-1 near-equal blocks and one
// special element per block, and its direct-world counterpart Fbar.

#include "kwise/setcore.hpp"

#include <optional>
#include <vector>

namespace kwise {

struct ConstructionParams {
    int k;
    int n;

    /// Throws std::invalid_argument unless k >= 3 and 2(k-1) <= n <= 62.
    void validate() const;
};

/// Blocks are contiguous runs of elements, larger blocks first; the special
/// element of each block is its smallest element. Block indices are 0-based
/// and cyclic: the predecessor of block 0 is block k-2.
struct BlockPartition {
    Universe universe;
    std::vector<Mask> blocks;
    std::vector<Mask> specials; // single-bit masks

    int count() const noexcept { return static_cast<int>(blocks.size()); }
    int previous(int i) const noexcept { return (i + count() - 1) % count(); }
    Mask all_specials() const noexcept;

    /// Checks disjointness, coverage and special membership.
    bool valid() const noexcept;
};

BlockPartition make_partition(const ConstructionParams& p);

/// Partition from explicit blocks; specials default to block minima.
BlockPartition partition_from_blocks(Universe u, std::vector<Mask> blocks);

/// Proper subsets of block i (including the empty set).
Family build_f1(const BlockPartition& bp, int i);

/// X | Y with X a subset of block i other than the block itself and the block
/// minus its special, and Y a subset of the specials of every block except
/// i and its predecessor.
Family build_f2(const BlockPartition& bp, int i);

struct ConstructedFamily {
    BlockPartition partition;
    Family f;    // complement world
    Family fbar; // direct world
};

ConstructedFamily build_family(const ConstructionParams& p);

/// Closed-form |F|, defined when (k-1) divides n and n >= 2(k-1).
std::optional<std::uint64_t> expected_size(const ConstructionParams& p);

} // namespace kwise
