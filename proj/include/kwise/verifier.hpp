#pragma once

// Maximal k-wise intersecting checks with witnesses.
//
// Everything runs in the complement world: a direct-world family is k-wise
// intersecting iff no k members (repetition allowed) of its complement family
// have union [n], and it is maximal iff additionally every non-member X of the
// complement family can be completed to a cover of [n] by k-1 members.

#include "kwise/setcore.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kwise {

enum class World { direct, complement };

World parse_world(const std::string& name);
std::string to_string(World w);

/// At most k members whose union is [n].
struct CoverWitness {
    std::vector<Mask> members;
};

/// A non-member. With an empty completion it claims that no k-1 members
/// complete it to [n], so it can be added; otherwise the completion lists
/// members whose union with the candidate is [n].
struct GapWitness {
    Mask candidate = 0;
    std::vector<Mask> completion;
};

using Witness = std::variant<std::monostate, CoverWitness, GapWitness>;

struct Verdict {
    bool ok = true;
    Witness witness;
    /// Whether the complement-world family is a down-set (maximality forces
    /// it). Informational; filled in by is_maximal_kwise only.
    std::optional<bool> complement_downset;

    bool not_kwise() const noexcept { return std::holds_alternative<CoverWitness>(witness); }
    bool not_saturated() const noexcept { return std::holds_alternative<GapWitness>(witness); }
};

struct CheckOptions {
    Backend backend = Backend::automatic;
    /// Worker threads for saturation checks; 0 reads KWISE_THREADS (0 or
    /// unset there means hardware concurrency).
    int threads = 0;
};

int resolve_threads(int requested);

/// Ok iff no multiset of <= k members of g has union [n].
Verdict check_kwise(const Family& g, int k, const CheckOptions& options = {});

/// Ok iff every non-member X has <= k-1 members whose union with X is [n].
/// Non-members are scanned in ascending mask order; the first failure is the
/// witness. Requires n <= 24.
Verdict check_saturated(const Family& g, int k, const CheckOptions& options = {});

Verdict is_maximal_kwise(const Family& f, int k, World world, const CheckOptions& options = {});

/// Some <= k-1 members of g whose union with x is [n].
std::optional<std::vector<Mask>> find_completion(const Family& g, Mask x, int k);

/// Rechecks a witness against g (complement world) by plain mask arithmetic
/// and exhaustive multiset enumeration. Throws std::invalid_argument when the
/// verdict has no witness.
bool verify_witness(const Verdict& v, const Family& g, int k);

} // namespace kwise
