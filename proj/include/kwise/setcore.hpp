#pragma once

// Bitmask sets over [n] = {1..n} and immutable set families.
//
// Element i lives in bit i-1. A family keeps its members strictly sorted by
// mask value; for n <= 24 it also materializes a 2^n membership bitmap.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kwise {

using Mask = std::uint64_t;

inline constexpr int max_universe = 62;
inline constexpr int max_table_universe = 24;
inline constexpr int max_cover_limit = 8;

/// Raised when an operation needs a 2^n table that is not affordable.
class UniverseTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The ground set [n].
class Universe {
public:
    explicit Universe(int n);

    int size() const noexcept { return n_; }
    Mask full() const noexcept { return full_; }
    bool valid(Mask m) const noexcept { return (m & ~full_) == 0; }

    /// 2^n, only meaningful for table-sized universes.
    std::size_t mask_count() const noexcept { return std::size_t{1} << n_; }

    /// Throws UniverseTooLarge unless n <= limit.
    void require_table(int limit = max_table_universe) const;

    friend bool operator==(const Universe&, const Universe&) = default;

private:
    int n_;
    Mask full_;
};

inline int popcount(Mask m) noexcept { return __builtin_popcountll(m); }
inline bool is_subset(Mask a, Mask b) noexcept { return (a & ~b) == 0; }
inline Mask element_bit(int element) noexcept { return Mask{1} << (element - 1); }

/// Elements of `m` in ascending order, 1-based.
std::vector<int> elements_of(Mask m);
Mask mask_of(std::span<const int> elements);

class Family {
public:
    /// Sorts and deduplicates; throws std::invalid_argument if a mask is
    /// outside the universe.
    Family(Universe universe, std::vector<Mask> members);
    explicit Family(Universe universe) : Family(universe, {}) {}

    const Universe& universe() const noexcept { return universe_; }
    const std::vector<Mask>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    bool contains(Mask m) const noexcept;

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    friend bool operator==(const Family& a, const Family& b)
    {
        return a.universe_ == b.universe_ && a.members_ == b.members_;
    }

private:
    Universe universe_;
    std::vector<Mask> members_;
    std::vector<std::uint64_t> bitmap_; // empty when n > max_table_universe
};

Family complement_family(const Family& f);
bool is_downset(const Family& f);
Family downset_closure(const Family& f);

/// Members not strictly contained in another member.
Family maximal_elements(const Family& f);

/// All 2^{n-1} subsets containing element 1.
Family make_star(Universe u);

/// P(block): every subset of `block`.
Family make_cube(Universe u, Mask block);

/// Per-mask minimum number of members whose union is exactly that mask.
///
/// Counts of ordered j-tuples with union inside each mask are the j-th powers
/// of the subset-sum (zeta) transform of the membership indicator; Moebius
/// inversion turns them into exact-union counts. The arithmetic is exact in
/// 128-bit integers when the magnitudes fit and otherwise runs modulo two
/// large primes, declaring zero only when both residues vanish.
class CoverTable {
public:
    static constexpr std::uint8_t none = 255;

    /// Pre: f nonempty, n <= 24, 1 <= limit <= 8.
    CoverTable(const Family& f, int limit);

    const Universe& universe() const noexcept { return universe_; }
    int limit() const noexcept { return limit_; }

    /// Least j <= limit with m a union of j members; `none` otherwise.
    /// The empty mask is the union of zero members and always maps to 0.
    std::uint8_t min_cover(Mask m) const { return exact_[m]; }

    /// Least j <= limit such that j members have a union containing m.
    std::uint8_t min_cover_superset(Mask m) const { return upward_[m]; }

    std::span<const std::uint8_t> entries() const noexcept { return exact_; }

    /// Whether the exact 128-bit route was used (false: two-prime route).
    bool exact_arithmetic() const noexcept { return exact_arithmetic_; }

private:
    Universe universe_;
    int limit_;
    bool exact_arithmetic_ = false;
    std::vector<std::uint8_t> exact_;
    std::vector<std::uint8_t> upward_;
};

CoverTable build_cover_table(const Family& f, int limit);

/// Branch-and-bound search for a few members covering a target.
///
/// Only maximal members are used: swapping a member for a superset member
/// never shrinks a union. At every node the search branches on the lowest
/// uncovered element, so each pick covers something new.
class CoverSearch {
public:
    explicit CoverSearch(const Family& f);
    /// From arbitrary masks of u; non-maximal ones are dropped.
    CoverSearch(Universe u, std::span<const Mask> masks);

    /// Some <= j members whose union contains target, or nullopt.
    std::optional<std::vector<Mask>> find(Mask target, int j) const;

    std::span<const Mask> tops() const noexcept { return tops_; }

private:
    void index_tops();
    bool search(Mask uncovered, int depth_left, std::vector<Mask>& picked) const;

    Universe universe_;
    std::vector<Mask> tops_;
    std::vector<std::vector<std::uint32_t>> by_element_;
};

enum class Backend { automatic, dp, tuples, both };

Backend parse_backend(const std::string& name);
std::string to_string(Backend b);

/// True iff some <= j members of f have union containing target.
bool can_cover(const Family& f, Mask target, int j, Backend backend = Backend::automatic);

} // namespace kwise
