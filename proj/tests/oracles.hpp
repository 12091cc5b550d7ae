#pragma once

// Brute-force reference implementations used only by the tests. They work on
// plain mask vectors and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Mask = std::uint64_t;

inline Mask full_mask(int n) { return (Mask{1} << n) - 1; }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::vector<Mask> sorted_unique(std::vector<Mask> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Every mask lying below some member, by a 2^n scan.
inline std::vector<Mask> downset_closure(const std::vector<Mask>& members, int n)
{
    std::vector<Mask> out;
    for (Mask m = 0; m <= full_mask(n); ++m)
        if (std::any_of(members.begin(), members.end(), [m](Mask x) { return subset(m, x); }))
            out.push_back(m);
    return out;
}

// Quadratic containment scan.
inline std::vector<Mask> maximal(const std::vector<Mask>& members)
{
    std::vector<Mask> out;
    for (Mask a : members) {
        bool top = true;
        for (Mask b : members)
            if (a != b && subset(a, b))
                top = false;
        if (top)
            out.push_back(a);
    }
    return sorted_unique(out);
}

// Calls visit(union) for every multiset of size exactly j drawn from pool.
inline void for_each_multiset_union(const std::vector<Mask>& pool, int j, const std::function<void(Mask)>& visit)
{
    std::function<void(std::size_t, int, Mask)> go = [&](std::size_t from, int left, Mask acc) {
        if (left == 0) {
            visit(acc);
            return;
        }
        for (std::size_t i = from; i < pool.size(); ++i)
            go(i, left - 1, acc | pool[i]);
    };
    go(0, j, 0);
}

constexpr std::uint8_t none = 255;

// Exact-union minimum cover sizes by multiset enumeration over all members.
inline std::vector<std::uint8_t> min_cover_exact(const std::vector<Mask>& members, int n, int limit)
{
    std::vector<std::uint8_t> best(std::size_t{1} << n, none);
    best[0] = 0;
    for (int j = 1; j <= limit; ++j)
        for_each_multiset_union(members, j, [&](Mask u) {
            if (best[u] == none)
                best[u] = static_cast<std::uint8_t>(j);
        });
    return best;
}

// Down-set version: tuples of maximal elements only; a mask is a union of j
// members iff it lies below a union of j maximal elements.
inline std::vector<std::uint8_t> min_cover_downset(const std::vector<Mask>& members, int n, int limit)
{
    const std::vector<Mask> tops = maximal(members);
    std::vector<std::uint8_t> at(std::size_t{1} << n, none);
    for (int j = limit; j >= 1; --j)
        for_each_multiset_union(tops, j, [&](Mask u) { at[u] = static_cast<std::uint8_t>(j); });
    std::vector<std::uint8_t> best(std::size_t{1} << n, none);
    best[0] = 0;
    for (Mask m = 1; m <= full_mask(n); ++m)
        for (Mask u = 0; u <= full_mask(n); ++u)
            if (subset(m, u))
                best[m] = std::min(best[m], at[u]);
    return best;
}

inline bool can_cover(const std::vector<Mask>& members, Mask target, int j)
{
    if (target == 0)
        return true;
    bool found = false;
    for (int size = 1; size <= j && !found; ++size)
        for_each_multiset_union(members, size, [&](Mask u) { found = found || subset(target, u); });
    return found;
}

// Direct-world definition: every k-tuple (positions independent, repetition
// allowed) has a common element.
inline bool kwise_direct(const std::vector<Mask>& family, int k)
{
    if (family.empty())
        return true;
    std::vector<std::size_t> pick(k, 0);
    while (true) {
        Mask common = ~Mask{0};
        for (std::size_t i : pick)
            common &= family[i];
        if (common == 0)
            return false;
        int pos = 0;
        while (pos < k && ++pick[pos] == family.size())
            pick[pos++] = 0;
        if (pos == k)
            return true;
    }
}

// Direct-world definition of maximality: k-wise and every proper extension by
// one set fails.
inline bool maximal_direct(const std::vector<Mask>& family, int k, int n)
{
    if (!kwise_direct(family, k))
        return false;
    for (Mask x = 0; x <= full_mask(n); ++x) {
        if (std::find(family.begin(), family.end(), x) != family.end())
            continue;
        std::vector<Mask> bigger = family;
        bigger.push_back(x);
        if (kwise_direct(bigger, k))
            return false;
    }
    return true;
}

inline std::vector<Mask> complement(const std::vector<Mask>& family, int n)
{
    std::vector<Mask> out;
    for (Mask m : family)
        out.push_back(full_mask(n) & ~m);
    return sorted_unique(out);
}

// All down-sets of P([n]) by filtering every indicator vector for monotonicity.
inline std::vector<std::vector<Mask>> downsets_by_filter(int n)
{
    const std::size_t masks = std::size_t{1} << n;
    std::vector<std::vector<Mask>> out;
    for (std::uint64_t indicator = 0; indicator < (std::uint64_t{1} << masks); ++indicator) {
        bool monotone = true;
        for (Mask m = 0; m < masks && monotone; ++m)
            if ((indicator >> m) & 1)
                for (int b = 0; b < n; ++b)
                    if ((m >> b) & 1 && !((indicator >> (m & ~(Mask{1} << b))) & 1))
                        monotone = false;
        if (!monotone)
            continue;
        std::vector<Mask> members;
        for (Mask m = 0; m < masks; ++m)
            if ((indicator >> m) & 1)
                members.push_back(m);
        out.push_back(members);
    }
    return out;
}

inline std::vector<Mask> random_family(std::mt19937_64& rng, int n, int count)
{
    std::vector<Mask> out;
    for (int i = 0; i < count; ++i)
        out.push_back(rng() & full_mask(n));
    return sorted_unique(out);
}

inline std::vector<Mask> random_downset(std::mt19937_64& rng, int n, int generators)
{
    return downset_closure(random_family(rng, n, generators), n);
}

} // namespace oracle
