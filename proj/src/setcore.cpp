#include "kwise/setcore.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <unordered_set>

namespace kwise {

Universe::Universe(int n) : n_(n)
{
    if (n < 1 || n > max_universe)
        throw std::invalid_argument("universe size must be in 1.." + std::to_string(max_universe) +
                                    ", got " + std::to_string(n));
    full_ = (Mask{1} << n) - 1;
}

void Universe::require_table(int limit) const
{
    if (n_ > limit)
        throw UniverseTooLarge("n = " + std::to_string(n_) + " exceeds the 2^n table limit " +
                               std::to_string(limit));
}

std::vector<int> elements_of(Mask m)
{
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m) + 1);
        m &= m - 1;
    }
    return out;
}

Mask mask_of(std::span<const int> elements)
{
    Mask m = 0;
    for (int e : elements) {
        if (e < 1 || e > max_universe)
            throw std::invalid_argument("element out of range: " + std::to_string(e));
        m |= element_bit(e);
    }
    return m;
}

Family::Family(Universe universe, std::vector<Mask> members)
    : universe_(universe), members_(std::move(members))
{
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && !universe_.valid(members_.back()))
        throw std::invalid_argument("family member outside universe of size " +
                                    std::to_string(universe_.size()));
    if (universe_.size() <= max_table_universe) {
        bitmap_.assign(std::max<std::size_t>(1, universe_.mask_count() / 64), 0);
        for (Mask m : members_)
            bitmap_[m >> 6] |= std::uint64_t{1} << (m & 63);
    }
}

bool Family::contains(Mask m) const noexcept
{
    if (!universe_.valid(m))
        return false;
    if (!bitmap_.empty())
        return (bitmap_[m >> 6] >> (m & 63)) & 1;
    return std::binary_search(members_.begin(), members_.end(), m);
}

Family complement_family(const Family& f)
{
    std::vector<Mask> out;
    out.reserve(f.size());
    const Mask full = f.universe().full();
    for (Mask m : f)
        out.push_back(full & ~m);
    return Family(f.universe(), std::move(out));
}

bool is_downset(const Family& f)
{
    // Closure under removing one element at a time gives closure under subsets.
    for (Mask m : f)
        for (Mask rest = m; rest; rest &= rest - 1)
            if (!f.contains(m & ~(rest & -rest)))
                return false;
    return true;
}

Family downset_closure(const Family& f)
{
    const Universe& u = f.universe();
    std::vector<Mask> out;
    if (u.size() <= max_table_universe) {
        std::vector<std::uint8_t> mark(u.mask_count(), 0);
        for (Mask m : f)
            mark[m] = 1;
        for (int b = 0; b < u.size(); ++b) {
            const Mask bit = Mask{1} << b;
            for (Mask m = 0; m < mark.size(); ++m)
                if (!(m & bit))
                    mark[m] |= mark[m | bit];
        }
        for (Mask m = 0; m < mark.size(); ++m)
            if (mark[m])
                out.push_back(m);
    }
    else {
        std::unordered_set<Mask> seen(f.begin(), f.end());
        std::vector<Mask> stack(f.begin(), f.end());
        while (!stack.empty()) {
            Mask m = stack.back();
            stack.pop_back();
            for (Mask rest = m; rest; rest &= rest - 1) {
                Mask sub = m & ~(rest & -rest);
                if (seen.insert(sub).second)
                    stack.push_back(sub);
            }
        }
        out.assign(seen.begin(), seen.end());
    }
    return Family(u, std::move(out));
}

namespace {

    std::vector<Mask> tops_by_popcount(const Family& f)
    {
        std::vector<Mask> order(f.begin(), f.end());
        std::stable_sort(order.begin(), order.end(),
                         [](Mask a, Mask b) { return popcount(a) > popcount(b); });
        std::vector<Mask> tops;
        for (Mask m : order)
            if (std::none_of(tops.begin(), tops.end(), [m](Mask t) { return t != m && is_subset(m, t); }))
                tops.push_back(m);
        return tops;
    }

    std::vector<Mask> tops_by_transform(const Family& f)
    {
        const Universe& u = f.universe();
        // above[m]: some member contains m
        std::vector<std::uint8_t> above(u.mask_count(), 0);
        for (Mask m : f)
            above[m] = 1;
        for (int b = 0; b < u.size(); ++b) {
            const Mask bit = Mask{1} << b;
            for (Mask m = 0; m < above.size(); ++m)
                if (!(m & bit))
                    above[m] |= above[m | bit];
        }
        std::vector<Mask> tops;
        for (Mask m : f) {
            bool top = true;
            for (Mask missing = u.full() & ~m; missing && top; missing &= missing - 1)
                top = !above[m | (missing & -missing)];
            if (top)
                tops.push_back(m);
        }
        return tops;
    }

} // namespace

Family maximal_elements(const Family& f)
{
    const Universe& u = f.universe();
    const double pairwise = static_cast<double>(f.size()) * static_cast<double>(f.size());
    if (u.size() <= max_table_universe && pairwise > static_cast<double>(u.mask_count()) * u.size())
        return Family(u, tops_by_transform(f));
    return Family(u, tops_by_popcount(f));
}

Family make_star(Universe u)
{
    std::vector<Mask> out;
    const Mask rest = u.full() & ~Mask{1};
    // enumerate submasks of rest
    Mask s = rest;
    while (true) {
        out.push_back(s | 1);
        if (s == 0)
            break;
        s = (s - 1) & rest;
    }
    return Family(u, std::move(out));
}

Family make_cube(Universe u, Mask block)
{
    if (!u.valid(block))
        throw std::invalid_argument("cube block outside universe");
    std::vector<Mask> out;
    Mask s = block;
    while (true) {
        out.push_back(s);
        if (s == 0)
            break;
        s = (s - 1) & block;
    }
    return Family(u, std::move(out));
}

namespace {

    constexpr std::uint64_t prime_a = (std::uint64_t{1} << 61) - 1;
    constexpr std::uint64_t prime_b = (std::uint64_t{1} << 62) - 57;

    std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
    {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }

    std::uint64_t pow_mod(std::uint64_t base, int e, std::uint64_t p)
    {
        std::uint64_t r = 1;
        base %= p;
        while (e) {
            if (e & 1)
                r = mul_mod(r, base, p);
            base = mul_mod(base, base, p);
            e >>= 1;
        }
        return r;
    }

    template <typename T, typename Sub>
    void moebius(std::vector<T>& w, int n, Sub sub)
    {
        const std::size_t size = w.size();
        for (int b = 0; b < n; ++b) {
            const std::size_t step = std::size_t{1} << b;
            for (std::size_t base = 0; base < size; base += 2 * step)
                for (std::size_t m = base + step; m < base + 2 * step; ++m)
                    w[m] = sub(w[m], w[m - step]);
        }
    }

} // namespace

CoverTable::CoverTable(const Family& f, int limit) : universe_(f.universe()), limit_(limit)
{
    universe_.require_table();
    if (f.empty())
        throw std::invalid_argument("cover table needs a nonempty family");
    if (limit < 1 || limit > max_cover_limit)
        throw std::invalid_argument("cover limit must be in 1.." + std::to_string(max_cover_limit));

    const int n = universe_.size();
    const std::size_t size = universe_.mask_count();

    std::vector<std::uint32_t> zeta(size, 0);
    for (Mask m : f)
        zeta[m] = 1;
    for (int b = 0; b < n; ++b) {
        const std::size_t step = std::size_t{1} << b;
        for (std::size_t base = 0; base < size; base += 2 * step)
            for (std::size_t m = base + step; m < base + 2 * step; ++m)
                zeta[m] += zeta[m - step];
    }

    exact_.assign(size, none);
    exact_[0] = 0;

    // |counts| <= |f|^j before inversion and <= 2^n |f|^j during it.
    const int member_bits = std::bit_width(f.size());
    exact_arithmetic_ = n <= 20 && n + limit * member_bits <= 125;

    if (exact_arithmetic_) {
        std::vector<__int128> w(size);
        for (int j = 1; j <= limit; ++j) {
            for (std::size_t m = 0; m < size; ++m) {
                __int128 v = 1;
                for (int r = 0; r < j; ++r)
                    v *= zeta[m];
                w[m] = v;
            }
            moebius(w, n, [](__int128 a, __int128 b) { return a - b; });
            for (std::size_t m = 0; m < size; ++m)
                if (exact_[m] == none && w[m] != 0)
                    exact_[m] = static_cast<std::uint8_t>(j);
        }
    }
    else {
        std::vector<std::uint64_t> w(size);
        std::vector<std::uint8_t> nonzero(size);
        for (int j = 1; j <= limit; ++j) {
            std::fill(nonzero.begin(), nonzero.end(), 0);
            for (std::uint64_t p : {prime_a, prime_b}) {
                for (std::size_t m = 0; m < size; ++m)
                    w[m] = pow_mod(zeta[m], j, p);
                moebius(w, n, [p](std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + p - b; });
                for (std::size_t m = 0; m < size; ++m)
                    nonzero[m] |= w[m] != 0;
            }
            for (std::size_t m = 0; m < size; ++m)
                if (exact_[m] == none && nonzero[m])
                    exact_[m] = static_cast<std::uint8_t>(j);
        }
    }

    upward_ = exact_;
    for (int b = 0; b < n; ++b) {
        const std::size_t step = std::size_t{1} << b;
        for (std::size_t base = 0; base < size; base += 2 * step)
            for (std::size_t m = base; m < base + step; ++m)
                upward_[m] = std::min(upward_[m], upward_[m + step]);
    }
}

CoverTable build_cover_table(const Family& f, int limit) { return CoverTable(f, limit); }

CoverSearch::CoverSearch(const Family& f) : universe_(f.universe())
{
    tops_ = maximal_elements(f).members();
    index_tops();
}

CoverSearch::CoverSearch(Universe u, std::span<const Mask> masks) : universe_(u)
{
    std::vector<Mask> sorted(masks.begin(), masks.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Mask m : sorted)
        if (!u.valid(m))
            throw std::invalid_argument("mask outside universe");
    tops_ = tops_by_popcount(Family(u, std::move(sorted)));
    std::sort(tops_.begin(), tops_.end());
    index_tops();
}

void CoverSearch::index_tops()
{
    by_element_.assign(static_cast<std::size_t>(universe_.size()), {});
    for (std::uint32_t i = 0; i < tops_.size(); ++i)
        for (int e : elements_of(tops_[i]))
            by_element_[e - 1].push_back(i);
}

std::optional<std::vector<Mask>> CoverSearch::find(Mask target, int j) const
{
    if (!universe_.valid(target))
        throw std::invalid_argument("cover target outside universe");
    std::vector<Mask> picked;
    if (search(target, std::max(j, 0), picked))
        return picked;
    return std::nullopt;
}

bool CoverSearch::search(Mask uncovered, int depth_left, std::vector<Mask>& picked) const
{
    if (!uncovered)
        return true;
    if (depth_left == 0)
        return false;

    const auto& with_lowest = by_element_[std::countr_zero(uncovered)];
    if (with_lowest.empty())
        return false;

    if (depth_left == 1) {
        for (std::uint32_t i : with_lowest)
            if (is_subset(uncovered, tops_[i])) {
                picked.push_back(tops_[i]);
                return true;
            }
        return false;
    }

    int best = 0;
    for (Mask t : tops_)
        best = std::max(best, popcount(t & uncovered));
    if (popcount(uncovered) > depth_left * best)
        return false;

    struct Candidate {
        int gain;
        Mask covered;
        std::uint32_t index;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(with_lowest.size());
    for (std::uint32_t i : with_lowest) {
        const Mask c = tops_[i] & uncovered;
        candidates.push_back({popcount(c), c, i});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.gain > b.gain; });

    std::vector<Mask> tried;
    for (const Candidate& c : candidates) {
        // a pick covering a subset of a failed pick's coverage fails too
        if (std::any_of(tried.begin(), tried.end(), [&](Mask t) { return is_subset(c.covered, t); }))
            continue;
        picked.push_back(tops_[c.index]);
        if (search(uncovered & ~c.covered, depth_left - 1, picked))
            return true;
        picked.pop_back();
        tried.push_back(c.covered);
    }
    return false;
}

Backend parse_backend(const std::string& name)
{
    if (name == "auto")
        return Backend::automatic;
    if (name == "dp")
        return Backend::dp;
    if (name == "tuples")
        return Backend::tuples;
    if (name == "both")
        return Backend::both;
    throw std::invalid_argument("unknown backend: " + name);
}

std::string to_string(Backend b)
{
    switch (b) {
    case Backend::automatic: return "auto";
    case Backend::dp: return "dp";
    case Backend::tuples: return "tuples";
    case Backend::both: return "both";
    }
    return "?";
}

bool can_cover(const Family& f, Mask target, int j, Backend backend)
{
    if (j < 0)
        throw std::invalid_argument("cover size must be nonnegative");
    if (target == 0)
        return true;
    if (f.empty() || j == 0)
        return false;

    const Universe& u = f.universe();
    const bool dp_possible = u.size() <= max_table_universe && j <= max_cover_limit;
    if (backend == Backend::automatic)
        backend = dp_possible && u.size() <= 12 ? Backend::dp : Backend::tuples;

    auto via_dp = [&] { return CoverTable(f, j).min_cover_superset(target) <= j; };
    auto via_tuples = [&] { return CoverSearch(f).find(target, j).has_value(); };

    switch (backend) {
    case Backend::dp:
        return via_dp();
    case Backend::tuples:
        return via_tuples();
    case Backend::both: {
        const bool a = via_dp();
        if (a != via_tuples())
            throw std::logic_error("cover backends disagree");
        return a;
    }
    case Backend::automatic:
        break;
    }
    return via_tuples();
}

} // namespace kwise
