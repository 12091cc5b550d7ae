#include "kwise/search.hpp"

#include "kwise/verifier.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

namespace kwise {

void for_each_downset(Universe u, const std::function<void(const Family&)>& visit)
{
    u.require_table(max_downset_universe);
    const Mask total = static_cast<Mask>(u.mask_count());
    std::vector<Mask> antichain;

    auto emit = [&] {
        std::vector<Mask> members;
        for (Mask m = 0; m < total; ++m)
            if (std::any_of(antichain.begin(), antichain.end(), [m](Mask a) { return is_subset(m, a); }))
                members.push_back(m);
        visit(Family(u, std::move(members)));
    };

    auto grow = [&](auto&& self, Mask from) -> void {
        emit();
        for (Mask m = from; m < total; ++m) {
            const bool comparable = std::any_of(antichain.begin(), antichain.end(), [m](Mask a) {
                return is_subset(m, a) || is_subset(a, m);
            });
            if (comparable)
                continue;
            antichain.push_back(m);
            self(self, m + 1);
            antichain.pop_back();
        }
    };
    grow(grow, 0);
}

std::vector<Family> enumerate_downsets(Universe u)
{
    std::vector<Family> out;
    for_each_downset(u, [&](const Family& f) { out.push_back(f); });
    return out;
}

void for_each_maximal_downset(int k, Universe u, const std::function<void(const Family&)>& visit)
{
    for_each_downset(u, [&](const Family& g) {
        if (check_kwise(g, k).ok && check_saturated(g, k, {Backend::automatic, 1}).ok)
            visit(g);
    });
}

OracleResult oracle_min_size(int k, Universe u)
{
    if (k < 2)
        throw std::invalid_argument("arity k must be >= 2");
    OracleResult result;
    result.k = k;
    result.n = u.size();
    for_each_maximal_downset(k, u, [&](const Family& g) {
        ++result.maximal_count;
        if (!result.sample_extremal || g.size() < result.min_size) {
            result.min_size = g.size();
            result.extremal_count = 0;
            result.sample_extremal = complement_family(g);
        }
        if (g.size() == result.min_size)
            ++result.extremal_count;
    });
    return result;
}

CandidateOrder parse_order(const std::string& name)
{
    if (name == "random")
        return CandidateOrder::random;
    if (name == "popcount")
        return CandidateOrder::popcount;
    throw std::invalid_argument("unknown candidate order: " + name);
}

namespace {

    // Unbiased draw in [0, bound), identical on every platform.
    std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound)
    {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (true) {
            const std::uint64_t r = rng();
            if (r >= threshold)
                return r % bound;
        }
    }

    std::vector<Mask> candidate_order(const Universe& u, std::uint64_t seed, CandidateOrder order)
    {
        std::vector<Mask> masks(u.mask_count());
        std::iota(masks.begin(), masks.end(), Mask{0});
        if (order == CandidateOrder::popcount) {
            std::stable_sort(masks.begin(), masks.end(),
                             [](Mask a, Mask b) { return popcount(a) > popcount(b); });
            return masks;
        }
        std::mt19937_64 rng(seed);
        for (std::size_t i = masks.size() - 1; i > 0; --i)
            std::swap(masks[i], masks[draw_below(rng, i + 1)]);
        return masks;
    }

} // namespace

Family greedy_saturate(const Family& g0, int k, std::uint64_t seed, CandidateOrder order)
{
    const Universe& u = g0.universe();
    u.require_table(20);
    if (!check_kwise(g0, k).ok)
        throw std::invalid_argument("greedy start family is not k-wise intersecting");

    const Mask full = u.full();
    std::vector<std::uint8_t> member(u.mask_count(), 0);
    for (Mask m : g0)
        member[m] = 1;
    std::vector<Mask> tops = maximal_elements(g0).members();
    CoverSearch search(u, tops);

    const std::vector<Mask> order_of_masks = candidate_order(u, seed, order);
    bool changed = true;
    while (changed) {
        changed = false;
        for (Mask m : order_of_masks) {
            if (member[m] || search.find(full & ~m, k - 1))
                continue;
            member[m] = 1;
            changed = true;
            if (std::none_of(tops.begin(), tops.end(), [m](Mask t) { return is_subset(m, t); })) {
                std::erase_if(tops, [m](Mask t) { return is_subset(t, m); });
                tops.push_back(m);
                search = CoverSearch(u, tops);
            }
        }
    }

    std::vector<Mask> members;
    for (Mask m = 0; m < member.size(); ++m)
        if (member[m])
            members.push_back(m);
    return Family(u, std::move(members));
}

CubeReport cube_distance(const Family& f, const BlockPartition& bp)
{
    if (!(bp.universe == f.universe()))
        throw std::invalid_argument("partition and family use different universes");
    if (!bp.valid())
        throw std::invalid_argument("blocks do not partition the universe");

    CubeReport report{bp, 0, 0};
    for (Mask b : bp.blocks)
        report.q_size += std::uint64_t{1} << popcount(b);
    report.q_size -= bp.blocks.size() - 1; // the empty set lies in every cube
    for (Mask m : f)
        if (std::none_of(bp.blocks.begin(), bp.blocks.end(), [m](Mask b) { return is_subset(m, b); }))
            ++report.distance;
    return report;
}

CubeReport minimize_cube_distance(const Family& f, int parts)
{
    const Universe& u = f.universe();
    u.require_table(8);
    const int n = u.size();
    if (parts < 1 || parts > n)
        throw std::invalid_argument("cannot split " + std::to_string(n) + " elements into " +
                                    std::to_string(parts) + " nonempty blocks");

    // restricted growth strings: label[i] <= 1 + max(label[0..i-1])
    std::optional<CubeReport> best;
    std::vector<int> label(n, 0);
    auto assign = [&](auto&& self, int i, int used) -> void {
        if (n - i < parts - used)
            return;
        if (i == n) {
            std::vector<Mask> blocks(parts, 0);
            for (int e = 0; e < n; ++e)
                blocks[label[e]] |= Mask{1} << e;
            CubeReport r = cube_distance(f, partition_from_blocks(u, std::move(blocks)));
            if (!best || r.distance < best->distance)
                best = std::move(r);
            return;
        }
        for (int b = 0; b <= std::min(used, parts - 1); ++b) {
            label[i] = b;
            self(self, i + 1, std::max(used, b + 1));
        }
    };
    assign(assign, 0, 0);
    return *best;
}

std::vector<SizeRow> size_table(const TableOptions& options)
{
    std::vector<SizeRow> rows;
    for (int k = options.k_min; k <= options.k_max; ++k)
        for (int n = options.n_min; n <= options.n_max; ++n) {
            SizeRow row{k, n, {}, {}, {}, {}};
            const ConstructionParams p{k, n};
            if (k >= 3 && n >= 2 * (k - 1) && n <= options.construction_max_n) {
                row.construction = build_family(p).f.size();
                row.formula = expected_size(p);
            }
            if (k >= 2 && n >= 1 && n <= max_downset_universe)
                row.oracle = oracle_min_size(k, Universe(n)).min_size;
            if (k >= 2 && n >= 1 && n <= options.greedy_max_n && options.runs > 0) {
                const Family empty(Universe{n});
                for (int r = 0; r < options.runs; ++r) {
                    const auto size = greedy_saturate(empty, k, options.seed + r).size();
                    row.greedy_min = std::min<std::uint64_t>(row.greedy_min.value_or(size), size);
                }
            }
            rows.push_back(row);
        }
    return rows;
}

void write_size_table(std::ostream& out, const std::vector<SizeRow>& rows)
{
    auto cell = [&](const std::optional<std::uint64_t>& v) {
        out << '\t';
        if (v)
            out << *v;
    };
    out << "k\tn\tconstruction\tformula\toracle\tgreedy_min\n";
    for (const SizeRow& r : rows) {
        out << r.k << '\t' << r.n;
        cell(r.construction);
        cell(r.formula);
        cell(r.oracle);
        cell(r.greedy_min);
        out << '\n';
    }
}

} // namespace kwise
