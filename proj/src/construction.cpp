#include "kwise/construction.hpp"

#include <bit>
#include <string>

namespace kwise {

namespace {

    template <typename Visit>
    void for_each_submask(Mask of, Visit visit)
    {
        Mask s = of;
        while (true) {
            visit(s);
            if (s == 0)
                break;
            s = (s - 1) & of;
        }
    }

    void check_index(const BlockPartition& bp, int i)
    {
        if (i < 0 || i >= bp.count())
            throw std::out_of_range("block index " + std::to_string(i) + " outside 0.." +
                                    std::to_string(bp.count() - 1));
    }

} // namespace

void ConstructionParams::validate() const
{
    if (k < 3)
        throw std::invalid_argument("construction needs k >= 3, got k = " + std::to_string(k));
    if (n < 2 * (k - 1))
        throw std::invalid_argument("construction needs n >= 2(k-1) = " + std::to_string(2 * (k - 1)) +
                                    ", got n = " + std::to_string(n));
    if (n > max_universe)
        throw std::invalid_argument("n = " + std::to_string(n) + " exceeds " + std::to_string(max_universe));
}

Mask BlockPartition::all_specials() const noexcept
{
    Mask m = 0;
    for (Mask a : specials)
        m |= a;
    return m;
}

bool BlockPartition::valid() const noexcept
{
    if (blocks.size() != specials.size() || blocks.empty())
        return false;
    Mask seen = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i] == 0 || (blocks[i] & seen) || !universe.valid(blocks[i]))
            return false;
        if (popcount(specials[i]) != 1 || !is_subset(specials[i], blocks[i]))
            return false;
        seen |= blocks[i];
    }
    return seen == universe.full();
}

BlockPartition make_partition(const ConstructionParams& p)
{
    p.validate();
    const int parts = p.k - 1;
    const int base = p.n / parts;
    const int larger = p.n % parts;

    BlockPartition bp{Universe(p.n), {}, {}};
    int next = 0; // bit index of the next unassigned element
    for (int i = 0; i < parts; ++i) {
        const int size = base + (i < larger ? 1 : 0);
        bp.blocks.push_back(((Mask{1} << size) - 1) << next);
        bp.specials.push_back(Mask{1} << next);
        next += size;
    }
    return bp;
}

BlockPartition partition_from_blocks(Universe u, std::vector<Mask> blocks)
{
    BlockPartition bp{u, std::move(blocks), {}};
    for (Mask b : bp.blocks)
        bp.specials.push_back(b & -b);
    if (!bp.valid())
        throw std::invalid_argument("blocks do not partition the universe");
    return bp;
}

Family build_f1(const BlockPartition& bp, int i)
{
    check_index(bp, i);
    std::vector<Mask> out;
    for_each_submask(bp.blocks[i], [&](Mask x) {
        if (x != bp.blocks[i])
            out.push_back(x);
    });
    return Family(bp.universe, std::move(out));
}

Family build_f2(const BlockPartition& bp, int i)
{
    check_index(bp, i);
    const Mask block = bp.blocks[i];
    const Mask without_special = block & ~bp.specials[i];
    const Mask free_specials = bp.all_specials() & ~bp.specials[i] & ~bp.specials[bp.previous(i)];

    std::vector<Mask> out;
    for_each_submask(block, [&](Mask x) {
        if (x == block || x == without_special)
            return;
        for_each_submask(free_specials, [&](Mask y) { out.push_back(x | y); });
    });
    return Family(bp.universe, std::move(out));
}

ConstructedFamily build_family(const ConstructionParams& p)
{
    BlockPartition bp = make_partition(p);
    std::vector<Mask> all;
    for (int i = 0; i < bp.count(); ++i) {
        for (Mask m : build_f1(bp, i))
            all.push_back(m);
        for (Mask m : build_f2(bp, i))
            all.push_back(m);
    }
    Family f(bp.universe, std::move(all));
    Family fbar = complement_family(f);
    return {std::move(bp), std::move(f), std::move(fbar)};
}

std::optional<std::uint64_t> expected_size(const ConstructionParams& p)
{
    if (p.k < 3 || p.n < 2 * (p.k - 1) || p.n % (p.k - 1) != 0)
        return std::nullopt;
    const auto k = static_cast<std::uint64_t>(p.k);
    const int exponent = p.n / (p.k - 1) + p.k - 3;
    if (exponent + std::bit_width(k) >= 64)
        return std::nullopt;
    return (std::uint64_t{1} << exponent) * (k - 1) - ((std::uint64_t{1} << (k - 1)) - 1) * (k - 2);
}

} // namespace kwise
