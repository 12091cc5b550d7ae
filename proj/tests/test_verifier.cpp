#include "kwise/construction.hpp"
#include "kwise/search.hpp"
#include "kwise/verifier.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace kwise;

namespace {

Family fam(int n, std::vector<Mask> members) { return Family(Universe(n), std::move(members)); }

// Complement-world definition via multiset enumeration.
bool naive_kwise(const Family& g, int k) { return !oracle::can_cover(g.members(), g.universe().full(), k); }

std::optional<Mask> naive_first_gap(const Family& g, int k)
{
    const Mask full = g.universe().full();
    for (Mask x = 0; x <= full; ++x)
        if (!g.contains(x) && !oracle::can_cover(g.members(), full & ~x, k - 1))
            return x;
    return std::nullopt;
}

void check_against_naive(const Family& g, int k)
{
    const Verdict kw = check_kwise(g, k, {Backend::both, 1});
    REQUIRE(kw.ok == naive_kwise(g, k));
    if (!kw.ok)
        REQUIRE(verify_witness(kw, g, k));
    const Verdict sat = check_saturated(g, k, {Backend::both, 1});
    const auto gap = naive_first_gap(g, k);
    REQUIRE(sat.ok == !gap.has_value());
    if (gap) {
        REQUIRE(std::get<GapWitness>(sat.witness).candidate == *gap);
        REQUIRE(verify_witness(sat, g, k));
    }
}

} // namespace

TEST_CASE("check_kwise basics")
{
    const Family star_c = complement_family(make_star(Universe(8)));
    CHECK(check_kwise(star_c, 5).ok);

    for (int k : {2, 3, 7}) {
        const Family with_full = fam(5, {0, 3, 31});
        const Verdict v = check_kwise(with_full, k);
        REQUIRE_FALSE(v.ok);
        CHECK(std::get<CoverWitness>(v.witness).members == std::vector<Mask>{31});
        CHECK(verify_witness(v, with_full, k));
    }

    CHECK(check_kwise(build_family({4, 9}).f, 4, {Backend::both, 1}).ok);
    CHECK(check_kwise(Family(Universe(4)), 3).ok);
    CHECK_THROWS_AS(check_kwise(star_c, 1), std::invalid_argument);
}

TEST_CASE("check_saturated basics")
{
    for (int n : {3, 6, 9})
        for (int k : {2, 3, 5})
            CHECK(check_saturated(complement_family(make_star(Universe(n))), k).ok);

    CHECK(check_saturated(build_family({3, 8}).f, 3, {Backend::both, 1}).ok);

    // empty family: the empty set is addable
    const Verdict empty = check_saturated(Family(Universe(3)), 3);
    REQUIRE_FALSE(empty.ok);
    CHECK(std::get<GapWitness>(empty.witness).candidate == 0);

    CHECK_THROWS_AS(check_saturated(fam(25, {0}), 3), UniverseTooLarge);
}

TEST_CASE("deleting a maximal member of the construction: verdict matches a naive recheck")
{
    const auto built = build_family({4, 9});
    for (Mask top : maximal_elements(built.f)) {
        std::vector<Mask> rest;
        for (Mask m : built.f)
            if (m != top)
                rest.push_back(m);
        const Family g = fam(9, rest);
        CAPTURE(top);
        check_against_naive(g, 4);
    }
}

TEST_CASE("is_maximal_kwise")
{
    CHECK(is_maximal_kwise(make_star(Universe(10)), 4, World::direct).ok);

    for (int k = 3; k <= 5; ++k) {
        const auto built = build_family({k, 2 * (k - 1)});
        const Verdict v = is_maximal_kwise(built.fbar, k, World::direct, {Backend::both, 1});
        CHECK(v.ok);
        CHECK(v.complement_downset == true);
    }

    const Family power = make_cube(Universe(4), 15);
    const Verdict v = is_maximal_kwise(power, 2, World::direct);
    REQUIRE_FALSE(v.ok);
    CHECK(v.not_kwise());
    CHECK(verify_witness(v, complement_family(power), 2));

    CHECK_THROWS_AS(is_maximal_kwise(fam(25, {1}), 3, World::direct), UniverseTooLarge);
}

TEST_CASE("verify_witness")
{
    const auto built = build_family({4, 9});
    const Family& g = built.f;
    const Mask full = Universe(9).full();

    Verdict cover;
    cover.ok = false;
    cover.witness = CoverWitness{{0b000000111, 0b111111000}};
    CHECK(verify_witness(cover, fam(9, {0b000000111, 0b111111000}), 2));
    // corrupt one bit
    cover.witness = CoverWitness{{0b000000011, 0b111111000}};
    CHECK_FALSE(verify_witness(cover, fam(9, {0b000000011, 0b111111000}), 2));

    // completion for a non-member
    const Mask x = 0b100100100;
    REQUIRE_FALSE(g.contains(x));
    const auto completion = find_completion(g, x, 4);
    REQUIRE(completion);
    Verdict gap;
    gap.ok = false;
    gap.witness = GapWitness{x, *completion};
    CHECK(verify_witness(gap, g, 4));
    auto broken = *completion;
    broken.front() &= broken.front() - 1;
    gap.witness = GapWitness{x, broken};
    const bool still_covers = (x | [&] {
        Mask u = 0;
        for (Mask m : broken)
            u |= m;
        return u;
    }()) == full;
    CHECK(verify_witness(gap, g, 4) == (still_covers && g.contains(broken.front())));

    // a member can never be a gap
    gap.witness = GapWitness{0, {}};
    CHECK_FALSE(verify_witness(gap, g, 4));

    CHECK_THROWS_AS(verify_witness(Verdict{}, g, 4), std::invalid_argument);
}

TEST_CASE("every non-member of the construction has an explicit completion")
{
    for (auto [k, n] : {std::pair{3, 8}, std::pair{4, 9}, std::pair{5, 8}, std::pair{6, 10}}) {
        const auto built = build_family({k, n});
        const Mask full = Universe(n).full();
        for (Mask x = 0; x <= full; ++x) {
            if (built.f.contains(x))
                continue;
            const auto c = find_completion(built.f, x, k);
            REQUIRE(c);
            Mask u = x;
            for (Mask m : *c) {
                REQUIRE(built.f.contains(m));
                u |= m;
            }
            REQUIRE(u == full);
            REQUIRE(static_cast<int>(c->size()) <= k - 1);
        }
    }
}

TEST_CASE("soundness and backend agreement on random families")
{
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const int k = 2 + static_cast<int>(rng() % 3);
        auto members = oracle::random_family(rng, n, 1 + static_cast<int>(rng() % 10));
        if (trial % 2)
            members = oracle::downset_closure(members, n);
        const Family g = fam(n, members);
        CAPTURE(n);
        CAPTURE(k);
        check_against_naive(g, k);
        for (Backend b : {Backend::dp, Backend::tuples, Backend::automatic}) {
            const Verdict v = is_maximal_kwise(g, k, World::complement, {b, 1});
            const Verdict ref = is_maximal_kwise(g, k, World::complement, {Backend::both, 1});
            REQUIRE(v.ok == ref.ok);
            REQUIRE(v.witness.index() == ref.witness.index());
            if (!v.ok)
                REQUIRE(verify_witness(v, g, k));
        }
    }
}

TEST_CASE("agreement with the definition on every family over n <= 3")
{
    for (int n = 1; n <= 3; ++n) {
        const std::size_t masks = std::size_t{1} << n;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << masks); ++bits) {
            std::vector<Mask> direct;
            for (Mask m = 0; m < masks; ++m)
                if ((bits >> m) & 1)
                    direct.push_back(m);
            for (int k = 2; k <= 4; ++k) {
                const Verdict v = is_maximal_kwise(fam(n, direct), k, World::direct, {Backend::both, 1});
                REQUIRE(v.ok == oracle::maximal_direct(direct, k, n));
                REQUIRE((v.ok || v.not_saturated()) == oracle::kwise_direct(direct, k));
            }
        }
    }
}

TEST_CASE("direct and complement presentations give the same verdict")
{
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const int k = 2 + static_cast<int>(rng() % 3);
        Family f = fam(n, oracle::random_family(rng, n, 1 + static_cast<int>(rng() % 20)));
        if (trial % 3 == 0) // maximal families, produced independently of the verifier
            f = complement_family(greedy_saturate(Family(Universe(n)), k, rng()));
        const Verdict direct = is_maximal_kwise(f, k, World::direct);
        const Verdict comp = is_maximal_kwise(complement_family(f), k, World::complement);
        REQUIRE(direct.ok == comp.ok);
        REQUIRE(direct.witness.index() == comp.witness.index());
        if (trial % 3 == 0)
            CHECK(direct.ok);
    }
}

TEST_CASE("a cover for k is a cover for every larger k")
{
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 80; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 10);
        const Family g = fam(n, oracle::random_family(rng, n, 2 + static_cast<int>(rng() % 15)));
        bool failed = false;
        for (int k = 2; k <= 7; ++k) {
            const bool ok = check_kwise(g, k).ok;
            if (failed)
                REQUIRE_FALSE(ok);
            failed = failed || !ok;
        }
    }
}

TEST_CASE("parallel saturation scan reports the smallest failure")
{
    std::mt19937_64 rng(64);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 12;
        const Family g = fam(n, oracle::random_downset(rng, n, 3));
        const Verdict one = check_saturated(g, 3, {Backend::tuples, 1});
        const Verdict four = check_saturated(g, 3, {Backend::tuples, 4});
        REQUIRE(one.ok == four.ok);
        if (!one.ok)
            CHECK(std::get<GapWitness>(one.witness).candidate == std::get<GapWitness>(four.witness).candidate);
    }
    CHECK(check_saturated(build_family({4, 12}).f, 4, {Backend::tuples, 3}).ok);
}

TEST_CASE("world and backend names")
{
    CHECK(parse_world("direct") == World::direct);
    CHECK(to_string(World::complement) == "complement");
    CHECK_THROWS_AS(parse_world("sideways"), std::invalid_argument);
    CHECK(parse_backend("both") == Backend::both);
    CHECK_THROWS_AS(parse_backend("magic"), std::invalid_argument);
}
