#include "kwise/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace kwise {

World parse_world(const std::string& name)
{
    if (name == "direct")
        return World::direct;
    if (name == "complement")
        return World::complement;
    throw std::invalid_argument("unknown world: " + name);
}

std::string to_string(World w) { return w == World::direct ? "direct" : "complement"; }

int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("KWISE_THREADS")) {
        const int value = std::atoi(env);
        if (value > 0)
            return value;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

    void check_arity(int k)
    {
        if (k < 2)
            throw std::invalid_argument("arity k must be >= 2, got " + std::to_string(k));
    }

    bool dp_available(const Family& g, int j)
    {
        return !g.empty() && g.universe().size() <= max_table_universe && j >= 1 && j <= max_cover_limit;
    }

    // DP costs n 2^n per cover size; the search is estimated as tops^j per query.
    Backend pick_backend(const Family& g, std::size_t tops, int j, double queries)
    {
        if (!dp_available(g, j))
            return Backend::tuples;
        const int n = g.universe().size();
        const double dp_cost = std::ldexp(1.0, n) * n * j;
        const double search_cost = queries * std::pow(static_cast<double>(std::max<std::size_t>(tops, 2)), j);
        return dp_cost < search_cost ? Backend::dp : Backend::tuples;
    }

    void require_dp(const Family& g, int j)
    {
        g.universe().require_table();
        if (j > max_cover_limit)
            throw std::invalid_argument("dp backend handles at most " + std::to_string(max_cover_limit) +
                                        " members per cover");
    }

} // namespace

Verdict check_kwise(const Family& g, int k, const CheckOptions& options)
{
    check_arity(k);
    const Mask full = g.universe().full();
    const CoverSearch search(g);

    Backend backend = options.backend;
    if (backend == Backend::automatic)
        backend = pick_backend(g, search.tops().size(), k, 1.0);
    if (backend == Backend::dp || backend == Backend::both)
        require_dp(g, k);

    std::optional<bool> dp_says;
    if (backend == Backend::dp || backend == Backend::both)
        dp_says = !g.empty() && CoverTable(g, k).min_cover_superset(full) <= k;

    std::optional<std::vector<Mask>> cover;
    if (backend != Backend::dp || *dp_says)
        cover = search.find(full, k);

    if (dp_says && *dp_says != cover.has_value())
        throw std::logic_error("cover backends disagree on k-wise check");

    Verdict v;
    if (cover) {
        v.ok = false;
        v.witness = CoverWitness{std::move(*cover)};
    }
    return v;
}

Verdict check_saturated(const Family& g, int k, const CheckOptions& options)
{
    check_arity(k);
    const Universe& u = g.universe();
    u.require_table();
    const Mask full = u.full();
    const int j = k - 1;

    const CoverSearch search(g);
    Backend backend = options.backend;
    if (backend == Backend::automatic)
        backend = pick_backend(g, search.tops().size(), j, static_cast<double>(u.mask_count() - g.size()));
    if ((backend == Backend::dp || backend == Backend::both) && !g.empty())
        require_dp(g, j);

    std::optional<CoverTable> table;
    if ((backend == Backend::dp || backend == Backend::both) && !g.empty())
        table.emplace(g, j);

    auto completable = [&](Mask x) {
        const Mask target = full & ~x;
        if (target == 0)
            return true;
        std::optional<bool> dp;
        if (backend == Backend::dp || backend == Backend::both)
            dp = table && table->min_cover_superset(target) <= j;
        if (backend == Backend::dp)
            return *dp;
        const bool found = search.find(target, j).has_value();
        if (dp && *dp != found)
            throw std::logic_error("cover backends disagree on saturation query");
        return found;
    };

    constexpr Mask no_failure = std::numeric_limits<Mask>::max();
    std::atomic<Mask> first_failure{no_failure};
    const Mask total = static_cast<Mask>(u.mask_count());

    auto scan = [&](Mask begin, Mask end) {
        for (Mask x = begin; x < end; ++x) {
            if (x >= first_failure.load(std::memory_order_relaxed))
                return;
            if (g.contains(x) || completable(x))
                continue;
            Mask seen = first_failure.load();
            while (x < seen && !first_failure.compare_exchange_weak(seen, x)) {
            }
            return;
        }
    };

    const int threads = static_cast<int>(std::min<Mask>(resolve_threads(options.threads), std::max<Mask>(1, total / 1024)));
    if (threads <= 1) {
        scan(0, total);
    }
    else {
        // interleaved chunks keep the low masks, which decide the witness, spread across workers
        constexpr Mask chunk = 1024;
        std::atomic<Mask> next_chunk{0};
        std::exception_ptr error;
        std::mutex error_lock;
        std::vector<std::thread> workers;
        for (int t = 0; t < threads; ++t)
            workers.emplace_back([&] {
                try {
                    while (true) {
                        const Mask begin = next_chunk.fetch_add(chunk);
                        if (begin >= total || begin >= first_failure.load())
                            return;
                        scan(begin, std::min(total, begin + chunk));
                    }
                }
                catch (...) {
                    std::lock_guard lock(error_lock);
                    if (!error)
                        error = std::current_exception();
                    first_failure.store(0);
                }
            });
        for (auto& w : workers)
            w.join();
        if (error)
            std::rethrow_exception(error);
    }

    Verdict v;
    if (const Mask x = first_failure.load(); x != no_failure) {
        v.ok = false;
        v.witness = GapWitness{x, {}};
    }
    return v;
}

Verdict is_maximal_kwise(const Family& f, int k, World world, const CheckOptions& options)
{
    check_arity(k);
    f.universe().require_table();
    const Family g = world == World::direct ? complement_family(f) : f;

    Verdict v = check_kwise(g, k, options);
    if (v.ok)
        v = check_saturated(g, k, options);
    v.complement_downset = is_downset(g);
    return v;
}

std::optional<std::vector<Mask>> find_completion(const Family& g, Mask x, int k)
{
    check_arity(k);
    return CoverSearch(g).find(g.universe().full() & ~x, k - 1);
}

namespace {

    bool all_members(const std::vector<Mask>& masks, const Family& g)
    {
        return std::all_of(masks.begin(), masks.end(), [&](Mask m) { return g.contains(m); });
    }

    Mask union_of(const std::vector<Mask>& masks)
    {
        Mask u = 0;
        for (Mask m : masks)
            u |= m;
        return u;
    }

    // Multisets of size <= j drawn from the members' traces on target.
    bool literal_cover_exists(const Family& g, Mask target, int j)
    {
        if (target == 0)
            return true;
        std::vector<Mask> traces;
        for (Mask m : g)
            if (m & target)
                traces.push_back(m & target);
        std::sort(traces.begin(), traces.end());
        traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
        std::vector<Mask> kept;
        for (Mask t : traces)
            if (std::none_of(traces.begin(), traces.end(), [t](Mask o) { return o != t && is_subset(t, o); }))
                kept.push_back(t);

        auto extend = [&](auto&& self, std::size_t from, int left, Mask acc) -> bool {
            if (acc == target)
                return true;
            if (left == 0)
                return false;
            for (std::size_t i = from; i < kept.size(); ++i)
                if (self(self, i, left - 1, acc | kept[i]))
                    return true;
            return false;
        };
        return extend(extend, 0, j, 0);
    }

} // namespace

bool verify_witness(const Verdict& v, const Family& g, int k)
{
    const Universe& u = g.universe();
    const Mask full = u.full();
    if (const auto* cover = std::get_if<CoverWitness>(&v.witness)) {
        return !cover->members.empty() && static_cast<int>(cover->members.size()) <= k &&
               all_members(cover->members, g) && union_of(cover->members) == full;
    }
    if (const auto* gap = std::get_if<GapWitness>(&v.witness)) {
        if (!u.valid(gap->candidate) || g.contains(gap->candidate))
            return false;
        if (!gap->completion.empty())
            return static_cast<int>(gap->completion.size()) <= k - 1 && all_members(gap->completion, g) &&
                   (gap->candidate | union_of(gap->completion)) == full;
        return !literal_cover_exists(g, full & ~gap->candidate, k - 1);
    }
    throw std::invalid_argument("verdict carries no witness");
}

} // namespace kwise
