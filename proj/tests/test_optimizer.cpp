#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "moead/optimizer.hpp"

using namespace moead;

namespace {

OptimizerConfig small_config(Algorithm algo, int pop, long long budget, std::uint64_t seed,
                             double delta = 0.9) {
    OptimizerConfig cfg;
    cfg.problem = make_problem("MOP1");
    cfg.algorithm = algo;
    cfg.population = pop;
    cfg.budget = budget;
    cfg.seed = seed;
    cfg.delta = delta;
    return cfg;
}

// Re-implementation of the generation loop in test code, driven by a copy of
// the optimizer's random stream; pins the documented draw order.
std::vector<std::vector<double>> mirror_generation(const Optimizer& opt) {
    const auto& cfg = opt.config();
    Rng rng = opt.rng_copy();
    auto weights = opt.subproblem_set().weights;
    auto neighbors = opt.subproblem_set().neighbors;
    auto utility = opt.subproblem_set().utility;
    auto decisions = opt.decisions();
    auto objectives = opt.objectives();
    auto assigned = opt.assigned();
    NormalizationContext norm = opt.norm_context();
    const int n = cfg.population;
    const int m = cfg.problem.m;
    const int t = std::min(cfg.neighborhood, n);
    long long neval = opt.neval();

    // active subproblems
    std::vector<int> active;
    std::vector<char> taken(n, 0);
    for (int axis = 0; axis < m; ++axis) {
        int best = 0;
        for (int p = 1; p < n; ++p)
            if (weights[p][axis] > weights[best][axis]) best = p;
        if (!taken[best]) {
            taken[best] = 1;
            active.push_back(best);
        }
    }
    std::size_t target = std::max<std::size_t>(active.size(), n / 5);
    std::vector<int> candidates;
    for (int p = 0; p < n; ++p)
        if (!taken[p]) candidates.push_back(p);
    while (active.size() < target && !candidates.empty()) {
        std::size_t best_at = rng.uniform_index(candidates.size());
        for (int round = 1; round < 10; ++round) {
            std::size_t at = rng.uniform_index(candidates.size());
            if (utility[candidates[at]] > utility[candidates[best_at]]) best_at = at;
        }
        active.push_back(candidates[best_at]);
        candidates[best_at] = candidates.back();
        candidates.pop_back();
    }

    auto tch_of = [&](int x, int p) { return tch(objectives[x], weights[p], norm.ideal); };
    auto draw_distinct = [&](const std::vector<int>& pool, std::vector<int> avoid) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            int pick = pool[rng.uniform_index(pool.size())];
            if (std::find(avoid.begin(), avoid.end(), pick) == avoid.end()) return pick;
        }
        for (int pick : pool)
            if (std::find(avoid.begin(), avoid.end(), pick) == avoid.end()) return pick;
        return pool.front();
    };

    for (int i : active) {
        if (neval >= cfg.budget) break;
        double branch = rng.uniform();
        std::vector<int> pool;
        for (int p : neighbors[i])
            for (int x : assigned[p]) pool.push_back(x);
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        if (branch >= cfg.delta || pool.size() < static_cast<std::size_t>(t)) {
            pool.resize(objectives.size());
            for (std::size_t s = 0; s < pool.size(); ++s) pool[s] = static_cast<int>(s);
        }
        int base;
        if (!assigned[i].empty()) {
            base = assigned[i].front();
            for (int x : assigned[i])
                if (tch_of(x, i) < tch_of(base, i)) base = x;
        } else {
            base = pool[rng.uniform_index(pool.size())];
        }
        int r2 = draw_distinct(pool, {base});
        int r3 = draw_distinct(pool, {base, r2});
        auto child = de_rand_1(decisions[base], decisions[r2], decisions[r3], cfg.variation,
                               cfg.problem.bounds, rng);
        child = poly_mutation(child, cfg.variation, cfg.problem.bounds, rng);
        objectives.push_back(cfg.problem.evaluate(child));
        update_ideal(norm, objectives.back());
        decisions.push_back(std::move(child));
        ++neval;
    }

    auto normalized = normalize(objectives, norm);
    SelectionContext ctx{weights, std::move(normalized), objectives, t, m};
    Matching match = selection_aoostm(ctx, rng);
    std::vector<std::vector<double>> kept;
    for (int p = 0; p < n; ++p) kept.push_back(objectives[match.right_of(p)]);
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace

TEST_CASE("initialization") {
    SUBCASE("population is evaluated and randomly matched one-one") {
        Optimizer opt(small_config(Algorithm::aoostm, 5, 100, 3));
        CHECK(opt.decisions().size() == 5);
        CHECK(opt.objectives().size() == 5);
        CHECK(opt.neval() == 5);
        std::vector<char> used(5, 0);
        for (const auto& held : opt.assigned()) {
            REQUIRE(held.size() == 1);
            CHECK(!used[held.front()]);
            used[held.front()] = 1;
        }
        for (double u : opt.subproblem_set().utility) CHECK(u == 1.0);
    }

    SUBCASE("same seed gives identical states") {
        Optimizer a(small_config(Algorithm::aoostm, 8, 100, 11));
        Optimizer b(small_config(Algorithm::aoostm, 8, 100, 11));
        CHECK(a.decisions() == b.decisions());
        CHECK(a.objectives() == b.objectives());
        CHECK(a.assigned() == b.assigned());
        CHECK(a.norm_context().ideal == b.norm_context().ideal);
    }

    SUBCASE("budget below the population size is rejected") {
        CHECK_THROWS_AS(Optimizer(small_config(Algorithm::aoostm, 10, 9, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("active subproblem selection") {
    SUBCASE("uniform utilities still give floor(N/5) subproblems") {
        Optimizer opt(small_config(Algorithm::aoostm, 20, 1000, 5));
        auto active = opt.select_active_subproblems();
        CHECK(active.size() == 4);
        std::sort(active.begin(), active.end());
        CHECK(std::adjacent_find(active.begin(), active.end()) == active.end());
    }

    SUBCASE("the axis-extreme subproblems are always included") {
        Optimizer opt(small_config(Algorithm::aoostm, 25, 1000, 6));
        const auto& w = opt.subproblem_set().weights;
        int b0 = 0, b1 = 0;
        for (int p = 1; p < 25; ++p) {
            if (w[p][0] > w[b0][0]) b0 = p;
            if (w[p][1] > w[b1][1]) b1 = p;
        }
        auto active = opt.select_active_subproblems();
        CHECK(std::find(active.begin(), active.end(), b0) != active.end());
        CHECK(std::find(active.begin(), active.end(), b1) != active.end());
    }

    SUBCASE("a lone high-utility subproblem wins every tournament it enters") {
        Optimizer opt(small_config(Algorithm::aoostm, 30, 1000, 7));
        auto& utilities = opt.subproblem_set().utility;
        std::fill(utilities.begin(), utilities.end(), 0.0);
        utilities[17] = 1.0;
        bool seen = false;
        for (int round = 0; round < 20 && !seen; ++round) {
            auto active = opt.select_active_subproblems();
            seen = std::find(active.begin(), active.end(), 17) != active.end();
        }
        CHECK(seen);  // 6 tournaments of 10 over 28 candidates, 20 rounds
    }

    SUBCASE("matches an independent tournament re-implementation") {
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            Optimizer opt(small_config(Algorithm::aoostm, 20, 1000, seed));
            Rng mirror = opt.rng_copy();
            const auto& w = opt.subproblem_set().weights;
            const auto& utility = opt.subproblem_set().utility;
            std::vector<int> expected;
            std::vector<char> taken(20, 0);
            for (int axis = 0; axis < 2; ++axis) {
                int best = 0;
                for (int p = 1; p < 20; ++p)
                    if (w[p][axis] > w[best][axis]) best = p;
                if (!taken[best]) {
                    taken[best] = 1;
                    expected.push_back(best);
                }
            }
            std::vector<int> candidates;
            for (int p = 0; p < 20; ++p)
                if (!taken[p]) candidates.push_back(p);
            while (expected.size() < 4 && !candidates.empty()) {
                std::size_t best_at = mirror.uniform_index(candidates.size());
                for (int round = 1; round < 10; ++round) {
                    std::size_t at = mirror.uniform_index(candidates.size());
                    if (utility[candidates[at]] > utility[candidates[best_at]]) best_at = at;
                }
                expected.push_back(candidates[best_at]);
                candidates[best_at] = candidates.back();
                candidates.pop_back();
            }
            CHECK(opt.select_active_subproblems() == expected);
        }
    }
}

TEST_CASE("one full generation equals the step-by-step trace oracle") {
    for (double delta : {0.9, 0.0, 1.0}) {
        for (std::uint64_t seed : {4ULL, 17ULL}) {
            Optimizer opt(small_config(Algorithm::aoostm, 10, 1000, seed, delta));
            auto expected = mirror_generation(opt);
            opt.evolve_generation();
            auto got = opt.objectives();
            std::sort(got.begin(), got.end());
            CHECK(got == expected);
            CHECK(opt.objectives().size() == 10);
        }
    }
}

TEST_CASE("utility update follows the piecewise rule") {
    Optimizer opt(small_config(Algorithm::aoostm, 6, 1000, 9));
    auto& sp = opt.subproblem_set();

    // measure current matched bests, then force known relative decreases
    std::vector<double> g_best(6);
    for (int i = 0; i < 6; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (int x : opt.assigned()[i])
            best = std::min(best, tch(opt.objectives()[x], sp.weights[i], opt.norm_context().ideal));
        g_best[i] = best;
    }

    sp.utility = {1.0, 1.0, 0.8, 0.6, 1.0, 0.5};
    sp.saved_best[0] = g_best[0] / (1.0 - 0.002);  // delta = 0.002 > 0.001
    sp.saved_best[1] = g_best[1] / (1.0 + 0.1);    // delta = -0.1
    sp.saved_best[2] = g_best[2];                  // delta = 0
    sp.saved_best[3] = g_best[3] / (1.0 - 0.0005); // delta = 0.0005, interpolated
    sp.saved_best[4] = 0.0;                        // guard: tiny g_old means delta = 0
    sp.saved_best[5] = g_best[5] / (1.0 - 0.0009);  // delta just inside the otherwise branch

    opt.update_utility();
    CHECK(sp.utility[0] == 1.0);
    CHECK(sp.utility[1] == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(sp.utility[2] == doctest::Approx(0.8 * 0.95).epsilon(1e-12));
    CHECK(sp.utility[3] == doctest::Approx(0.6 * (0.95 + 0.05 * 0.5)).epsilon(1e-9));
    CHECK(sp.utility[4] == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(sp.utility[5] == doctest::Approx(0.5 * (0.95 + 0.05 * 0.9)).epsilon(1e-9));
    CHECK(sp.saved_best[0] == doctest::Approx(g_best[0]));
}

TEST_CASE("empty many-one subproblems decay like the zero-improvement branch") {
    OptimizerConfig cfg = small_config(Algorithm::amostm, 8, 1000, 15);
    Optimizer opt(cfg);
    opt.evolve_generation();
    auto& sp = opt.subproblem_set();
    int empty = -1;
    for (int i = 0; i < 8; ++i)
        if (opt.assigned()[i].empty()) empty = i;
    if (empty >= 0) {
        std::fill(sp.utility.begin(), sp.utility.end(), 1.0);
        opt.update_utility();
        CHECK(sp.utility[empty] == doctest::Approx(0.95).epsilon(1e-12));
    }
}

TEST_CASE("run bookkeeping") {
    SUBCASE("budget equal to the population size means zero generations") {
        Optimizer opt(small_config(Algorithm::aoostm, 12, 12, 2));
        auto rec = opt.run();
        CHECK(rec.generations == 0);
        CHECK(rec.neval == 12);
        CHECK(rec.final_objectives.size() == 12);
    }

    SUBCASE("identical seeds give identical records") {
        auto rec1 = Optimizer(small_config(Algorithm::aoostm, 10, 400, 33)).run();
        auto rec2 = Optimizer(small_config(Algorithm::aoostm, 10, 400, 33)).run();
        CHECK(rec1.final_decisions == rec2.final_decisions);
        CHECK(rec1.final_objectives == rec2.final_objectives);
        CHECK(rec1.neval == rec2.neval);
        CHECK(rec1.generations == rec2.generations);
    }

    SUBCASE("evaluation accounting is exact and the budget is never exceeded") {
        Optimizer opt(small_config(Algorithm::aoostm, 10, 10 + 37, 5));
        auto rec = opt.run();
        CHECK(rec.neval == 47);  // stops exactly at the budget mid-generation
    }

    SUBCASE("checkpoints are strictly increasing and end at the final count") {
        auto cfg = small_config(Algorithm::aoostm, 10, 100, 8);
        cfg.checkpoint_every = 20;
        Optimizer opt(cfg);
        auto rec = opt.run([](const std::vector<std::vector<double>>& objs) {
            return MetricPair{static_cast<double>(objs.size()), 0.0};
        });
        REQUIRE(!rec.checkpoints.empty());
        for (std::size_t i = 1; i < rec.checkpoints.size(); ++i)
            CHECK(rec.checkpoints[i].neval > rec.checkpoints[i - 1].neval);
        CHECK(rec.checkpoints.back().neval == 100);
    }
}

TEST_CASE("population and matching invariants hold across generations") {
    for (Algorithm algo : {Algorithm::aoostm, Algorithm::amostm, Algorithm::stm, Algorithm::dra}) {
        Optimizer opt(small_config(algo, 10, 2000, 21));
        std::vector<double> prev_ideal = opt.norm_context().ideal;
        for (int gen = 0; gen < 65; ++gen) {
            opt.evolve_generation();
            CHECK(opt.objectives().size() == 10);

            std::size_t pairs = 0;
            std::vector<char> used(10, 0);
            for (const auto& held : opt.assigned()) {
                pairs += held.size();
                for (int x : held) {
                    if (algo != Algorithm::dra) {
                        CHECK(!used[x]);
                        used[x] = 1;
                    }
                }
            }
            if (algo == Algorithm::amostm)
                CHECK(pairs <= 10);
            else
                CHECK(pairs == 10);

            for (double u : opt.subproblem_set().utility) {
                CHECK(u >= 0.0);
                CHECK(u <= 1.0);
            }
            for (int j = 0; j < 2; ++j) CHECK(opt.norm_context().ideal[j] <= prev_ideal[j]);
            prev_ideal = opt.norm_context().ideal;
        }
    }
}
