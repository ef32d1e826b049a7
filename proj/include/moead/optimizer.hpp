#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "moead/decomposition.hpp"
#include "moead/matching.hpp"
#include "moead/metrics.hpp"
#include "moead/problems.hpp"
#include "moead/rng.hpp"
#include "moead/selection.hpp"
#include "moead/variation.hpp"

namespace moead {

enum class Algorithm { aoostm, amostm, stm, dra };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::aoostm: return "aoostm";
        case Algorithm::amostm: return "amostm";
        case Algorithm::stm: return "stm";
        default: return "dra";
    }
}

inline Algorithm parse_algorithm(const std::string& name) {
    if (name == "aoostm") return Algorithm::aoostm;
    if (name == "amostm") return Algorithm::amostm;
    if (name == "stm") return Algorithm::stm;
    if (name == "dra") return Algorithm::dra;
    throw std::invalid_argument("unknown algorithm '" + name +
                                "' (expected aoostm, amostm, stm or dra)");
}

struct OptimizerConfig {
    ProblemInstance problem;
    Algorithm algorithm = Algorithm::aoostm;
    int population = 100;
    long long budget = 300000;
    std::uint64_t seed = 1;
    int neighborhood = 20;
    double delta = 0.9;
    bool use_sbx = false;
    long long checkpoint_every = 0;  // 0: score the final population only
    // p_m < 0 selects the 1/n convention at construction
    VariationParams variation{1.0, 0.5, 1.0, 30.0, -1.0, 20.0};
};

struct Checkpoint {
    long long neval = 0;
    double igd_value = 0.0;
    double hv_value = 0.0;
};

struct RunRecord {
    std::string problem;
    int m = 0;
    std::string algorithm;
    int population = 0;
    long long budget = 0;
    std::uint64_t seed = 0;
    long long neval = 0;
    long long generations = 0;
    double wall_ms = 0.0;
    std::vector<Checkpoint> checkpoints;
    std::vector<std::vector<double>> final_decisions;
    std::vector<std::vector<double>> final_objectives;
};

using MetricFn = std::function<MetricPair(const std::vector<std::vector<double>>&)>;

/// Decomposition-based evolutionary optimizer with stable-matching
/// environmental selection and utility-driven resource allocation. One
/// instance owns one run; all randomness comes from the seed.
class Optimizer {
public:
    explicit Optimizer(OptimizerConfig config) : cfg_(std::move(config)), rng_(cfg_.seed) {
        const int n = cfg_.population;
        if (n < 1) throw std::invalid_argument("optimizer: population must be positive");
        if (cfg_.budget < n)
            throw std::invalid_argument("optimizer: budget below the initial population size");
        if (cfg_.variation.p_m < 0) cfg_.variation.p_m = 1.0 / cfg_.problem.n;
        t_ = std::min(cfg_.neighborhood, n);
        if (t_ < cfg_.problem.m)
            throw std::invalid_argument("optimizer: neighborhood smaller than objective count");

        subproblems_.weights = weights_for_population(cfg_.problem.m, n, rng_);
        subproblems_.neighbors = build_neighborhoods(subproblems_.weights, t_);
        subproblems_.utility.assign(n, 1.0);
        subproblems_.saved_best.assign(n, 0.0);
        norm_ctx_ = NormalizationContext(cfg_.problem.m);

        decisions_.reserve(n + n / 5 + 1);
        objectives_.reserve(n + n / 5 + 1);
        for (int i = 0; i < n; ++i) {
            std::vector<double> x(cfg_.problem.n);
            for (int j = 0; j < cfg_.problem.n; ++j)
                x[j] = rng_.uniform(cfg_.problem.bounds[j].first, cfg_.problem.bounds[j].second);
            objectives_.push_back(cfg_.problem.evaluate(x));
            update_ideal(norm_ctx_, objectives_.back());
            decisions_.push_back(std::move(x));
            ++neval_;
        }

        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        rng_.shuffle(perm);
        assigned_.resize(n);
        for (int i = 0; i < n; ++i) assigned_[i] = {perm[i]};
        for (int i = 0; i < n; ++i) subproblems_.saved_best[i] = matched_best_value(i);
    }

    /// Active subproblems for this generation: the per-axis boundary
    /// subproblems plus utility-tournament winners up to floor(N/5), winners
    /// removed from the candidate pool as they are drawn.
    std::vector<int> select_active_subproblems() {
        const int n = cfg_.population;
        const int m = cfg_.problem.m;
        std::vector<int> active;
        std::vector<char> taken(n, 0);
        for (int axis = 0; axis < m; ++axis) {
            int best = 0;
            for (int p = 1; p < n; ++p)
                if (subproblems_.weights[p][axis] > subproblems_.weights[best][axis]) best = p;
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
            std::size_t best_at = rng_.uniform_index(candidates.size());
            for (int round = 1; round < 10; ++round) {
                std::size_t at = rng_.uniform_index(candidates.size());
                if (subproblems_.utility[candidates[at]] > subproblems_.utility[candidates[best_at]])
                    best_at = at;
            }
            active.push_back(candidates[best_at]);
            candidates[best_at] = candidates.back();
            candidates.pop_back();
        }
        return active;
    }

    /// One generation: offspring for every active subproblem (mating pool
    /// from the neighborhood with probability delta, otherwise the whole
    /// pool), then environmental selection back to N solutions.
    /// Draw order per active subproblem: pool branch, base (many-one with an
    /// empty subproblem only), parents, operator draws.
    void evolve_generation() {
        auto active = select_active_subproblems();
        for (int i : active) {
            if (neval_ >= cfg_.budget) break;
            double branch = rng_.uniform();
            std::vector<int> pool = neighborhood_pool(i);
            if (branch >= cfg_.delta || pool.size() < static_cast<std::size_t>(t_)) {
                pool.resize(objectives_.size());
                for (std::size_t s = 0; s < pool.size(); ++s) pool[s] = static_cast<int>(s);
            }

            int base;
            if (!assigned_[i].empty()) {
                base = best_assigned(i);
            } else {
                base = pool[rng_.uniform_index(pool.size())];
            }

            std::vector<double> child;
            if (cfg_.use_sbx) {
                int mate = draw_distinct(pool, {base});
                child = sbx(decisions_[base], decisions_[mate], cfg_.variation,
                            cfg_.problem.bounds, rng_)
                            .first;
            } else {
                int r2 = draw_distinct(pool, {base});
                int r3 = draw_distinct(pool, {base, r2});
                child = de_rand_1(decisions_[base], decisions_[r2], decisions_[r3], cfg_.variation,
                                  cfg_.problem.bounds, rng_);
            }
            child = poly_mutation(child, cfg_.variation, cfg_.problem.bounds, rng_);

            objectives_.push_back(cfg_.problem.evaluate(child));
            update_ideal(norm_ctx_, objectives_.back());
            decisions_.push_back(std::move(child));
            ++neval_;
        }

        environmental_selection();
        ++iteration_;
        if (iteration_ % 30 == 0) update_utility();
    }

    /// Utility refresh from the relative decrease of each subproblem's best
    /// matched aggregation value since the last refresh.
    void update_utility() {
        for (int i = 0; i < cfg_.population; ++i) {
            double delta_i = 0.0;
            double g_best = 0.0;
            if (!assigned_[i].empty()) {
                g_best = matched_best_value(i);
                double g_old = subproblems_.saved_best[i];
                if (g_old >= 1e-12) delta_i = (g_old - g_best) / g_old;
            }
            double& pi = subproblems_.utility[i];
            if (delta_i > 0.001)
                pi = 1.0;
            else if (delta_i < 0.0)
                pi = 0.95 * pi;
            else
                pi = (0.95 + 0.05 * delta_i / 0.001) * pi;
            if (!assigned_[i].empty()) subproblems_.saved_best[i] = g_best;
        }
    }

    RunRecord run(const MetricFn& score = {}) {
        auto started = std::chrono::steady_clock::now();
        long long next_mark =
            cfg_.checkpoint_every > 0 ? cfg_.checkpoint_every : cfg_.budget + 1;

        RunRecord rec;
        rec.problem = cfg_.problem.name;
        rec.m = cfg_.problem.m;
        rec.algorithm = algorithm_name(cfg_.algorithm);
        rec.population = cfg_.population;
        rec.budget = cfg_.budget;
        rec.seed = cfg_.seed;

        while (neval_ < cfg_.budget) {
            evolve_generation();
            ++rec.generations;
            if (score && neval_ >= next_mark) {
                auto metrics = score(objectives_);
                rec.checkpoints.push_back({neval_, metrics.igd, metrics.hv});
                while (next_mark <= neval_) next_mark += cfg_.checkpoint_every;
            }
        }
        if (score && (rec.checkpoints.empty() || rec.checkpoints.back().neval != neval_)) {
            auto metrics = score(objectives_);
            rec.checkpoints.push_back({neval_, metrics.igd, metrics.hv});
        }
        rec.neval = neval_;
        rec.final_decisions = decisions_;
        rec.final_objectives = objectives_;
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                started)
                          .count();
        return rec;
    }

    const OptimizerConfig& config() const { return cfg_; }
    const SubproblemSet& subproblem_set() const { return subproblems_; }
    SubproblemSet& subproblem_set() { return subproblems_; }
    const NormalizationContext& norm_context() const { return norm_ctx_; }
    const std::vector<std::vector<double>>& decisions() const { return decisions_; }
    const std::vector<std::vector<double>>& objectives() const { return objectives_; }
    const std::vector<std::vector<int>>& assigned() const { return assigned_; }
    long long neval() const { return neval_; }
    long long iteration() const { return iteration_; }
    Rng rng_copy() const { return rng_; }

private:
    double matched_best_value(int i) const {
        double best = std::numeric_limits<double>::infinity();
        for (int x : assigned_[i])
            best = std::min(best, tch(objectives_[x], subproblems_.weights[i], norm_ctx_.ideal));
        return best;
    }

    int best_assigned(int i) const {
        int best = assigned_[i].front();
        double best_value = tch(objectives_[best], subproblems_.weights[i], norm_ctx_.ideal);
        for (std::size_t at = 1; at < assigned_[i].size(); ++at) {
            int x = assigned_[i][at];
            double value = tch(objectives_[x], subproblems_.weights[i], norm_ctx_.ideal);
            if (value < best_value) {
                best_value = value;
                best = x;
            }
        }
        return best;
    }

    std::vector<int> neighborhood_pool(int i) const {
        std::vector<int> pool;
        for (int p : subproblems_.neighbors[i])
            for (int x : assigned_[p]) pool.push_back(x);
        std::sort(pool.begin(), pool.end());
        pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
        return pool;
    }

    int draw_distinct(const std::vector<int>& pool, std::initializer_list<int> avoid) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            int pick = pool[rng_.uniform_index(pool.size())];
            bool clash = false;
            for (int a : avoid) clash = clash || pick == a;
            if (!clash) return pick;
        }
        for (int pick : pool) {
            bool clash = false;
            for (int a : avoid) clash = clash || pick == a;
            if (!clash) return pick;
        }
        return pool.front();  // degenerate pool, duplicates allowed
    }

    void environmental_selection() {
        const int n = cfg_.population;
        auto normalized = normalize(objectives_, norm_ctx_);
        SelectionContext ctx{subproblems_.weights, std::move(normalized), objectives_, t_,
                             cfg_.problem.m};

        std::vector<std::vector<int>> next_assigned(n);
        std::vector<int> kept;  // pool indices, may repeat for the greedy baseline
        kept.reserve(n);

        if (cfg_.algorithm == Algorithm::dra) {
            auto chosen = selection_greedy(ctx);
            for (int p = 0; p < n; ++p) {
                next_assigned[p] = {p};
                kept.push_back(chosen[p]);
            }
            rebuild_pool(kept, next_assigned, /*allow_duplicates=*/true);
            return;
        }

        Matching match(0, 0);
        switch (cfg_.algorithm) {
            case Algorithm::aoostm: match = selection_aoostm(ctx, rng_); break;
            case Algorithm::amostm: match = selection_amostm(ctx, rng_); break;
            default: match = selection_stm(ctx, rng_); break;
        }

        if (cfg_.algorithm == Algorithm::amostm && match.pair_count() < static_cast<std::size_t>(n)) {
            // Exhausted lists left the quota unfilled: hand each empty
            // subproblem the best unmatched solution by aggregation value.
            for (int p = 0; p < n && match.pair_count() < static_cast<std::size_t>(n); ++p) {
                if (!match.left_assignments[p].empty()) continue;
                int best = -1;
                double best_value = 0.0;
                for (std::size_t x = 0; x < objectives_.size(); ++x) {
                    if (match.left_of(static_cast<int>(x)) >= 0) continue;
                    double value = subproblem_preference(ctx, p, static_cast<int>(x));
                    if (best < 0 || value < best_value) {
                        best = static_cast<int>(x);
                        best_value = value;
                    }
                }
                if (best < 0) break;
                match.add(p, best);
            }
        }

        std::vector<int> pool_index(objectives_.size(), -1);
        for (int p = 0; p < n; ++p) {
            for (int x : match.left_assignments[p]) {
                if (pool_index[x] < 0) {
                    pool_index[x] = static_cast<int>(kept.size());
                    kept.push_back(x);
                }
                next_assigned[p].push_back(pool_index[x]);
            }
        }
        rebuild_pool(kept, next_assigned, /*allow_duplicates=*/false);
    }

    void rebuild_pool(const std::vector<int>& kept, std::vector<std::vector<int>>& next_assigned,
                      bool allow_duplicates) {
        std::vector<std::vector<double>> new_dec, new_obj;
        new_dec.reserve(kept.size());
        new_obj.reserve(kept.size());
        for (int x : kept) {
            new_dec.push_back(decisions_[x]);
            new_obj.push_back(objectives_[x]);
        }
        (void)allow_duplicates;
        decisions_ = std::move(new_dec);
        objectives_ = std::move(new_obj);
        assigned_ = std::move(next_assigned);
    }

    OptimizerConfig cfg_;
    Rng rng_;
    int t_ = 20;
    SubproblemSet subproblems_;
    NormalizationContext norm_ctx_;
    std::vector<std::vector<double>> decisions_;
    std::vector<std::vector<double>> objectives_;
    std::vector<std::vector<int>> assigned_;
    long long neval_ = 0;
    long long iteration_ = 0;
};

}  // namespace moead
