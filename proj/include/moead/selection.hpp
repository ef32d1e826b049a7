#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "moead/decomposition.hpp"
#include "moead/matching.hpp"
#include "moead/problems.hpp"
#include "moead/rng.hpp"

namespace moead {

/// Inputs to environmental selection: N weight vectors, the Q candidate
/// solutions in normalized and raw objective form, and the preference-list
/// length cap (the neighborhood size in the surrounding optimizer).
struct SelectionContext {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> normalized_objectives;
    std::vector<std::vector<double>> raw_objectives;
    int ell_max = 20;
    int m = 2;

    std::size_t subproblems() const { return weights.size(); }
    std::size_t solutions() const { return normalized_objectives.size(); }

    void validate() const {
        if (weights.empty() || normalized_objectives.empty())
            throw std::invalid_argument("SelectionContext: empty weights or population");
        if (raw_objectives.size() != normalized_objectives.size())
            throw std::invalid_argument("SelectionContext: raw/normalized size mismatch");
        for (const auto& w : weights)
            if (w.size() != static_cast<std::size_t>(m))
                throw std::invalid_argument("SelectionContext: weight dimension mismatch");
        for (const auto& f : normalized_objectives)
            if (f.size() != static_cast<std::size_t>(m))
                throw std::invalid_argument("SelectionContext: objective dimension mismatch");
    }
};

/// Association of solutions to their nearest subproblems and each
/// subproblem's representative (best aggregation value among associated
/// solutions, -1 when none).
struct RepresentativeMap {
    std::vector<int> association;
    std::vector<int> representative;
};

/// Subproblem-side preference: aggregation value of the normalized objective
/// vector against the subproblem's weight (ideal point at the origin after
/// normalization). Lower is preferred.
inline double subproblem_preference(const SelectionContext& ctx, int p, int x) {
    double value = 0.0;
    for (int i = 0; i < ctx.m; ++i) {
        double wi = std::max(ctx.weights[p][i], kWeightFloor);
        value = std::max(value, std::abs(ctx.normalized_objectives[x][i]) / wi);
    }
    return value;
}

/// Solution-side preference: perpendicular distance to the subproblem's
/// weight ray. Lower is preferred.
inline double solution_preference(const SelectionContext& ctx, int x, int p) {
    return perp_distance(ctx.normalized_objectives[x], ctx.weights[p]);
}

namespace detail {

// Ranked prefix of subproblems for every solution, by ascending preference
// with index tie-break.
inline std::vector<std::vector<int>> solution_prefix_lists(const SelectionContext& ctx,
                                                           std::size_t prefix) {
    const std::size_t n = ctx.subproblems(), q = ctx.solutions();
    std::vector<std::vector<int>> lists(q);
    std::vector<std::pair<double, int>> keyed(n);
    for (std::size_t x = 0; x < q; ++x) {
        for (std::size_t p = 0; p < n; ++p)
            keyed[p] = {solution_preference(ctx, static_cast<int>(x), static_cast<int>(p)),
                        static_cast<int>(p)};
        std::partial_sort(keyed.begin(), keyed.begin() + prefix, keyed.end());
        lists[x].reserve(prefix);
        for (std::size_t r = 0; r < prefix; ++r) lists[x].push_back(keyed[r].second);
    }
    return lists;
}

inline std::vector<std::vector<int>> subproblem_full_lists(const SelectionContext& ctx) {
    const std::size_t n = ctx.subproblems(), q = ctx.solutions();
    std::vector<std::vector<int>> lists(n);
    std::vector<std::pair<double, int>> keyed(q);
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t x = 0; x < q; ++x)
            keyed[x] = {subproblem_preference(ctx, static_cast<int>(p), static_cast<int>(x)),
                        static_cast<int>(x)};
        std::sort(keyed.begin(), keyed.end());
        lists[p].resize(q);
        for (std::size_t r = 0; r < q; ++r) lists[p][r] = keyed[r].second;
    }
    return lists;
}

}  // namespace detail

/// Complete two-sided preference profile: subproblems rank all solutions by
/// aggregation value, solutions rank all subproblems by perpendicular
/// distance, ties by ascending index. When lengths are given, each
/// solution's list is truncated to its entry.
inline PreferenceProfile build_preference_profile(const SelectionContext& ctx,
                                                  const std::vector<int>* lengths = nullptr) {
    ctx.validate();
    const std::size_t n = ctx.subproblems(), q = ctx.solutions();
    if (lengths && lengths->size() != q)
        throw std::invalid_argument("build_preference_profile: lengths size mismatch");

    PreferenceProfile pr;
    pr.n_left = n;
    pr.n_right = q;
    pr.left_lists = detail::subproblem_full_lists(ctx);

    std::size_t prefix = n;
    if (lengths)
        prefix = static_cast<std::size_t>(
            std::clamp(*std::max_element(lengths->begin(), lengths->end()), 1,
                       static_cast<int>(n)));
    pr.right_lists = detail::solution_prefix_lists(ctx, prefix);
    pr.right_lengths.resize(q);
    for (std::size_t x = 0; x < q; ++x) {
        int r = lengths ? std::clamp((*lengths)[x], 1, static_cast<int>(prefix))
                        : static_cast<int>(n);
        pr.right_lengths[x] = r;
    }
    return pr;
}

/// Association and representatives for the adaptive mechanism.
inline RepresentativeMap build_representatives(const SelectionContext& ctx,
                                               const std::vector<std::vector<int>>& solution_lists) {
    const std::size_t n = ctx.subproblems(), q = ctx.solutions();
    RepresentativeMap map;
    map.association.resize(q);
    map.representative.assign(n, -1);
    std::vector<double> best(n, 0.0);
    for (std::size_t x = 0; x < q; ++x) {
        int j = solution_lists[x].front();
        map.association[x] = j;
        double value = subproblem_preference(ctx, j, static_cast<int>(x));
        if (map.representative[j] < 0 || value < best[j]) {
            map.representative[j] = static_cast<int>(x);
            best[j] = value;
        }
    }
    return map;
}

/// Adaptive preference-list lengths: each solution's list grows from m up to
/// ell_max and stops just before the first entry whose representative
/// solution it dominates (the solution would be locally competitive there).
inline std::vector<int> adaptive_set_r(const SelectionContext& ctx,
                                       const std::vector<std::vector<int>>& solution_lists) {
    ctx.validate();
    if (ctx.ell_max < ctx.m)
        throw std::invalid_argument("adaptive_set_r: ell_max must be at least the objective count");
    const int n = static_cast<int>(ctx.subproblems());
    const int eff_max = std::min(ctx.ell_max, n);
    const int floor_r = std::min(ctx.m, n);
    for (const auto& list : solution_lists)
        if (list.size() < static_cast<std::size_t>(eff_max))
            throw std::invalid_argument("adaptive_set_r: solution lists shorter than ell_max");

    auto reps = build_representatives(ctx, solution_lists);
    std::vector<int> lengths(ctx.solutions(), floor_r);
    for (std::size_t x = 0; x < ctx.solutions(); ++x) {
        for (int ell = floor_r + 1; ell <= eff_max; ++ell) {
            int t = reps.representative[solution_lists[x][ell - 1]];
            if (t >= 0 && dominates(ctx.raw_objectives[x], ctx.raw_objectives[t])) break;
            lengths[x] = ell;
        }
    }
    return lengths;
}

namespace detail {

// Complete profile over index subsets, preference order recomputed from the
// context (identical values, so identical order as filtering the full lists).
inline PreferenceProfile subset_profile(const SelectionContext& ctx,
                                        const std::vector<int>& subproblems,
                                        const std::vector<int>& solutions) {
    PreferenceProfile pr;
    pr.n_left = subproblems.size();
    pr.n_right = solutions.size();
    pr.left_lists.resize(pr.n_left);
    pr.right_lists.resize(pr.n_right);
    pr.right_lengths.assign(pr.n_right, static_cast<int>(pr.n_left));

    std::vector<std::pair<double, int>> keyed;
    for (std::size_t a = 0; a < subproblems.size(); ++a) {
        keyed.clear();
        for (std::size_t b = 0; b < solutions.size(); ++b)
            keyed.emplace_back(subproblem_preference(ctx, subproblems[a], solutions[b]),
                               static_cast<int>(b));
        std::sort(keyed.begin(), keyed.end(),
                  [&](const auto& l, const auto& r) {
                      if (l.first != r.first) return l.first < r.first;
                      return solutions[l.second] < solutions[r.second];
                  });
        for (const auto& [value, b] : keyed) pr.left_lists[a].push_back(b);
    }
    for (std::size_t b = 0; b < solutions.size(); ++b) {
        keyed.clear();
        for (std::size_t a = 0; a < subproblems.size(); ++a)
            keyed.emplace_back(solution_preference(ctx, solutions[b], subproblems[a]),
                               static_cast<int>(a));
        std::sort(keyed.begin(), keyed.end(),
                  [&](const auto& l, const auto& r) {
                      if (l.first != r.first) return l.first < r.first;
                      return subproblems[l.second] < subproblems[r.second];
                  });
        for (const auto& [value, a] : keyed) pr.right_lists[b].push_back(a);
    }
    return pr;
}

}  // namespace detail

/// Two-level one-one selection: stable matching under adaptive incomplete
/// lists, then a complete-list stable matching between the leftover
/// subproblems and solutions. Covers every subproblem when Q >= N.
inline Matching selection_aoostm(const SelectionContext& ctx, Rng& rng) {
    ctx.validate();
    const std::size_t n = ctx.subproblems(), q = ctx.solutions();
    if (q < n) throw std::invalid_argument("selection_aoostm: requires at least N solutions");

    const int eff_max = std::min(ctx.ell_max, static_cast<int>(n));
    auto prefix_lists = detail::solution_prefix_lists(ctx, eff_max);
    auto lengths = adaptive_set_r(ctx, prefix_lists);

    PreferenceProfile level1;
    level1.n_left = n;
    level1.n_right = q;
    level1.left_lists = detail::subproblem_full_lists(ctx);
    level1.right_lists = prefix_lists;
    level1.right_lengths = lengths;
    Matching matched = stable_match_incomplete(level1, rng);

    std::vector<int> rest_p, rest_x;
    for (std::size_t p = 0; p < n; ++p)
        if (matched.right_of(static_cast<int>(p)) < 0) rest_p.push_back(static_cast<int>(p));
    for (std::size_t x = 0; x < q; ++x)
        if (matched.left_of(static_cast<int>(x)) < 0) rest_x.push_back(static_cast<int>(x));

    if (!rest_p.empty()) {
        auto sub = detail::subset_profile(ctx, rest_p, rest_x);
        Matching second = stable_match_complete(sub, rng);
        for (const auto& [a, b] : second.pairs()) matched.add(rest_p[a], rest_x[b]);
    }
    return matched;
}

/// Many-one selection: adaptive incomplete lists and a college-admission
/// matching with common quota N. A subproblem may hold several solutions or
/// none; exactly N pairs result whenever Q >= N.
inline Matching selection_amostm(const SelectionContext& ctx, Rng& rng) {
    ctx.validate();
    const std::size_t n = ctx.subproblems(), q = ctx.solutions();
    if (q < n) throw std::invalid_argument("selection_amostm: requires at least N solutions");

    const int eff_max = std::min(ctx.ell_max, static_cast<int>(n));
    auto prefix_lists = detail::solution_prefix_lists(ctx, eff_max);
    auto lengths = adaptive_set_r(ctx, prefix_lists);

    PreferenceProfile pr;
    pr.n_left = n;
    pr.n_right = q;
    pr.left_lists = detail::subproblem_full_lists(ctx);
    pr.right_lists = prefix_lists;
    pr.right_lengths = lengths;
    return many_one_match(pr, n, rng);
}

/// Baseline complete-list stable matching selection.
inline Matching selection_stm(const SelectionContext& ctx, Rng& rng) {
    ctx.validate();
    if (ctx.solutions() < ctx.subproblems())
        throw std::invalid_argument("selection_stm: requires at least N solutions");
    auto pr = build_preference_profile(ctx);
    return stable_match_complete(pr, rng);
}

/// Baseline greedy selection: every subproblem keeps its best solution by
/// aggregation value, duplicates allowed.
inline std::vector<int> selection_greedy(const SelectionContext& ctx) {
    ctx.validate();
    std::vector<int> chosen(ctx.subproblems());
    for (std::size_t p = 0; p < ctx.subproblems(); ++p) {
        int best = 0;
        double best_value = subproblem_preference(ctx, static_cast<int>(p), 0);
        for (std::size_t x = 1; x < ctx.solutions(); ++x) {
            double value = subproblem_preference(ctx, static_cast<int>(p), static_cast<int>(x));
            if (value < best_value) {
                best_value = value;
                best = static_cast<int>(x);
            }
        }
        chosen[p] = best;
    }
    return chosen;
}

}  // namespace moead
