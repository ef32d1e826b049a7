#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "moead/rng.hpp"

namespace moead {

/// Two-sided preference data. Left agents rank right agents and vice versa;
/// every list is a strict ranking (no duplicates, indices in range). A right
/// agent i only accepts the first right_lengths[i] entries of its list, which
/// models incomplete preference lists; right_lengths[i] == n_left with full
/// lists on both sides is the classic complete-list setting.
struct PreferenceProfile {
    std::size_t n_left = 0;
    std::size_t n_right = 0;
    std::vector<std::vector<int>> left_lists;
    std::vector<std::vector<int>> right_lists;
    std::vector<int> right_lengths;

    bool complete() const {
        for (std::size_t i = 0; i < n_right; ++i) {
            if (right_lists[i].size() != n_left) return false;
            if (right_lengths[i] != static_cast<int>(n_left)) return false;
        }
        for (const auto& list : left_lists)
            if (list.size() != n_right) return false;
        return true;
    }

    void validate() const {
        if (left_lists.size() != n_left || right_lists.size() != n_right ||
            right_lengths.size() != n_right)
            throw std::invalid_argument("PreferenceProfile: field sizes disagree with n_left/n_right");
        auto check_lists = [](const std::vector<std::vector<int>>& lists, std::size_t bound,
                              const char* side) {
            std::vector<char> seen(bound);
            for (const auto& list : lists) {
                if (list.size() > bound)
                    throw std::invalid_argument(std::string("PreferenceProfile: ") + side +
                                                " list longer than the other side");
                std::fill(seen.begin(), seen.end(), 0);
                for (int v : list) {
                    if (v < 0 || static_cast<std::size_t>(v) >= bound)
                        throw std::invalid_argument(std::string("PreferenceProfile: ") + side +
                                                    " list index out of range");
                    if (seen[v]++)
                        throw std::invalid_argument(std::string("PreferenceProfile: duplicate index in ") +
                                                    side + " list");
                }
            }
        };
        check_lists(left_lists, n_right, "left");
        check_lists(right_lists, n_left, "right");
        for (std::size_t i = 0; i < n_right; ++i) {
            if (right_lengths[i] <= 0 || right_lengths[i] > static_cast<int>(right_lists[i].size()))
                throw std::invalid_argument("PreferenceProfile: right_lengths out of range");
        }
    }
};

/// Partial assignment between left and right agents. One-one engines leave at
/// most one right per left; the many-one engine may assign several.
struct Matching {
    std::vector<std::vector<int>> left_assignments;
    std::vector<int> right_to_left;

    Matching() = default;
    Matching(std::size_t n_left, std::size_t n_right)
        : left_assignments(n_left), right_to_left(n_right, -1) {}

    int left_of(int x) const { return right_to_left[x]; }
    /// Single partner of a left agent, -1 if unmatched (one-one use).
    int right_of(int p) const {
        return left_assignments[p].empty() ? -1 : left_assignments[p].front();
    }

    void add(int p, int x) {
        left_assignments[p].push_back(x);
        right_to_left[x] = p;
        ++count_;
    }

    void erase(int p, int x) {
        auto& held = left_assignments[p];
        held.erase(std::find(held.begin(), held.end(), x));
        right_to_left[x] = -1;
        --count_;
    }

    std::size_t pair_count() const { return count_; }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(count_);
        for (std::size_t p = 0; p < left_assignments.size(); ++p)
            for (int x : left_assignments[p]) out.emplace_back(static_cast<int>(p), x);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const Matching& a, const Matching& b) { return a.pairs() == b.pairs(); }

private:
    std::size_t count_ = 0;
};

enum class MatchMode { one_one, many_one };

/// Proposal accounting for the termination invariant: no engine may issue
/// more proposals than the total list length of the proposing side.
struct MatchStats {
    std::size_t proposals = 0;
};

/// Set of agent indices supporting O(1) random pick, insert and remove.
class IndexPool {
public:
    IndexPool(std::size_t universe, bool full) : pos_(universe, -1) {
        if (full) {
            items_.resize(universe);
            for (std::size_t i = 0; i < universe; ++i) {
                items_[i] = static_cast<int>(i);
                pos_[i] = static_cast<int>(i);
            }
        }
    }

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }
    bool contains(int v) const { return pos_[v] >= 0; }

    int pick(Rng& rng) const { return items_[rng.uniform_index(items_.size())]; }

    void insert(int v) {
        if (pos_[v] >= 0) return;
        pos_[v] = static_cast<int>(items_.size());
        items_.push_back(v);
    }

    void remove(int v) {
        int at = pos_[v];
        if (at < 0) return;
        int last = items_.back();
        items_[at] = last;
        pos_[last] = at;
        items_.pop_back();
        pos_[v] = -1;
    }

private:
    std::vector<int> items_;
    std::vector<int> pos_;
};

namespace detail {

// rank[agent][other] = position of `other` on `agent`'s list, -1 if absent.
inline std::vector<std::vector<int>> rank_table(const std::vector<std::vector<int>>& lists,
                                                std::size_t other_count) {
    std::vector<std::vector<int>> rank(lists.size(), std::vector<int>(other_count, -1));
    for (std::size_t a = 0; a < lists.size(); ++a)
        for (std::size_t r = 0; r < lists[a].size(); ++r)
            rank[a][lists[a][r]] = static_cast<int>(r);
    return rank;
}

inline bool right_accepts(const PreferenceProfile& profile,
                          const std::vector<std::vector<int>>& right_rank, int p, int x) {
    int r = right_rank[x][p];
    return r >= 0 && r < profile.right_lengths[x];
}

// Core deferred-acceptance proposal: p (unmatched) proposes to x. The right
// agent keeps the better of its current partner and p.
inline void da_step(int p, int x, Matching& m, IndexPool& unmatched,
                    const std::vector<std::vector<int>>& right_rank) {
    int incumbent = m.left_of(x);
    if (incumbent < 0) {
        m.add(p, x);
        unmatched.remove(p);
    } else if (right_rank[x][p] < right_rank[x][incumbent]) {
        m.erase(incumbent, x);
        m.add(p, x);
        unmatched.remove(p);
        unmatched.insert(incumbent);
    }
}

}  // namespace detail

/// Single deferred-acceptance proposal on explicit state. `unmatched` is the
/// pool of left agents still proposing; p must be in it and x must be on p's
/// list.
inline void deferred_acceptance_step(int p, int x, Matching& m, IndexPool& unmatched,
                                     const PreferenceProfile& profile) {
    profile.validate();
    if (p < 0 || static_cast<std::size_t>(p) >= profile.n_left)
        throw std::invalid_argument("deferred_acceptance_step: left index out of range");
    if (x < 0 || static_cast<std::size_t>(x) >= profile.n_right)
        throw std::invalid_argument("deferred_acceptance_step: right index out of range");
    if (!unmatched.contains(p))
        throw std::invalid_argument("deferred_acceptance_step: proposing agent is matched");
    auto left_rank = detail::rank_table(profile.left_lists, profile.n_right);
    if (left_rank[p][x] < 0)
        throw std::invalid_argument("deferred_acceptance_step: proposal target not on list");
    auto right_rank = detail::rank_table(profile.right_lists, profile.n_left);
    detail::da_step(p, x, m, unmatched, right_rank);
}

/// Left-proposing stable matching with (possibly) incomplete right-side
/// lists. Left agents propose down their lists in random order; proposals to
/// rights that do not accept them are consumed without effect. Left agents
/// that exhaust their lists stay unmatched.
inline Matching stable_match_incomplete(const PreferenceProfile& profile, Rng& rng,
                                        MatchStats* stats = nullptr) {
    profile.validate();
    auto right_rank = detail::rank_table(profile.right_lists, profile.n_left);

    Matching m(profile.n_left, profile.n_right);
    IndexPool unmatched(profile.n_left, true);
    std::vector<std::size_t> cursor(profile.n_left, 0);

    while (!unmatched.empty()) {
        int p = unmatched.pick(rng);
        if (cursor[p] == profile.left_lists[p].size()) {
            unmatched.remove(p);
            continue;
        }
        int x = profile.left_lists[p][cursor[p]++];
        if (stats) ++stats->proposals;
        if (detail::right_accepts(profile, right_rank, p, x))
            detail::da_step(p, x, m, unmatched, right_rank);
    }
    return m;
}

/// Classic complete-list stable matching (deferred acceptance). Requires full
/// lists on both sides and n_left <= n_right; every left agent ends matched.
inline Matching stable_match_complete(const PreferenceProfile& profile, Rng& rng,
                                      MatchStats* stats = nullptr) {
    profile.validate();
    if (!profile.complete())
        throw std::invalid_argument("stable_match_complete: profile has incomplete lists");
    if (profile.n_left > profile.n_right)
        throw std::invalid_argument("stable_match_complete: more left agents than right agents");
    return stable_match_incomplete(profile, rng, stats);
}

/// Many-one matching with a common quota on the total number of pairs. Right
/// agents propose down their (truncated) lists; every proposal to a left
/// agent that lists them is accepted, and when the quota is exceeded the
/// most-loaded left agent whose worst assigned right holds the worst rank
/// releases that right.
inline Matching many_one_match(const PreferenceProfile& profile, std::size_t quota, Rng& rng,
                               MatchStats* stats = nullptr) {
    profile.validate();
    if (quota < 1) throw std::invalid_argument("many_one_match: quota must be at least 1");
    auto left_rank = detail::rank_table(profile.left_lists, profile.n_right);

    Matching m(profile.n_left, profile.n_right);
    IndexPool pending(profile.n_right, true);
    std::vector<std::size_t> cursor(profile.n_right, 0);

    // Loaded left agents keyed by (load, worst held rank) so the release
    // target is found without scanning all agents.
    std::set<std::tuple<int, int, int>, std::greater<>> loaded;
    auto worst_rank_of = [&](int p) {
        int worst = -1;
        for (int x : m.left_assignments[p]) worst = std::max(worst, left_rank[p][x]);
        return worst;
    };
    auto reindex = [&](int p, int old_load, int old_worst) {
        if (old_load > 0) loaded.erase({old_load, old_worst, p});
        if (!m.left_assignments[p].empty())
            loaded.insert({static_cast<int>(m.left_assignments[p].size()), worst_rank_of(p), p});
    };

    while (!pending.empty()) {
        int x = pending.pick(rng);
        if (cursor[x] == static_cast<std::size_t>(profile.right_lengths[x])) {
            pending.remove(x);
            continue;
        }
        int p = profile.right_lists[x][cursor[x]++];
        if (stats) ++stats->proposals;
        if (left_rank[p][x] < 0) continue;  // not mutually acceptable
        int load = static_cast<int>(m.left_assignments[p].size());
        int worst = worst_rank_of(p);
        m.add(p, x);
        reindex(p, load, worst);
        pending.remove(x);
        if (m.pair_count() <= quota) continue;

        // Quota exceeded: among the most-loaded left agents those whose worst
        // assigned right is worst-ranked; one of them releases that right.
        auto head = *loaded.begin();
        std::vector<int> candidates;
        for (auto it = loaded.begin(); it != loaded.end(); ++it) {
            if (std::get<0>(*it) != std::get<0>(head) || std::get<1>(*it) != std::get<1>(head))
                break;
            candidates.push_back(std::get<2>(*it));
        }
        std::sort(candidates.begin(), candidates.end());
        int released_from = candidates[rng.uniform_index(candidates.size())];
        int released = -1;
        for (int held : m.left_assignments[released_from])
            if (released < 0 || left_rank[released_from][held] > left_rank[released_from][released])
                released = held;
        int rload = static_cast<int>(m.left_assignments[released_from].size());
        int rworst = worst_rank_of(released_from);
        m.erase(released_from, released);
        reindex(released_from, rload, rworst);
        pending.insert(released);
    }
    return m;
}

/// Every pair violating the applicable stability definition; empty means the
/// matching is stable. One-one: a mutually acceptable unmatched pair blocks
/// when both sides would improve (unmatched counts as improvable). Many-one:
/// the left side also blocks while the common quota is unfilled, or when it
/// prefers the right agent to one it currently holds.
inline std::vector<std::pair<int, int>> verify_stability(const PreferenceProfile& profile,
                                                         const Matching& m, MatchMode mode,
                                                         std::size_t quota = 0) {
    profile.validate();
    auto left_rank = detail::rank_table(profile.left_lists, profile.n_right);
    auto right_rank = detail::rank_table(profile.right_lists, profile.n_left);

    for (std::size_t p = 0; p < profile.n_left; ++p)
        for (int x : m.left_assignments[p])
            if (left_rank[p][x] < 0 || !detail::right_accepts(profile, right_rank, static_cast<int>(p), x))
                throw std::invalid_argument("verify_stability: matching contains an unacceptable pair");

    std::vector<std::pair<int, int>> blocking;
    for (std::size_t pi = 0; pi < profile.n_left; ++pi) {
        int p = static_cast<int>(pi);
        for (int x : profile.left_lists[p]) {
            if (!detail::right_accepts(profile, right_rank, p, x)) continue;
            if (m.left_of(x) == p) continue;

            bool x_improves;
            int xp = m.left_of(x);
            x_improves = xp < 0 || right_rank[x][p] < right_rank[x][xp];
            if (!x_improves) continue;

            bool p_improves;
            if (mode == MatchMode::one_one) {
                int px = m.right_of(p);
                p_improves = px < 0 || left_rank[p][x] < left_rank[p][px];
            } else {
                p_improves = m.pair_count() < quota;
                for (int held : m.left_assignments[p])
                    p_improves = p_improves || left_rank[p][x] < left_rank[p][held];
            }
            if (p_improves) blocking.emplace_back(p, x);
        }
    }
    std::sort(blocking.begin(), blocking.end());
    return blocking;
}

}  // namespace moead
