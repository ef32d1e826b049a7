#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "moead/problems.hpp"
#include "moead/rng.hpp"

namespace moead {

/// Metric-space settings: hypervolume reference point, whether population and
/// PF are rescaled by the PF bounds first (the WFG convention), and the Monte
/// Carlo budget for hypervolume beyond three objectives.
struct MetricConfig {
    std::vector<double> reference;
    bool normalize = false;
    std::size_t mc_samples = 1'000'000;
    std::uint64_t mc_seed = 20130815;
};

/// Mean Euclidean distance from each reference-front point to its nearest
/// population member.
inline double igd(const std::vector<std::vector<double>>& population,
                  const std::vector<std::vector<double>>& front) {
    if (population.empty() || front.empty()) throw std::invalid_argument("igd: empty input");
    const std::size_t m = front.front().size();
    double total = 0.0;
    for (const auto& z : front) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : population) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                double d = z[i] - p[i];
                d2 += d * d;
            }
            best = std::min(best, d2);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(front.size());
}

namespace detail {

// Points strictly better than the reference in every coordinate, reduced to
// the non-dominated subset.
inline std::vector<std::vector<double>> hv_contributors(
    const std::vector<std::vector<double>>& population, std::span<const double> ref) {
    std::vector<std::vector<double>> pts;
    for (const auto& p : population) {
        bool inside = true;
        for (std::size_t i = 0; i < ref.size(); ++i) inside = inside && p[i] < ref[i];
        if (inside) pts.push_back(p);
    }
    return pareto_filter(std::move(pts));
}

inline double hv2(std::vector<std::vector<double>> pts, double rx, double ry) {
    std::sort(pts.begin(), pts.end());
    double area = 0.0, prev_y = ry;
    for (const auto& p : pts) {
        area += (rx - p[0]) * (prev_y - p[1]);
        prev_y = p[1];
    }
    return area;
}

inline double hv3(const std::vector<std::vector<double>>& pts, std::span<const double> ref) {
    std::vector<double> zs;
    for (const auto& p : pts) zs.push_back(p[2]);
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    zs.push_back(ref[2]);

    double volume = 0.0;
    for (std::size_t s = 0; s + 1 < zs.size(); ++s) {
        std::vector<std::vector<double>> slice;
        for (const auto& p : pts)
            if (p[2] <= zs[s]) slice.push_back({p[0], p[1]});
        if (slice.empty()) continue;
        volume += hv2(pareto_filter(std::move(slice)), ref[0], ref[1]) * (zs[s + 1] - zs[s]);
    }
    return volume;
}

}  // namespace detail

/// Monte Carlo hypervolume estimate with a fixed seed.
inline double hv_monte_carlo(const std::vector<std::vector<double>>& population,
                             std::span<const double> ref, std::size_t samples,
                             std::uint64_t seed) {
    auto pts = detail::hv_contributors(population, ref);
    if (pts.empty()) return 0.0;
    const std::size_t m = ref.size();
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    for (const auto& p : pts)
        for (std::size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], p[i]);
    double box = 1.0;
    for (std::size_t i = 0; i < m; ++i) box *= ref[i] - lo[i];

    Rng rng(seed);
    std::size_t hits = 0;
    std::vector<double> u(m);
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < m; ++i) u[i] = lo[i] + (ref[i] - lo[i]) * rng.uniform();
        for (const auto& p : pts) {
            bool covered = true;
            for (std::size_t i = 0; i < m; ++i) covered = covered && p[i] <= u[i];
            if (covered) {
                ++hits;
                break;
            }
        }
    }
    return box * static_cast<double>(hits) / static_cast<double>(samples);
}

/// Lebesgue measure of the region dominated by the population and bounded by
/// the reference point. Exact sweep for two objectives, exact slicing for
/// three, seeded Monte Carlo beyond that. Points outside the reference box
/// are ignored; an empty contributing set gives 0.
inline double hv(const std::vector<std::vector<double>>& population, std::span<const double> ref,
                 std::size_t mc_samples = 1'000'000, std::uint64_t mc_seed = 20130815) {
    auto pts = detail::hv_contributors(population, ref);
    if (pts.empty()) return 0.0;
    if (ref.size() == 2) return detail::hv2(std::move(pts), ref[0], ref[1]);
    if (ref.size() == 3) return detail::hv3(pts, ref);
    return hv_monte_carlo(pts, ref, mc_samples, mc_seed);
}

/// Affine map sending the front's componentwise min/max to [0,1], applied to
/// arbitrary points (values outside the band land outside [0,1]).
inline std::vector<std::vector<double>> normalize_for_metrics(
    const std::vector<std::vector<double>>& points, const std::vector<double>& front_min,
    const std::vector<double>& front_max) {
    const std::size_t m = front_min.size();
    std::vector<std::vector<double>> out(points.size(), std::vector<double>(m));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double range = front_max[j] - front_min[j];
            out[i][j] = range > 0.0 ? (points[i][j] - front_min[j]) / range : 0.0;
        }
    return out;
}

inline std::pair<std::vector<double>, std::vector<double>> front_bounds(
    const std::vector<std::vector<double>>& front) {
    const std::size_t m = front.front().size();
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
    for (const auto& p : front)
        for (std::size_t j = 0; j < m; ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    return {lo, hi};
}

/// Final IGD and HV of a population against a problem's reference front,
/// following the experiment convention: WFG instances are rescaled into
/// [0,1] by the PF bounds first, UF/MOP are measured in raw objective space;
/// the HV reference point is 1.2 in every coordinate either way.
struct MetricPair {
    double igd = 0.0;
    double hv = 0.0;
};

inline MetricPair score_population(const std::vector<std::vector<double>>& objectives,
                                   const ProblemInstance& problem,
                                   std::size_t pf_count = 0) {
    if (pf_count == 0) pf_count = default_pf_count(problem.m);
    const auto& front = pf_reference(problem, pf_count);
    std::vector<double> ref(problem.m, 1.2);
    MetricPair out;
    if (problem.family == ProblemInstance::Family::wfg) {
        auto [lo, hi] = front_bounds(front);
        auto front_n = normalize_for_metrics(front, lo, hi);
        auto pop_n = normalize_for_metrics(objectives, lo, hi);
        out.igd = igd(pop_n, front_n);
        out.hv = hv(pop_n, ref);
    } else {
        out.igd = igd(objectives, front);
        out.hv = hv(objectives, ref);
    }
    return out;
}

}  // namespace moead
