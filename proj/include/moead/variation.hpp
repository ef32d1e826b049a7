#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "moead/rng.hpp"

namespace moead {

/// Operator parameters. DE uses cr/f, SBX uses p_c/eta_c, polynomial
/// mutation uses p_m/eta_m. Out-of-bounds coordinates are clipped to the
/// violated bound.
struct VariationParams {
    double cr = 1.0;
    double f = 0.5;
    double p_c = 1.0;
    double eta_c = 30.0;
    double p_m = 0.1;
    double eta_m = 20.0;
};

using Bounds = std::vector<std::pair<double, double>>;

namespace detail {

inline double clip(double v, const std::pair<double, double>& b) {
    if (v < b.first) return b.first;
    if (v > b.second) return b.second;
    return v;
}

}  // namespace detail

/// DE/rand/1 with binomial crossover: v = base + F (r2 - r3), inherited
/// coordinate-wise with rate CR plus one guaranteed coordinate.
inline std::vector<double> de_rand_1(std::span<const double> base, std::span<const double> r2,
                                     std::span<const double> r3, const VariationParams& params,
                                     const Bounds& bounds, Rng& rng) {
    const std::size_t n = base.size();
    if (r2.size() != n || r3.size() != n || bounds.size() != n)
        throw std::invalid_argument("de_rand_1: dimension mismatch");
    std::vector<double> trial(base.begin(), base.end());
    std::size_t forced = rng.uniform_index(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == forced || rng.uniform() < params.cr)
            trial[j] = detail::clip(base[j] + params.f * (r2[j] - r3[j]), bounds[j]);
    }
    return trial;
}

/// Simulated binary crossover (bounded formulation). Each coordinate
/// recombines with probability 1/2 once the pair-level p_c draw fires.
inline std::pair<std::vector<double>, std::vector<double>> sbx(std::span<const double> p1,
                                                               std::span<const double> p2,
                                                               const VariationParams& params,
                                                               const Bounds& bounds, Rng& rng) {
    const std::size_t n = p1.size();
    if (p2.size() != n || bounds.size() != n) throw std::invalid_argument("sbx: dimension mismatch");
    std::vector<double> c1(p1.begin(), p1.end()), c2(p2.begin(), p2.end());
    if (rng.uniform() >= params.p_c) return {std::move(c1), std::move(c2)};

    for (std::size_t j = 0; j < n; ++j) {
        if (rng.uniform() > 0.5) continue;
        double y1 = p1[j], y2 = p2[j];
        if (std::abs(y1 - y2) < 1e-14) continue;
        if (y1 > y2) std::swap(y1, y2);
        const double yl = bounds[j].first, yu = bounds[j].second;
        const double u = rng.uniform();
        auto spread = [&](double beta) {
            double alpha = 2.0 - std::pow(beta, -(params.eta_c + 1.0));
            if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (params.eta_c + 1.0));
            return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (params.eta_c + 1.0));
        };
        double beta1 = 1.0 + 2.0 * (y1 - yl) / (y2 - y1);
        double beta2 = 1.0 + 2.0 * (yu - y2) / (y2 - y1);
        double bq1 = spread(beta1);
        double bq2 = spread(beta2);
        double child1 = 0.5 * ((y1 + y2) - bq1 * (y2 - y1));
        double child2 = 0.5 * ((y1 + y2) + bq2 * (y2 - y1));
        c1[j] = detail::clip(child1, bounds[j]);
        c2[j] = detail::clip(child2, bounds[j]);
    }
    return {std::move(c1), std::move(c2)};
}

/// Bounded polynomial mutation, coordinate-wise with probability p_m.
inline std::vector<double> poly_mutation(std::span<const double> x, const VariationParams& params,
                                         const Bounds& bounds, Rng& rng) {
    const std::size_t n = x.size();
    if (bounds.size() != n) throw std::invalid_argument("poly_mutation: dimension mismatch");
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t j = 0; j < n; ++j) {
        if (rng.uniform() >= params.p_m) continue;
        const double yl = bounds[j].first, yu = bounds[j].second;
        const double range = yu - yl;
        if (range <= 0.0) continue;
        double y = out[j];
        double d1 = (y - yl) / range, d2 = (yu - y) / range;
        double u = rng.uniform();
        double exponent = 1.0 / (params.eta_m + 1.0);
        double dq;
        if (u <= 0.5) {
            double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, params.eta_m + 1.0);
            dq = std::pow(val, exponent) - 1.0;
        } else {
            double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, params.eta_m + 1.0);
            dq = 1.0 - std::pow(val, exponent);
        }
        out[j] = detail::clip(y + dq * range, bounds[j]);
    }
    return out;
}

}  // namespace moead
