#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "moead/rng.hpp"

namespace moead {

inline constexpr double kWeightFloor = 1e-6;

/// Weight vectors with their neighborhood structure and the per-subproblem
/// bookkeeping used by dynamic resource allocation: utility values in [0,1]
/// and the last saved best aggregation value of each subproblem.
struct SubproblemSet {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<int>> neighbors;
    std::vector<double> utility;
    std::vector<double> saved_best;
};

/// Inverted Tchebycheff aggregation: max_i |f_i - z*_i| / w_i, with zero
/// weight components floored at 1e-6. Lower is better.
inline double tch(std::span<const double> f, std::span<const double> w,
                  std::span<const double> ideal) {
    double value = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double wi = std::max(w[i], kWeightFloor);
        value = std::max(value, std::abs(f[i] - ideal[i]) / wi);
    }
    return value;
}

/// Euclidean distance from a (normalized) objective vector to the ray
/// spanned by the weight vector.
inline double perp_distance(std::span<const double> fbar, std::span<const double> w) {
    double wf = 0.0, ww = 0.0;
    for (std::size_t i = 0; i < fbar.size(); ++i) {
        wf += w[i] * fbar[i];
        ww += w[i] * w[i];
    }
    double c = wf / ww;
    double d2 = 0.0;
    for (std::size_t i = 0; i < fbar.size(); ++i) {
        double r = fbar[i] - c * w[i];
        d2 += r * r;
    }
    return std::sqrt(d2);
}

namespace detail {

inline void lattice_recurse(int m, int h, int level, int remaining, std::vector<int>& parts,
                            std::vector<std::vector<double>>& out) {
    if (level == m - 1) {
        parts[level] = remaining;
        std::vector<double> w(m);
        for (int i = 0; i < m; ++i) w[i] = static_cast<double>(parts[i]) / h;
        out.push_back(std::move(w));
        return;
    }
    for (int take = 0; take <= remaining; ++take) {
        parts[level] = take;
        lattice_recurse(m, h, level + 1, remaining - take, parts, out);
    }
}

}  // namespace detail

/// All points of the simplex lattice with denominator h: the C(h+m-1, m-1)
/// vectors with components in {0, 1/h, ..., 1} summing to 1.
inline std::vector<std::vector<double>> simplex_lattice(int m, int h) {
    std::vector<std::vector<double>> out;
    std::vector<int> parts(m, 0);
    detail::lattice_recurse(m, h, 0, h, parts, out);
    return out;
}

inline std::size_t simplex_lattice_size(int m, int h) {
    // C(h+m-1, m-1)
    std::size_t value = 1;
    for (int i = 1; i <= m - 1; ++i)
        value = value * static_cast<std::size_t>(h + i) / static_cast<std::size_t>(i);
    return value;
}

/// Uniform weight vectors from one or more lattice layers. Additional layers
/// are shrunk halfway toward the simplex centroid, the usual two-layer
/// construction for many objectives.
inline std::vector<std::vector<double>> generate_weights(int m, const std::vector<int>& layers) {
    if (m < 2) throw std::invalid_argument("generate_weights: need at least two objectives");
    std::vector<std::vector<double>> weights;
    for (std::size_t layer = 0; layer < layers.size(); ++layer) {
        if (layers[layer] < 1) throw std::invalid_argument("generate_weights: lattice resolution must be >= 1");
        auto points = simplex_lattice(m, layers[layer]);
        if (layer > 0) {
            const double shrink = 0.5;
            for (auto& w : points)
                for (double& c : w) c = shrink * c + (1.0 - shrink) / m;
        }
        weights.insert(weights.end(), points.begin(), points.end());
    }
    return weights;
}

/// Exactly n weight vectors for an m-objective run: a single lattice when one
/// fits exactly, a two-layer lattice when that fits exactly, otherwise the
/// largest lattice below n padded with seeded uniform simplex samples.
inline std::vector<std::vector<double>> weights_for_population(int m, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("weights_for_population: population must be positive");
    if (n < m) {  // degenerate test populations: truncated axis lattice
        auto axis = generate_weights(m, {1});
        axis.resize(n);
        return axis;
    }
    int h_max = 1;
    while (simplex_lattice_size(m, h_max + 1) <= static_cast<std::size_t>(n)) ++h_max;
    if (simplex_lattice_size(m, h_max) == static_cast<std::size_t>(n))
        return generate_weights(m, {h_max});

    for (int outer = h_max; outer >= 1; --outer)
        for (int inner = outer; inner >= 1; --inner)
            if (simplex_lattice_size(m, outer) + simplex_lattice_size(m, inner) ==
                static_cast<std::size_t>(n))
                return generate_weights(m, {outer, inner});

    auto weights = generate_weights(m, {h_max});
    while (weights.size() < static_cast<std::size_t>(n)) {
        // Uniform simplex sample via sorted uniforms.
        std::vector<double> cuts(m - 1);
        for (double& c : cuts) c = rng.uniform();
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> w(m);
        double prev = 0.0;
        for (int i = 0; i < m - 1; ++i) {
            w[i] = cuts[i] - prev;
            prev = cuts[i];
        }
        w[m - 1] = 1.0 - prev;
        weights.push_back(std::move(w));
    }
    return weights;
}

/// For each weight vector, the indices of its T nearest weights (itself
/// included) by Euclidean distance, distance ties broken by index.
inline std::vector<std::vector<int>> build_neighborhoods(
    const std::vector<std::vector<double>>& weights, int t) {
    const int n = static_cast<int>(weights.size());
    if (t > n) throw std::invalid_argument("build_neighborhoods: T exceeds the number of weights");
    std::vector<std::vector<int>> neighbors(n);
    std::vector<std::pair<double, int>> dist(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < weights[i].size(); ++k) {
                double d = weights[i][k] - weights[j][k];
                d2 += d * d;
            }
            dist[j] = {d2, j};
        }
        std::partial_sort(dist.begin(), dist.begin() + t, dist.end());
        neighbors[i].reserve(t);
        for (int j = 0; j < t; ++j) neighbors[i].push_back(dist[j].second);
    }
    return neighbors;
}

/// Running ideal point plus the intercepts that scale objectives into the
/// unit range. `ideal` starts at +infinity and only ever decreases.
struct NormalizationContext {
    std::vector<double> ideal;
    std::vector<double> intercepts;

    explicit NormalizationContext(std::size_t m = 0)
        : ideal(m, std::numeric_limits<double>::infinity()), intercepts(m, 1.0) {}
};

/// ideal <- componentwise min(ideal, f).
inline void update_ideal(NormalizationContext& ctx, std::span<const double> f) {
    if (ctx.ideal.empty()) ctx.ideal.assign(f.begin(), f.end());
    for (std::size_t i = 0; i < f.size(); ++i) ctx.ideal[i] = std::min(ctx.ideal[i], f[i]);
}

namespace detail {

// Gaussian elimination with partial pivoting; returns false when the system
// is (near-)singular.
inline bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-12) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
        if (!std::isfinite(x[r])) return false;
    }
    return true;
}

}  // namespace detail

/// Normalize a population of raw objective vectors. The ideal point absorbs
/// the population minimum; per-axis extreme points are picked by minimizing
/// the achievement scalarizing function with an axis weight, and intercepts
/// come from the hyperplane through them. Degenerate hyperplanes fall back to
/// the per-objective population range. Returned vectors are >= 0 and the
/// intercepts are stored back into the context.
inline std::vector<std::vector<double>> normalize(
    const std::vector<std::vector<double>>& objectives, NormalizationContext& ctx) {
    if (objectives.empty()) throw std::invalid_argument("normalize: empty population");
    const std::size_t m = objectives.front().size();
    if (ctx.ideal.size() != m) ctx = NormalizationContext(m);
    for (const auto& f : objectives) update_ideal(ctx, f);

    std::vector<std::vector<double>> shifted(objectives.size(), std::vector<double>(m));
    for (std::size_t i = 0; i < objectives.size(); ++i)
        for (std::size_t j = 0; j < m; ++j) shifted[i][j] = objectives[i][j] - ctx.ideal[j];

    // Extreme point per axis: argmin of max_j shifted_j / w_j with w the
    // axis direction (1e-6 elsewhere). The inputs are pre-scaled by the
    // per-objective population range so the selection, and with it the whole
    // scheme, is exactly equivariant under per-objective rescaling.
    std::vector<double> range(m, 0.0);
    for (const auto& f : shifted)
        for (std::size_t j = 0; j < m; ++j) range[j] = std::max(range[j], f[j]);
    for (double& r : range) r = std::max(r, kWeightFloor);

    std::vector<std::size_t> extreme(m, 0);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < shifted.size(); ++i) {
            double asf = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                asf = std::max(asf, shifted[i][j] / range[j] / (j == axis ? 1.0 : kWeightFloor));
            if (asf < best) {
                best = asf;
                extreme[axis] = i;
            }
        }
    }

    std::vector<double> intercepts;
    bool ok = false;
    {
        std::vector<std::vector<double>> a(m, std::vector<double>(m));
        for (std::size_t r = 0; r < m; ++r) a[r] = shifted[extreme[r]];
        std::vector<double> coeff;
        ok = detail::solve_linear(a, std::vector<double>(m, 1.0), coeff);
        if (ok) {
            intercepts.resize(m);
            for (std::size_t j = 0; j < m; ++j) {
                intercepts[j] = 1.0 / coeff[j];
                if (!std::isfinite(intercepts[j]) || intercepts[j] < kWeightFloor) ok = false;
            }
        }
    }
    if (!ok) {
        intercepts.assign(m, 0.0);
        for (const auto& f : shifted)
            for (std::size_t j = 0; j < m; ++j) intercepts[j] = std::max(intercepts[j], f[j]);
        for (double& v : intercepts) v = std::max(v, kWeightFloor);
    }
    ctx.intercepts = intercepts;

    for (auto& f : shifted)
        for (std::size_t j = 0; j < m; ++j) f[j] /= intercepts[j];
    return shifted;
}

}  // namespace moead
