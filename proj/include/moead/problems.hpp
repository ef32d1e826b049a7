#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace moead {

inline constexpr double kPi = std::numbers::pi;

/// True iff a is componentwise <= b and differs somewhere (minimization).
inline bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dominates: length mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

namespace detail {

inline std::vector<std::vector<double>> pareto_filter(std::vector<std::vector<double>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<std::vector<double>> kept;
    for (const auto& p : pts) {
        bool dominated = false;
        for (const auto& q : pts)
            if (&p != &q && dominates(q, p)) {
                dominated = true;
                break;
            }
        if (!dominated) kept.push_back(p);
    }
    return kept;
}

// Evenly spaced subset of `pts` with at most `count` entries.
inline std::vector<std::vector<double>> thin_to(std::vector<std::vector<double>> pts,
                                                std::size_t count) {
    if (pts.size() <= count) return pts;
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t at = (count == 1) ? 0 : i * (pts.size() - 1) / (count - 1);
        out.push_back(pts[at]);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::vector<double> linspace01(std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i)
        t[i] = (count == 1) ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    return t;
}

// ---------------------------------------------------------------------------
// WFG toolkit transformations and shapes.
// ---------------------------------------------------------------------------

inline double b_poly(double y, double alpha) { return std::pow(y, alpha); }

inline double b_flat(double y, double a, double b, double c) {
    double v = a + std::min(0.0, std::floor(y - b)) * a * (b - y) / b -
               std::min(0.0, std::floor(c - y)) * (1.0 - a) * (y - c) / (1.0 - c);
    return std::clamp(v, 0.0, 1.0);
}

inline double b_param(double y, double u, double a, double b, double c) {
    double v = a - (1.0 - 2.0 * u) * std::abs(std::floor(0.5 - u) + a);
    return std::pow(y, b + (c - b) * v);
}

inline double s_linear(double y, double a) {
    return std::abs(y - a) / std::abs(std::floor(a - y) + a);
}

inline double s_decept(double y, double a, double b, double c) {
    double tmp1 = std::floor(y - a + b) * (1.0 - c + (a - b) / b) / (a - b);
    double tmp2 = std::floor(a + b - y) * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    return 1.0 + (std::abs(y - a) - b) * (tmp1 + tmp2 + 1.0 / b);
}

inline double s_multi(double y, double a, double b, double c) {
    double tmp1 = std::abs(y - c) / (2.0 * (std::floor(c - y) + c));
    double tmp2 = (4.0 * a + 2.0) * kPi * (0.5 - tmp1);
    return (1.0 + std::cos(tmp2) + 4.0 * b * tmp1 * tmp1) / (b + 2.0);
}

inline double r_sum(std::span<const double> y, std::span<const double> w) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        num += w[i] * y[i];
        den += w[i];
    }
    return num / den;
}

inline double r_nonsep(std::span<const double> y, int a) {
    const std::size_t n = y.size();
    double num = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        num += y[j];
        for (int k = 0; k <= a - 2; ++k) num += std::abs(y[j] - y[(j + k + 1) % n]);
    }
    double up = std::ceil(a / 2.0);
    double den = n / static_cast<double>(a) * up * (1.0 + 2.0 * a - 2.0 * up);
    return num / den;
}

// Shape functions over x[0..m-1]; index is the 1-based objective.
inline double shape_linear(std::span<const double> x, int m, int obj) {
    double v = 1.0;
    for (int i = 1; i <= m - obj; ++i) v *= x[i - 1];
    if (obj > 1) v *= 1.0 - x[m - obj];
    return v;
}

inline double shape_convex(std::span<const double> x, int m, int obj) {
    double v = 1.0;
    for (int i = 1; i <= m - obj; ++i) v *= 1.0 - std::cos(x[i - 1] * kPi / 2.0);
    if (obj > 1) v *= 1.0 - std::sin(x[m - obj] * kPi / 2.0);
    return v;
}

inline double shape_concave(std::span<const double> x, int m, int obj) {
    double v = 1.0;
    for (int i = 1; i <= m - obj; ++i) v *= std::sin(x[i - 1] * kPi / 2.0);
    if (obj > 1) v *= std::cos(x[m - obj] * kPi / 2.0);
    return v;
}

inline double shape_mixed(double x1, double a, double alpha) {
    return std::pow(1.0 - x1 - std::cos(2.0 * a * kPi * x1 + kPi / 2.0) / (2.0 * a * kPi), alpha);
}

inline double shape_disc(double x1, double a, double alpha, double beta) {
    double c = std::cos(a * std::pow(x1, beta) * kPi);
    return 1.0 - std::pow(x1, alpha) * c * c;
}

// Shared final step: underlying parameters from the last transition vector,
// then f_m = x_m_last + 2m * h_m. WFG3 degenerates all but the first axis.
inline std::vector<double> wfg_shape_apply(const std::vector<double>& t, int m, int problem) {
    std::vector<double> x(m);
    for (int i = 0; i < m - 1; ++i) {
        double a = (problem == 3 && i > 0) ? 0.0 : 1.0;
        x[i] = std::max(t[m - 1], a) * (t[i] - 0.5) + 0.5;
    }
    x[m - 1] = t[m - 1];

    std::vector<double> f(m);
    for (int obj = 1; obj <= m; ++obj) {
        double h;
        if (problem == 1)
            h = (obj < m) ? shape_convex(x, m, obj) : shape_mixed(x[0], 5.0, 1.0);
        else if (problem == 2)
            h = (obj < m) ? shape_convex(x, m, obj) : shape_disc(x[0], 5.0, 1.0, 1.0);
        else if (problem == 3)
            h = shape_linear(x, m, obj);
        else
            h = shape_concave(x, m, obj);
        f[obj - 1] = x[m - 1] + 2.0 * obj * h;
    }
    return f;
}

inline std::vector<double> wfg_evaluate(int problem, int m, int k, int l,
                                        std::span<const double> z) {
    const int n = k + l;
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = z[i] / (2.0 * (i + 1));

    const double param_a = 0.98 / 49.98, param_b = 0.02, param_c = 50.0;

    switch (problem) {
        case 1: {
            for (int i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
            for (int i = k; i < n; ++i) y[i] = b_flat(y[i], 0.8, 0.75, 0.85);
            for (int i = 0; i < n; ++i) y[i] = b_poly(y[i], 0.02);
            std::vector<double> t(m);
            const int per = k / (m - 1);
            for (int obj = 0; obj < m - 1; ++obj) {
                std::vector<double> w(per);
                for (int j = 0; j < per; ++j) w[j] = 2.0 * (obj * per + j + 1);
                t[obj] = r_sum(std::span(y).subspan(obj * per, per), w);
            }
            std::vector<double> w(l);
            for (int j = 0; j < l; ++j) w[j] = 2.0 * (k + j + 1);
            t[m - 1] = r_sum(std::span(y).subspan(k, l), w);
            return wfg_shape_apply(t, m, problem);
        }
        case 2:
        case 3: {
            for (int i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
            std::vector<double> y2(k + l / 2);
            for (int i = 0; i < k; ++i) y2[i] = y[i];
            for (int i = k; i < k + l / 2; ++i) {
                double pair[2] = {y[k + 2 * (i - k)], y[k + 2 * (i - k) + 1]};
                y2[i] = r_nonsep(pair, 2);
            }
            std::vector<double> t(m);
            const int per = k / (m - 1);
            std::vector<double> ones(std::max(per, l / 2), 1.0);
            for (int obj = 0; obj < m - 1; ++obj)
                t[obj] = r_sum(std::span(y2).subspan(obj * per, per),
                               std::span(ones).subspan(0, per));
            t[m - 1] = r_sum(std::span(y2).subspan(k, l / 2), std::span(ones).subspan(0, l / 2));
            return wfg_shape_apply(t, m, problem);
        }
        case 4:
        case 5: {
            for (int i = 0; i < n; ++i)
                y[i] = (problem == 4) ? s_multi(y[i], 30.0, 10.0, 0.35)
                                      : s_decept(y[i], 0.35, 0.001, 0.05);
            std::vector<double> t(m);
            const int per = k / (m - 1);
            std::vector<double> ones(std::max(per, l), 1.0);
            for (int obj = 0; obj < m - 1; ++obj)
                t[obj] =
                    r_sum(std::span(y).subspan(obj * per, per), std::span(ones).subspan(0, per));
            t[m - 1] = r_sum(std::span(y).subspan(k, l), std::span(ones).subspan(0, l));
            return wfg_shape_apply(t, m, problem);
        }
        case 6: {
            for (int i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
            std::vector<double> t(m);
            const int per = k / (m - 1);
            for (int obj = 0; obj < m - 1; ++obj)
                t[obj] = r_nonsep(std::span(y).subspan(obj * per, per), per);
            t[m - 1] = r_nonsep(std::span(y).subspan(k, l), l);
            return wfg_shape_apply(t, m, problem);
        }
        case 7: {
            std::vector<double> y1 = y;
            for (int i = 0; i < k; ++i) {
                std::vector<double> rest(y.begin() + i + 1, y.end());
                std::vector<double> ones(rest.size(), 1.0);
                y1[i] = b_param(y[i], r_sum(rest, ones), param_a, param_b, param_c);
            }
            y = y1;
            for (int i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
            std::vector<double> t(m);
            const int per = k / (m - 1);
            std::vector<double> ones(std::max(per, l), 1.0);
            for (int obj = 0; obj < m - 1; ++obj)
                t[obj] =
                    r_sum(std::span(y).subspan(obj * per, per), std::span(ones).subspan(0, per));
            t[m - 1] = r_sum(std::span(y).subspan(k, l), std::span(ones).subspan(0, l));
            return wfg_shape_apply(t, m, problem);
        }
        case 8: {
            std::vector<double> y1 = y;
            for (int i = k; i < n; ++i) {
                std::vector<double> head(y.begin(), y.begin() + i);
                std::vector<double> ones(head.size(), 1.0);
                y1[i] = b_param(y[i], r_sum(head, ones), param_a, param_b, param_c);
            }
            y = y1;
            for (int i = k; i < n; ++i) y[i] = s_linear(y[i], 0.35);
            std::vector<double> t(m);
            const int per = k / (m - 1);
            std::vector<double> ones(std::max(per, l), 1.0);
            for (int obj = 0; obj < m - 1; ++obj)
                t[obj] =
                    r_sum(std::span(y).subspan(obj * per, per), std::span(ones).subspan(0, per));
            t[m - 1] = r_sum(std::span(y).subspan(k, l), std::span(ones).subspan(0, l));
            return wfg_shape_apply(t, m, problem);
        }
        case 9: {
            std::vector<double> y1 = y;
            for (int i = 0; i < n - 1; ++i) {
                std::vector<double> rest(y.begin() + i + 1, y.end());
                std::vector<double> ones(rest.size(), 1.0);
                y1[i] = b_param(y[i], r_sum(rest, ones), param_a, param_b, param_c);
            }
            y = y1;
            for (int i = 0; i < k; ++i) y[i] = s_decept(y[i], 0.35, 0.001, 0.05);
            for (int i = k; i < n; ++i) y[i] = s_multi(y[i], 30.0, 95.0, 0.35);
            std::vector<double> t(m);
            const int per = k / (m - 1);
            for (int obj = 0; obj < m - 1; ++obj)
                t[obj] = r_nonsep(std::span(y).subspan(obj * per, per), per);
            t[m - 1] = r_nonsep(std::span(y).subspan(k, l), l);
            return wfg_shape_apply(t, m, problem);
        }
        default:
            throw std::invalid_argument("wfg_evaluate: unknown WFG index");
    }
}

}  // namespace detail

/// A benchmark problem: UF1..UF10 (n=30), MOP1..MOP7 (n=10) or WFG1..WFG9
/// (scalable; m=2 uses k=2,l=4, m>=3 uses k=2(m-1),l=20).
struct ProblemInstance {
    std::string name;
    int m = 2;
    int n = 0;
    int wfg_k = 0;
    int wfg_l = 0;
    std::vector<std::pair<double, double>> bounds;

    enum class Family { uf, mop, wfg } family = Family::uf;
    int index = 0;

    std::vector<double> evaluate(std::span<const double> x) const;
    std::vector<std::vector<double>> sample_pf(std::size_t count) const;
};

inline ProblemInstance make_problem(std::string_view name, int m = 0) {
    ProblemInstance p;
    p.name.assign(name);
    std::transform(p.name.begin(), p.name.end(), p.name.begin(),
                   [](unsigned char c) { return std::toupper(c); });

    auto parse_index = [&](std::size_t prefix_len, int lo, int hi) {
        int idx = 0;
        try {
            idx = std::stoi(p.name.substr(prefix_len));
        } catch (...) {
            throw std::invalid_argument("unknown problem: " + p.name);
        }
        if (idx < lo || idx > hi) throw std::invalid_argument("unknown problem: " + p.name);
        return idx;
    };

    if (p.name.rfind("UF", 0) == 0) {
        p.family = ProblemInstance::Family::uf;
        p.index = parse_index(2, 1, 10);
        p.m = p.index <= 7 ? 2 : 3;
        if (m != 0 && m != p.m)
            throw std::invalid_argument("problem " + p.name + " has a fixed objective count");
        p.n = 30;
        if (p.index == 3) {
            p.bounds.assign(p.n, {0.0, 1.0});
        } else {
            double lo = (p.index == 4) ? -2.0 : -1.0;
            if (p.index >= 8) lo = -2.0;
            p.bounds.assign(p.n, {lo, -lo});
            p.bounds[0] = {0.0, 1.0};
            if (p.index >= 8) p.bounds[1] = {0.0, 1.0};
        }
    } else if (p.name.rfind("MOP", 0) == 0) {
        p.family = ProblemInstance::Family::mop;
        p.index = parse_index(3, 1, 7);
        p.m = p.index <= 5 ? 2 : 3;
        if (m != 0 && m != p.m)
            throw std::invalid_argument("problem " + p.name + " has a fixed objective count");
        p.n = 10;
        p.bounds.assign(p.n, {0.0, 1.0});
    } else if (p.name.rfind("WFG", 0) == 0) {
        p.family = ProblemInstance::Family::wfg;
        p.index = parse_index(3, 1, 9);
        p.m = (m == 0) ? 2 : m;
        if (p.m < 2) throw std::invalid_argument("WFG needs at least two objectives");
        p.wfg_k = (p.m == 2) ? 2 : 2 * (p.m - 1);
        p.wfg_l = (p.m == 2) ? 4 : 20;
        p.n = p.wfg_k + p.wfg_l;
        p.bounds.resize(p.n);
        for (int i = 0; i < p.n; ++i) p.bounds[i] = {0.0, 2.0 * (i + 1)};
    } else {
        throw std::invalid_argument("unknown problem: " + p.name);
    }
    return p;
}

inline std::vector<double> ProblemInstance::evaluate(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument(name + ": decision vector has wrong dimension");
    for (int i = 0; i < n; ++i)
        if (x[i] < bounds[i].first - 1e-9 || x[i] > bounds[i].second + 1e-9)
            throw std::invalid_argument(name + ": decision variable out of bounds");

    if (family == Family::wfg) return detail::wfg_evaluate(index, m, wfg_k, wfg_l, x);

    if (family == Family::uf) {
        if (index <= 7) {
            double x1 = x[0];
            double sum[2] = {0.0, 0.0};
            double prod[2] = {1.0, 1.0};
            int cnt[2] = {0, 0};
            for (int j = 2; j <= n; ++j) {
                int side = (j % 2 == 1) ? 0 : 1;  // J1 odd, J2 even
                double yj;
                switch (index) {
                    case 2: {
                        double a = 0.3 * x1 * x1 * std::cos(24.0 * kPi * x1 + 4.0 * j * kPi / n) +
                                   0.6 * x1;
                        yj = x[j - 1] - a * ((side == 0) ? std::cos(6.0 * kPi * x1 + j * kPi / n)
                                                         : std::sin(6.0 * kPi * x1 + j * kPi / n));
                        break;
                    }
                    case 3:
                        yj = x[j - 1] -
                             std::pow(x1, 0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0)));
                        break;
                    default:
                        yj = x[j - 1] - std::sin(6.0 * kPi * x1 + j * kPi / n);
                }
                double term;
                switch (index) {
                    case 4:
                        term = std::abs(yj) / (1.0 + std::exp(2.0 * std::abs(yj)));
                        break;
                    case 5:
                        term = 2.0 * yj * yj - std::cos(4.0 * kPi * yj) + 1.0;
                        break;
                    default:
                        term = yj * yj;
                }
                sum[side] += term;
                cnt[side] += 1;
                if (index == 3 || index == 6)
                    prod[side] *= std::cos(20.0 * yj * kPi / std::sqrt(static_cast<double>(j)));
            }
            double part[2];
            for (int s = 0; s < 2; ++s) {
                if (index == 3 || index == 6)
                    part[s] = (2.0 / cnt[s]) * (4.0 * sum[s] - 2.0 * prod[s] + 2.0);
                else
                    part[s] = (2.0 / cnt[s]) * sum[s];
            }
            switch (index) {
                case 1:
                case 2:
                case 3:
                    return {x1 + part[0], 1.0 - std::sqrt(x1) + part[1]};
                case 4:
                    return {x1 + part[0], 1.0 - x1 * x1 + part[1]};
                case 5: {
                    double bump = (1.0 / 20.0 + 0.1) * std::abs(std::sin(20.0 * kPi * x1));
                    return {x1 + bump + part[0], 1.0 - x1 + bump + part[1]};
                }
                case 6: {
                    double bump = std::max(0.0, 2.0 * (1.0 / 4.0 + 0.1) * std::sin(4.0 * kPi * x1));
                    return {x1 + bump + part[0], 1.0 - x1 + bump + part[1]};
                }
                case 7: {
                    double root = std::pow(x1, 0.2);
                    return {root + part[0], 1.0 - root + part[1]};
                }
            }
        }
        // UF8..UF10
        double x1 = x[0], x2 = x[1];
        double sum[3] = {0.0, 0.0, 0.0};
        int cnt[3] = {0, 0, 0};
        for (int j = 3; j <= n; ++j) {
            int side = (j % 3 == 1) ? 0 : (j % 3 == 2 ? 1 : 2);
            double yj = x[j - 1] - 2.0 * x2 * std::sin(2.0 * kPi * x1 + j * kPi / n);
            double term = (index == 10) ? 4.0 * yj * yj - std::cos(8.0 * kPi * yj) + 1.0 : yj * yj;
            sum[side] += term;
            cnt[side] += 1;
        }
        double part[3];
        for (int s = 0; s < 3; ++s) part[s] = (2.0 / cnt[s]) * sum[s];
        if (index == 9) {
            double hump = std::max(0.0, 1.1 * (1.0 - 4.0 * (2.0 * x1 - 1.0) * (2.0 * x1 - 1.0)));
            return {(0.5 * (hump + 2.0 * x1)) * x2 + part[0],
                    (0.5 * (hump - 2.0 * x1 + 2.0)) * x2 + part[1], 1.0 - x2 + part[2]};
        }
        return {std::cos(0.5 * kPi * x1) * std::cos(0.5 * kPi * x2) + part[0],
                std::cos(0.5 * kPi * x1) * std::sin(0.5 * kPi * x2) + part[1],
                std::sin(0.5 * kPi * x1) + part[2]};
    }

    // MOP family
    double x1 = x[0];
    if (index <= 5) {
        double acc = 0.0;
        for (int j = 2; j <= n; ++j) {
            double t = x[j - 1] - std::sin(0.5 * kPi * x1);
            if (index == 1 || index == 5)
                acc += -0.9 * t * t + std::pow(std::abs(t), 0.6);
            else
                acc += std::abs(t) / (1.0 + std::exp(5.0 * std::abs(t)));
        }
        double g;
        switch (index) {
            case 1: g = 2.0 * std::sin(kPi * x1) * acc; break;
            case 2: g = 10.0 * std::sin(kPi * x1) * acc; break;
            case 3: g = 10.0 * std::sin(0.5 * kPi * x1) * acc; break;
            case 4: g = 10.0 * std::sin(kPi * x1) * acc; break;
            default: g = 2.0 * std::abs(std::cos(kPi * x1)) * acc; break;
        }
        switch (index) {
            case 1:
            case 5:
                return {(1.0 + g) * x1, (1.0 + g) * (1.0 - std::sqrt(x1))};
            case 2:
                return {(1.0 + g) * x1, (1.0 + g) * (1.0 - x1 * x1)};
            case 3:
                return {(1.0 + g) * std::cos(0.5 * kPi * x1), (1.0 + g) * std::sin(0.5 * kPi * x1)};
            default: {
                double c = std::cos(2.0 * kPi * x1);
                return {(1.0 + g) * x1, (1.0 + g) * (1.0 - std::sqrt(x1) * c * c)};
            }
        }
    }
    double x2 = x[1];
    double acc = 0.0;
    for (int j = 3; j <= n; ++j) {
        double t = x[j - 1] - x1 * x2;
        acc += -0.9 * t * t + std::pow(std::abs(t), 0.6);
    }
    double g = 2.0 * std::sin(kPi * x1) * acc;
    if (index == 6)
        return {(1.0 + g) * x1 * x2, (1.0 + g) * x1 * (1.0 - x2), (1.0 + g) * (1.0 - x1)};
    return {(1.0 + g) * std::cos(0.5 * kPi * x1) * std::cos(0.5 * kPi * x2),
            (1.0 + g) * std::cos(0.5 * kPi * x1) * std::sin(0.5 * kPi * x2),
            (1.0 + g) * std::sin(0.5 * kPi * x1)};
}

namespace detail {

// Simplex-lattice directions for 3-objective fronts: plane points directly,
// or radially normalized onto the unit sphere octant.
inline std::vector<std::vector<double>> simplex_points(int m, std::size_t count) {
    int h = 1;
    auto size_of = [m](int hh) {
        std::size_t v = 1;
        for (int i = 1; i <= m - 1; ++i) v = v * (hh + i) / i;
        return v;
    };
    if (count < static_cast<std::size_t>(m)) {
        return {std::vector<double>(m, 1.0 / m)};
    }
    while (size_of(h + 1) <= count) ++h;
    std::vector<std::vector<double>> out;
    std::vector<int> parts(m, 0);
    // reuse the decomposition enumeration shape: compositions of h
    struct Rec {
        int m, h;
        std::vector<std::vector<double>>& out;
        void go(int level, int remaining, std::vector<int>& parts) {
            if (level == m - 1) {
                parts[level] = remaining;
                std::vector<double> w(m);
                for (int i = 0; i < m; ++i) w[i] = static_cast<double>(parts[i]) / h;
                out.push_back(std::move(w));
                return;
            }
            for (int take = 0; take <= remaining; ++take) {
                parts[level] = take;
                go(level + 1, remaining - take, parts);
            }
        }
    } rec{m, h, out};
    rec.go(0, h, parts);
    return out;
}

inline std::vector<std::vector<double>> sphere_octant(int m, std::size_t count) {
    auto pts = simplex_points(m, count);
    for (auto& p : pts) {
        double norm = 0.0;
        for (double c : p) norm += c * c;
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            p.assign(m, 1.0 / std::sqrt(static_cast<double>(m)));
        } else {
            for (double& c : p) c /= norm;
        }
    }
    return pts;
}

}  // namespace detail

inline std::vector<std::vector<double>> ProblemInstance::sample_pf(std::size_t count) const {
    if (count < 1) throw std::invalid_argument("sample_pf: count must be positive");
    std::vector<std::vector<double>> pf;

    if (family == Family::uf) {
        switch (index) {
            case 1:
            case 2:
            case 3:
                for (double t : detail::linspace01(count)) pf.push_back({t * t, 1.0 - t});
                return pf;
            case 4:
                for (double t : detail::linspace01(count)) pf.push_back({t, 1.0 - t * t});
                return pf;
            case 5: {
                std::vector<std::vector<double>> atoms;
                for (int i = 0; i <= 20; ++i)
                    atoms.push_back({i / 20.0, 1.0 - i / 20.0});
                return detail::thin_to(std::move(atoms), count);
            }
            case 6: {
                pf.push_back({0.0, 1.0});
                if (count > 1) {
                    std::size_t seg = count - 1;
                    std::size_t first = seg / 2 + seg % 2;
                    for (double t : detail::linspace01(first))
                        pf.push_back({0.25 + 0.25 * t, 0.75 - 0.25 * t});
                    for (double t : detail::linspace01(seg - first))
                        pf.push_back({0.75 + 0.25 * t, 0.25 - 0.25 * t});
                }
                return pf;
            }
            case 7:
                for (double t : detail::linspace01(count)) pf.push_back({t, 1.0 - t});
                return pf;
            case 8:
            case 10:
                return detail::sphere_octant(3, count);
            case 9: {
                // plane f1+f2+f3 = 1 restricted to x1 in [0,1/4] u [3/4,1]
                std::size_t side = std::max<std::size_t>(2, static_cast<std::size_t>(
                    std::sqrt(static_cast<double>(count) / 2.0)));
                for (int part = 0; part < 2; ++part) {
                    double lo = part == 0 ? 0.0 : 0.75, hi = part == 0 ? 0.25 : 1.0;
                    for (double a : detail::linspace01(side))
                        for (double b : detail::linspace01(side)) {
                            double x1 = lo + (hi - lo) * a;
                            pf.push_back({x1 * b, (1.0 - x1) * b, 1.0 - b});
                        }
                }
                return detail::thin_to(detail::pareto_filter(std::move(pf)), count);
            }
        }
    }

    if (family == Family::mop) {
        switch (index) {
            case 1:
            case 5:
                for (double t : detail::linspace01(count)) pf.push_back({t * t, 1.0 - t});
                return pf;
            case 2:
                for (double t : detail::linspace01(count)) pf.push_back({t, 1.0 - t * t});
                return pf;
            case 3:
                for (double t : detail::linspace01(count))
                    pf.push_back({std::cos(0.5 * kPi * t), std::sin(0.5 * kPi * t)});
                return pf;
            case 4: {
                for (double t : detail::linspace01(8 * count + 1)) {
                    double c = std::cos(2.0 * kPi * t);
                    pf.push_back({t, 1.0 - std::sqrt(t) * c * c});
                }
                return detail::thin_to(detail::pareto_filter(std::move(pf)), count);
            }
            case 6:
                return detail::simplex_points(3, count);
            case 7:
                return detail::sphere_octant(3, count);
        }
    }

    // WFG: parameterize the shape surface at the optimal distance value.
    const int mm = m;
    auto eval_shape = [&](const std::vector<double>& xfront) {
        std::vector<double> t(mm, 0.0);
        for (int i = 0; i < mm - 1; ++i) t[i] = xfront[i];
        // t[m-1] = 0 on the front
        return detail::wfg_shape_apply(t, mm, index);
    };
    if (mm == 2) {
        std::size_t grid = (index == 1 || index == 2) ? 8 * count + 1 : count;
        for (double t : detail::linspace01(grid)) pf.push_back(eval_shape({t}));
        if (index == 1 || index == 2) pf = detail::thin_to(detail::pareto_filter(std::move(pf)), count);
        return pf;
    }
    if (index >= 4) {  // concave: scaled sphere octant
        pf = detail::sphere_octant(mm, count);
        for (auto& p : pf)
            for (int i = 0; i < mm; ++i) p[i] *= 2.0 * (i + 1);
        return pf;
    }
    if (index == 3) {  // degenerate line
        for (double t : detail::linspace01(count))
            pf.push_back(eval_shape(std::vector<double>(static_cast<std::size_t>(mm - 1), t)));
        return pf;
    }
    // WFG1/WFG2 with m >= 3: grid over the position parameters + filter
    std::size_t side = 2;
    while (std::pow(static_cast<double>(side + 1), mm - 1) <= 4.0 * static_cast<double>(count))
        ++side;
    std::vector<double> axis = detail::linspace01(side);
    std::vector<std::size_t> idx(mm - 1, 0);
    while (true) {
        std::vector<double> xfront(mm - 1);
        for (int i = 0; i < mm - 1; ++i) xfront[i] = axis[idx[i]];
        pf.push_back(eval_shape(xfront));
        int level = 0;
        while (level < mm - 1 && ++idx[level] == side) idx[level++] = 0;
        if (level == mm - 1) break;
    }
    return detail::thin_to(detail::pareto_filter(std::move(pf)), count);
}

/// Cached PF samples shared across runs (thread safe).
inline const std::vector<std::vector<double>>& pf_reference(const ProblemInstance& p,
                                                            std::size_t count) {
    static std::map<std::pair<std::string, std::size_t>, std::vector<std::vector<double>>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(p.name + "_m" + std::to_string(p.m), count);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, p.sample_pf(count)).first;
    return it->second;
}

/// Default metric-space PF sample size: fine enough that IGD resolution is
/// far below the differences the experiments report.
inline std::size_t default_pf_count(int m) { return m == 2 ? 1000 : 10000; }

}  // namespace moead
