#pragma once

#include <atomic>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "moead/metrics.hpp"
#include "moead/optimizer.hpp"
#include "moead/problems.hpp"

namespace moead {

/// One experiment request. Zero-valued population/budget fields are filled
/// with the benchmark defaults at resolution time.
struct RunSpec {
    std::string problem;
    int m = 0;
    std::string algo = "aoostm";
    int population = 0;
    long long evals = 0;
    std::uint64_t seed = 1;
    int reps = 11;
    long long checkpoint_every = 0;
};

inline int default_population(const ProblemInstance& p) {
    switch (p.family) {
        case ProblemInstance::Family::uf: return p.index <= 7 ? 600 : 1000;
        case ProblemInstance::Family::mop: return p.index <= 5 ? 100 : 300;
        default: break;
    }
    switch (p.m) {
        case 2: return 250;
        case 3: return 91;
        case 5: return 210;
        case 8: return 156;
        case 10: return 275;
        default:
            throw std::invalid_argument(
                "no default population for WFG with m=" + std::to_string(p.m) +
                "; pass --pop explicitly");
    }
}

inline long long default_budget(const ProblemInstance& p, int population) {
    if (p.family != ProblemInstance::Family::wfg) return 300000;
    if (p.m == 2) return 25000;
    // many-objective runs scale the budget with the population
    return static_cast<long long>(default_population(p)) * population;
}

/// Resolve a spec into a concrete optimizer configuration for one repetition
/// (seed offset by the repetition index).
inline OptimizerConfig resolve_config(const RunSpec& spec, int rep = 0) {
    OptimizerConfig cfg;
    cfg.problem = make_problem(spec.problem, spec.m);
    cfg.algorithm = parse_algorithm(spec.algo);
    cfg.population = spec.population > 0 ? spec.population : default_population(cfg.problem);
    cfg.budget = spec.evals > 0 ? spec.evals : default_budget(cfg.problem, cfg.population);
    if (cfg.budget < cfg.population)
        throw std::invalid_argument("evaluation budget is below the population size");
    cfg.seed = spec.seed + static_cast<std::uint64_t>(rep);
    cfg.checkpoint_every = spec.checkpoint_every;

    const bool wfg = cfg.problem.family == ProblemInstance::Family::wfg;
    cfg.use_sbx = wfg && cfg.problem.m >= 3;
    cfg.variation.cr = wfg ? 0.5 : 1.0;
    cfg.variation.f = 0.5;
    cfg.variation.p_c = 1.0;
    cfg.variation.eta_c = 30.0;
    cfg.variation.p_m = 1.0 / cfg.problem.n;
    cfg.variation.eta_m = 20.0;
    return cfg;
}

// ---------------------------------------------------------------------------
// Config files: flat key=value lines, one [section] per experiment.
// ---------------------------------------------------------------------------

inline std::vector<RunSpec> parse_config(std::istream& in) {
    std::vector<RunSpec> specs;
    std::string line;
    int line_no = 0;
    bool in_section = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string text = line.substr(first, last - first + 1);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;

        if (text.front() == '[') {
            if (text.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": malformed section header");
            specs.emplace_back();
            in_section = true;
            continue;
        }
        if (!in_section)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": key outside any [experiment] section");
        auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        RunSpec& spec = specs.back();

        auto parse_ll = [&](const std::string& v) {
            long long out = 0;
            auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
            if (ec != std::errc() || p != v.data() + v.size())
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": invalid number '" + v + "'");
            return out;
        };
        if (key == "problem")
            spec.problem = value;
        else if (key == "m")
            spec.m = static_cast<int>(parse_ll(value));
        else if (key == "algo")
            spec.algo = value;
        else if (key == "pop")
            spec.population = static_cast<int>(parse_ll(value));
        else if (key == "evals")
            spec.evals = parse_ll(value);
        else if (key == "seed")
            spec.seed = static_cast<std::uint64_t>(parse_ll(value));
        else if (key == "reps")
            spec.reps = static_cast<int>(parse_ll(value));
        else if (key == "checkpoint-every")
            spec.checkpoint_every = parse_ll(value);
        else
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
    }
    for (const auto& spec : specs) {
        if (spec.problem.empty()) throw std::invalid_argument("config: experiment without a problem");
        (void)resolve_config(spec);  // validates problem/algorithm names and numbers
    }
    return specs;
}

inline std::vector<RunSpec> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    return parse_config(in);
}

// ---------------------------------------------------------------------------
// Batch execution.
// ---------------------------------------------------------------------------

struct RunOutcome {
    RunRecord record;
    std::string error;
    bool ok() const { return error.empty(); }
};

inline RunOutcome execute_run(const RunSpec& spec, int rep) {
    RunOutcome outcome;
    try {
        OptimizerConfig cfg = resolve_config(spec, rep);
        ProblemInstance problem = cfg.problem;
        Optimizer opt(std::move(cfg));
        outcome.record = opt.run([&](const std::vector<std::vector<double>>& objs) {
            return score_population(objs, problem);
        });
    } catch (const std::exception& err) {
        outcome.error = err.what();
        outcome.record.problem = spec.problem;
        outcome.record.algorithm = spec.algo;
        outcome.record.seed = spec.seed + static_cast<std::uint64_t>(rep);
    }
    return outcome;
}

/// All repetitions of all specs, `jobs` at a time. Output order is fixed by
/// the spec list (never by completion order), so parallelism does not change
/// any emitted file.
inline std::vector<RunOutcome> run_batch(const std::vector<RunSpec>& specs, int jobs = 1) {
    struct Task {
        const RunSpec* spec;
        int rep;
    };
    std::vector<Task> tasks;
    for (const auto& spec : specs)
        for (int rep = 0; rep < spec.reps; ++rep) tasks.push_back({&spec, rep});

    std::vector<RunOutcome> outcomes(tasks.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        while (true) {
            std::size_t at = cursor.fetch_add(1);
            if (at >= tasks.size()) break;
            outcomes[at] = execute_run(*tasks[at].spec, tasks[at].rep);
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> threads;
    for (int t = 1; t < jobs; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    return outcomes;
}

// ---------------------------------------------------------------------------
// Aggregation.
// ---------------------------------------------------------------------------

struct CellStats {
    std::string problem;
    std::string algorithm;
    int runs = 0;
    double igd_mean = 0, igd_std = 0, hv_mean = 0, hv_std = 0;
    int igd_rank = 0, hv_rank = 0;
};

struct ResultTable {
    std::vector<CellStats> cells;           // grouped by problem, algorithm
    std::vector<std::string> algorithms;    // in first-seen order
    std::vector<int> igd_total_rank, hv_total_rank;
    std::vector<int> igd_final_rank, hv_final_rank;
};

inline double final_igd(const RunRecord& rec) {
    return rec.checkpoints.empty() ? std::numeric_limits<double>::quiet_NaN()
                                   : rec.checkpoints.back().igd_value;
}
inline double final_hv(const RunRecord& rec) {
    return rec.checkpoints.empty() ? std::numeric_limits<double>::quiet_NaN()
                                   : rec.checkpoints.back().hv_value;
}

inline ResultTable aggregate(const std::vector<RunOutcome>& outcomes) {
    ResultTable table;
    std::vector<std::string> problems;
    std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
    for (const auto& outcome : outcomes) {
        if (!outcome.ok()) continue;
        const auto& rec = outcome.record;
        auto key = std::make_pair(rec.problem, rec.algorithm);
        if (groups.find(key) == groups.end()) {
            if (std::find(problems.begin(), problems.end(), rec.problem) == problems.end())
                problems.push_back(rec.problem);
            if (std::find(table.algorithms.begin(), table.algorithms.end(), rec.algorithm) ==
                table.algorithms.end())
                table.algorithms.push_back(rec.algorithm);
        }
        groups[key].push_back(&rec);
    }
    if (groups.empty()) return table;

    auto stats = [](const std::vector<double>& values) {
        double mean = 0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0;
        for (double v : values) var += (v - mean) * (v - mean);
        return std::make_pair(mean, std::sqrt(var / static_cast<double>(values.size())));
    };

    table.igd_total_rank.assign(table.algorithms.size(), 0);
    table.hv_total_rank.assign(table.algorithms.size(), 0);
    for (const auto& problem : problems) {
        std::vector<CellStats> row;
        for (const auto& algo : table.algorithms) {
            auto it = groups.find({problem, algo});
            if (it == groups.end()) continue;
            CellStats cell;
            cell.problem = problem;
            cell.algorithm = algo;
            cell.runs = static_cast<int>(it->second.size());
            std::vector<double> igds, hvs;
            for (const auto* rec : it->second) {
                igds.push_back(final_igd(*rec));
                hvs.push_back(final_hv(*rec));
            }
            std::tie(cell.igd_mean, cell.igd_std) = stats(igds);
            std::tie(cell.hv_mean, cell.hv_std) = stats(hvs);
            row.push_back(std::move(cell));
        }
        // rank of means: ascending for IGD, descending for HV, ties keep the
        // listed algorithm order (stable sort over first-seen order)
        std::vector<std::size_t> order(row.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return row[a].igd_mean < row[b].igd_mean;
        });
        for (std::size_t r = 0; r < order.size(); ++r) row[order[r]].igd_rank = static_cast<int>(r) + 1;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return row[a].hv_mean > row[b].hv_mean;
        });
        for (std::size_t r = 0; r < order.size(); ++r) row[order[r]].hv_rank = static_cast<int>(r) + 1;

        for (auto& cell : row) {
            auto at = std::find(table.algorithms.begin(), table.algorithms.end(), cell.algorithm) -
                      table.algorithms.begin();
            table.igd_total_rank[at] += cell.igd_rank;
            table.hv_total_rank[at] += cell.hv_rank;
            table.cells.push_back(std::move(cell));
        }
    }

    auto final_ranks = [&](const std::vector<int>& totals) {
        std::vector<std::size_t> order(totals.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return totals[a] < totals[b]; });
        std::vector<int> ranks(totals.size());
        for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<int>(r) + 1;
        return ranks;
    };
    table.igd_final_rank = final_ranks(table.igd_total_rank);
    table.hv_final_rank = final_ranks(table.hv_total_rank);
    return table;
}

/// P(A_i) = number of algorithms that outperform A_i. The matrix must have a
/// zero diagonal; outperform[i][j] means A_i is outperformed by A_j.
inline std::vector<int> performance_score(const std::vector<std::vector<bool>>& outperform) {
    std::vector<int> scores(outperform.size(), 0);
    for (std::size_t i = 0; i < outperform.size(); ++i) {
        if (outperform[i].size() != outperform.size())
            throw std::invalid_argument("performance_score: matrix must be square");
        if (outperform[i][i]) throw std::invalid_argument("performance_score: nonzero diagonal");
        for (std::size_t j = 0; j < outperform.size(); ++j)
            if (j != i && outperform[i][j]) ++scores[i];
    }
    return scores;
}

/// Non-statistical outperformance heuristic: a strictly better mean counts
/// as outperforming.
inline std::vector<std::vector<bool>> outperform_from_means(const std::vector<double>& means,
                                                            bool lower_is_better = true) {
    const std::size_t k = means.size();
    std::vector<std::vector<bool>> matrix(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) matrix[i][j] = lower_is_better ? means[j] < means[i] : means[j] > means[i];
    return matrix;
}

// ---------------------------------------------------------------------------
// Emission: shortest round-trip decimals, stable layouts.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline void write_points_csv(const std::filesystem::path& path,
                             const std::vector<std::vector<double>>& points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& point : points) {
        for (std::size_t i = 0; i < point.size(); ++i) {
            if (i) out << ',';
            out << format_double(point[i]);
        }
        out << '\n';
    }
}

inline std::vector<std::vector<double>> read_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::vector<std::vector<double>> points;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> point;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                             : comma - start);
            double v = 0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc()) throw std::runtime_error("bad number in " + path.string());
            point.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        points.push_back(std::move(point));
    }
    return points;
}

inline std::uint64_t config_hash(const RunRecord& rec) {
    std::string text = rec.problem + "|" + std::to_string(rec.m) + "|" + rec.algorithm + "|" +
                       std::to_string(rec.population) + "|" + std::to_string(rec.budget);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// summary.csv, runs.csv, per-run plot files and per-problem PF samples.
inline void emit_results(const ResultTable& table, const std::vector<RunOutcome>& outcomes,
                         const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    fs::create_directories(out_dir / "plot");
    fs::create_directories(out_dir / "pf");

    {
        std::ofstream out(out_dir / "summary.csv", std::ios::binary);
        out << "problem,algorithm,metric,mean,std,rank,runs\n";
        for (const auto& cell : table.cells)
            out << cell.problem << ',' << cell.algorithm << ",igd," << format_double(cell.igd_mean)
                << ',' << format_double(cell.igd_std) << ',' << cell.igd_rank << ',' << cell.runs
                << '\n';
        for (const auto& cell : table.cells)
            out << cell.problem << ',' << cell.algorithm << ",hv," << format_double(cell.hv_mean)
                << ',' << format_double(cell.hv_std) << ',' << cell.hv_rank << ',' << cell.runs
                << '\n';
    }
    {
        std::ofstream out(out_dir / "runs.csv", std::ios::binary);
        out << "config,seed,final_igd,final_hv,wall_ms\n";
        for (const auto& outcome : outcomes) {
            if (!outcome.ok()) {
                out << "error:" << outcome.record.problem << '_' << outcome.record.algorithm << ','
                    << outcome.record.seed << ",,," << '\n';
                continue;
            }
            const auto& rec = outcome.record;
            out << config_hash(rec) << ',' << rec.seed << ',' << format_double(final_igd(rec))
                << ',' << format_double(final_hv(rec)) << ',' << format_double(rec.wall_ms)
                << '\n';
        }
    }
    for (const auto& outcome : outcomes) {
        if (!outcome.ok()) continue;
        const auto& rec = outcome.record;
        write_points_csv(out_dir / "plot" /
                             (rec.problem + "_" + rec.algorithm + "_" + std::to_string(rec.seed) +
                              ".csv"),
                         rec.final_objectives);
    }
    std::map<std::string, std::pair<std::string, int>> seen;
    for (const auto& outcome : outcomes)
        if (outcome.ok()) seen.emplace(outcome.record.problem,
                                       std::make_pair(outcome.record.problem, outcome.record.m));
    for (const auto& [name, info] : seen) {
        auto problem = make_problem(info.first, info.second);
        write_points_csv(out_dir / "pf" / (name + ".csv"),
                         pf_reference(problem, default_pf_count(problem.m)));
    }
}

}  // namespace moead
