#include "hindex/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hindex/confidence.hpp"
#include "hindex/moments.hpp"
#include "hindex/variance.hpp"

namespace hindex {
namespace {

[[noreturn]] void bad_config(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config key '" + key + "': " + why);
}

// Static block partition over [0, count); each worker owns its slots, the
// caller reduces in index order afterwards.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = std::min(threads, count > 0 ? count : 1);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (int i = begin; i < end; ++i) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

CitationSample draw_sample(const SurvivalModel& model, int n, RngStream& rng) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n));
    for (auto& c : counts) c = model.sample(rng);
    return CitationSample("", std::move(counts));
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

}  // namespace

std::string to_string(Target target) { return target == Target::h ? "h" : "eh"; }

Target parse_target(const std::string& text) {
    if (text == "h") return Target::h;
    if (text == "eh") return Target::eh;
    throw std::invalid_argument("target must be 'h' or 'eh', got '" + text + "'");
}

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig config;
    bool saw_model = false, saw_n_grid = false, saw_reps = false, saw_seed = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const std::size_t eq = line.find('=', first);
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value");
        }
        auto trim = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t");
            const std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto to_int = [&](const std::string& text) -> int {
            try {
                std::size_t pos = 0;
                const int v = std::stoi(text, &pos);
                if (pos != text.size()) throw std::invalid_argument("");
                return v;
            } catch (const std::exception&) {
                bad_config(key, "cannot parse value '" + text + "'");
            }
        };
        if (key == "model") {
            config.model_spec = value;
            saw_model = true;
        } else if (key == "n_grid") {
            config.n_grid.clear();
            std::stringstream ss(value);
            std::string part;
            while (std::getline(ss, part, ',')) {
                config.n_grid.push_back(to_int(part));
            }
            saw_n_grid = true;
        } else if (key == "reps") {
            config.reps = to_int(value);
            saw_reps = true;
        } else if (key == "gamma") {
            try {
                std::size_t pos = 0;
                config.gamma = std::stod(value, &pos);
                if (pos != value.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                bad_config(key, "cannot parse value '" + value + "'");
            }
        } else if (key == "seed") {
            try {
                std::size_t pos = 0;
                config.root_seed = std::stoull(value, &pos);
                if (pos != value.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                bad_config(key, "cannot parse value '" + value + "'");
            }
            saw_seed = true;
        } else if (key == "target") {
            try {
                config.target = parse_target(value);
            } catch (const std::exception&) {
                bad_config(key, "must be 'h' or 'eh', got '" + value + "'");
            }
        } else {
            bad_config(key, "unknown key");
        }
    }
    if (!saw_model) bad_config("model", "missing");
    if (!saw_n_grid) bad_config("n_grid", "missing");
    if (!saw_reps) bad_config("reps", "missing");
    if (!saw_seed) bad_config("seed", "missing");
    validate(config);
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_experiment_config(in);
}

void validate(const ExperimentConfig& config) {
    SurvivalModel::parse(config.model_spec);  // throws on a bad spec
    if (config.n_grid.empty()) bad_config("n_grid", "must list at least one sample size");
    for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
        if (config.n_grid[i] < 1) bad_config("n_grid", "sample sizes must be positive");
        if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
            bad_config("n_grid", "must be strictly increasing");
        }
    }
    if (config.reps < 100) bad_config("reps", "need at least 100 replicates");
    if (!(config.gamma > 0.0 && config.gamma < 1.0)) {
        bad_config("gamma", "must lie strictly in (0, 1)");
    }
}

namespace {

struct ReplicateResult {
    std::int64_t h_hat = 0;
    double v_hat = 0.0;
    bool covered = false;
    double width = 0.0;
};

}  // namespace

CoverageReport run_coverage(const ExperimentConfig& config, int threads) {
    validate(config);
    const SurvivalModel model = SurvivalModel::parse(config.model_spec);
    CoverageReport report;
    for (std::size_t cell_idx = 0; cell_idx < config.n_grid.size(); ++cell_idx) {
        const int n = config.n_grid[cell_idx];
        const MomentPair exact = exact_moments(model, n);
        const std::int64_t h_true = theoretical_h(model, n);
        const std::uint64_t cell_base =
            static_cast<std::uint64_t>(cell_idx) * static_cast<std::uint64_t>(config.reps);

        std::vector<ReplicateResult> slots(static_cast<std::size_t>(config.reps));
        parallel_for(config.reps, threads, [&](int r) {
            RngStream rng = RngStream::substream(
                config.root_seed, cell_base + static_cast<std::uint64_t>(r));
            const CitationSample sample = draw_sample(model, n, rng);
            const HEstimate est = estimate(sample);
            ReplicateResult& slot = slots[static_cast<std::size_t>(r)];
            slot.h_hat = est.h_hat;
            slot.v_hat = est.v_hat;
            if (config.target == Target::h) {
                const IntegerConfidenceSet set = confidence_set_h(est, config.gamma);
                slot.covered = set.contains(h_true);
                slot.width = static_cast<double>(set.hi - set.lo);
            } else {
                const RealConfidenceInterval iv = confidence_interval_eh(est, config.gamma);
                slot.covered = iv.contains(exact.expectation);
                slot.width = iv.hi - iv.lo;
            }
        });

        CoverageCell cell;
        cell.model = config.model_spec;
        cell.n = n;
        cell.reps = config.reps;
        cell.gamma = config.gamma;
        cell.target = config.target;
        cell.exact_e = exact.expectation;
        cell.exact_var = exact.variance;
        std::int64_t hits = 0;
        double width_sum = 0.0, h_sum = 0.0, v_sum = 0.0;
        for (const ReplicateResult& slot : slots) {  // fixed order
            hits += slot.covered ? 1 : 0;
            width_sum += slot.width;
            h_sum += static_cast<double>(slot.h_hat);
            v_sum += slot.v_hat;
        }
        const double reps = static_cast<double>(config.reps);
        cell.coverage = static_cast<double>(hits) / reps;
        cell.mean_width = width_sum / reps;
        cell.mean_h_hat = h_sum / reps;
        cell.mean_v_hat = v_sum / reps;
        report.cells.push_back(std::move(cell));
    }
    return report;
}

std::string coverage_csv(const CoverageReport& report) {
    std::string out =
        "model,n,reps,gamma,target,coverage,mean_width,mean_h_hat,exact_e,exact_var,mean_v_hat\n";
    for (const CoverageCell& c : report.cells) {
        out += c.model;
        out += ',' + std::to_string(c.n);
        out += ',' + std::to_string(c.reps);
        out += ',' + format_fixed(c.gamma, 4);
        out += ',' + to_string(c.target);
        out += ',' + format_fixed(c.coverage, 6);
        out += ',' + format_fixed(c.mean_width, 6);
        out += ',' + format_fixed(c.mean_h_hat, 6);
        out += ',' + format_fixed(c.exact_e, 6);
        out += ',' + format_fixed(c.exact_var, 6);
        out += ',' + format_fixed(c.mean_v_hat, 6);
        out += '\n';
    }
    return out;
}

ConsistencyReport run_consistency(const ExperimentConfig& config, int threads) {
    validate(config);
    const SurvivalModel model = SurvivalModel::parse(config.model_spec);
    ConsistencyReport report;
    report.model = config.model_spec;
    report.reps = config.reps;
    report.condition4 = model.condition4();
    for (std::size_t cell_idx = 0; cell_idx < config.n_grid.size(); ++cell_idx) {
        const int n = config.n_grid[cell_idx];
        ConsistencyCell cell;
        cell.n = n;
        cell.exact_var = exact_variance(model, n);
        if (cell.exact_var > 0.0) {
            const std::uint64_t cell_base = static_cast<std::uint64_t>(cell_idx) *
                                            static_cast<std::uint64_t>(config.reps);
            std::vector<double> ratios(static_cast<std::size_t>(config.reps));
            parallel_for(config.reps, threads, [&](int r) {
                RngStream rng = RngStream::substream(
                    config.root_seed, cell_base + static_cast<std::uint64_t>(r));
                const CitationSample sample = draw_sample(model, n, rng);
                ratios[static_cast<std::size_t>(r)] = v_hat(sample) / cell.exact_var;
            });
            std::sort(ratios.begin(), ratios.end());
            cell.usable_reps = config.reps;
            cell.median_ratio = quantile_sorted(ratios, 0.5);
            cell.iqr_low = quantile_sorted(ratios, 0.25);
            cell.iqr_high = quantile_sorted(ratios, 0.75);
        }
        report.cells.push_back(std::move(cell));
    }
    return report;
}

BiasReport run_bias(const ExperimentConfig& config) {
    validate(config);
    const SurvivalModel model = SurvivalModel::parse(config.model_spec);
    BiasReport report;
    report.model = config.model_spec;
    for (int n : config.n_grid) {
        BiasRow row;
        row.n = n;
        row.h = theoretical_h(model, n);
        row.expected_h = exact_expectation(model, n);
        if (row.h > 0) row.ratio = row.expected_h / static_cast<double>(row.h);
        report.rows.push_back(row);
    }
    return report;
}

HDistribution enumeration_oracle(const SurvivalModel& model, int n) {
    if (model.family() != Family::finite_support) {
        throw std::invalid_argument("enumeration_oracle: needs a finite_support model");
    }
    if (n < 1) throw std::invalid_argument("enumeration_oracle: n must be positive");
    const std::vector<double>& pmf = model.pmf();
    const auto s = static_cast<std::int64_t>(pmf.size());
    double outcomes = 1.0;
    for (int i = 0; i < n; ++i) {
        outcomes *= static_cast<double>(s);
        if (outcomes > 1e7) {
            throw std::invalid_argument("enumeration_oracle: instance too large (s^n > 1e7)");
        }
    }

    HDistribution dist;
    dist.pmf.assign(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<std::int64_t> outcome(static_cast<std::size_t>(n), 0);
    CitationSample sample("", outcome);
    while (true) {
        double weight = 1.0;
        for (std::int64_t x : outcome) weight *= pmf[static_cast<std::size_t>(x)];
        sample.counts = outcome;
        const std::int64_t h = empirical_h_max_form(sample);
        dist.pmf[static_cast<std::size_t>(h)] += weight;
        // odometer increment
        int pos = 0;
        while (pos < n) {
            if (++outcome[static_cast<std::size_t>(pos)] < s) break;
            outcome[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    for (std::size_t h = 0; h < dist.pmf.size(); ++h) {
        dist.mean += dist.pmf[h] * static_cast<double>(h);
    }
    for (std::size_t h = 0; h < dist.pmf.size(); ++h) {
        const double d = static_cast<double>(h) - dist.mean;
        dist.variance += dist.pmf[h] * d * d;
    }
    return dist;
}

}  // namespace hindex
