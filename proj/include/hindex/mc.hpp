#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hindex/models.hpp"

namespace hindex {

enum class Target { h, eh };

std::string to_string(Target target);
Target parse_target(const std::string& text);

// A simulation campaign: one model evaluated over a grid of sample sizes.
// Runs are pure functions of the config, root seed included.
struct ExperimentConfig {
    std::string model_spec;
    std::vector<int> n_grid;
    int reps = 0;
    double gamma = 0.05;
    std::uint64_t root_seed = 0;
    Target target = Target::h;
};

// key=value lines; keys: model, n_grid (comma list), reps, gamma, seed,
// target. '#' starts a comment. Throws with the offending key in the message.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);
void validate(const ExperimentConfig& config);

struct CoverageCell {
    std::string model;
    int n = 0;
    int reps = 0;
    double gamma = 0.0;
    Target target = Target::h;
    double coverage = 0.0;
    double mean_width = 0.0;  // set span hi-lo, or interval length
    double mean_h_hat = 0.0;
    double exact_e = 0.0;
    double exact_var = 0.0;
    double mean_v_hat = 0.0;
};

struct CoverageReport {
    std::vector<CoverageCell> cells;
};

// For each n: simulate reps samples, compute the point estimate, the
// variance estimate, and the confidence set for h (or interval for E[H_hat]),
// and report the fraction of replicates that cover the exact target.
// threads <= 0 picks the hardware count; the result is identical for every
// thread count because replicate r always uses substream(cell_base + r) and
// reduction runs in replicate order.
CoverageReport run_coverage(const ExperimentConfig& config, int threads = 0);

std::string coverage_csv(const CoverageReport& report);

struct ConsistencyCell {
    int n = 0;
    int usable_reps = 0;
    double exact_var = 0.0;
    // Absent when the exact variance is zero (degenerate model).
    std::optional<double> median_ratio;
    std::optional<double> iqr_low;
    std::optional<double> iqr_high;
};

struct ConsistencyReport {
    std::string model;
    int reps = 0;
    Condition4 condition4;
    std::vector<ConsistencyCell> cells;
};

// Distribution summary of v_hat / Var[H_hat] per n.
ConsistencyReport run_consistency(const ExperimentConfig& config, int threads = 0);

struct BiasRow {
    int n = 0;
    std::int64_t h = 0;
    double expected_h = 0.0;
    std::optional<double> ratio;  // absent when h = 0
};

struct BiasReport {
    std::string model;
    std::vector<BiasRow> rows;
};

// Exact (simulation-free) comparison of h and E[H_hat] over the n grid.
BiasReport run_bias(const ExperimentConfig& config);

struct HDistribution {
    std::vector<double> pmf;  // index = value of H_hat, 0..n
    double mean = 0.0;
    double variance = 0.0;
};

// Full enumeration of all s^n outcome vectors of a finite-support model,
// weighted by their product probabilities. Rejects instances with s^n > 1e7.
HDistribution enumeration_oracle(const SurvivalModel& model, int n);

}  // namespace hindex
