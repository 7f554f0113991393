#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hindex/dataset.hpp"
#include "hindex/mc.hpp"

namespace hindex {

enum class ReportFormat { markdown, csv, json };

ReportFormat parse_report_format(const std::string& text);

// Estimates sorted for reporting: h_hat descending, ties by scholar_id.
std::vector<HEstimate> sort_estimates(std::vector<HEstimate> estimates);

// One row per scholar: id, n, h_hat, v_hat and the confidence set for h
// (target h) or interval for E[H_hat] (target eh). Empty datasets produce a
// report with no rows.
std::string cmd_estimate(const Dataset& dataset, double gamma, Target target,
                         ReportFormat format);

// All k(k-1)/2 pairwise simultaneous sets (or intervals) over the sorted
// scholars, plus the statistically strict orderings. Estimates may come
// from a dataset or be precomputed.
std::string cmd_compare(std::vector<HEstimate> estimates, double gamma, Target target,
                        ReportFormat format);
std::string cmd_compare(const Dataset& dataset, double gamma, Target target,
                        ReportFormat format);

// Runs the coverage experiment in the config file and writes the CSV to
// out_path atomically (no partial file on failure). seed_override replaces
// the config's seed when set.
void cmd_simulate(const std::string& config_path, const std::string& out_path,
                  int threads = 0, std::optional<std::uint64_t> seed_override = {});

// Atomic file write: stage into a temporary sibling, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hindex
