#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hindex/survival.hpp"
#include "hindex/variance.hpp"

namespace hindex {

// An ordered collection of scholars' citation samples. Ids are unique;
// every sample has at least one paper.
struct Dataset {
    std::vector<CitationSample> scholars;
    std::string source_path;
    std::string format;  // "csv" or "json"
};

enum class DataFormat { csv, json };

// CSV: header "scholar_id,citations", one row per paper. Rows with the same
// id accumulate in row order; scholars keep first-appearance order.
Dataset ingest_csv(std::istream& in, const std::string& source_name);

// JSON: one object mapping scholar_id -> array of nonnegative integers.
// Duplicate keys and empty arrays are rejected.
Dataset ingest_json(std::istream& in, const std::string& source_name);

Dataset ingest(const std::string& path, DataFormat format);

std::string emit_csv(const Dataset& dataset);
std::string emit_json(const Dataset& dataset);

// Precomputed estimates, for comparisons where only (n, h_hat, v_hat)
// summaries exist. Schema: {"scholars": [{"scholar_id", "n", "h_hat",
// "v_hat"}, ...]}; any other top-level keys are ignored.
std::vector<HEstimate> load_estimates_json(std::istream& in, const std::string& source_name);
std::vector<HEstimate> load_estimates_file(const std::string& path);

}  // namespace hindex
