#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

namespace hindex {

// One scholar's citation record: one entry per paper, order as ingested.
struct CitationSample {
    std::string scholar_id;
    std::vector<std::int64_t> counts;

    // Requires at least one paper and nonnegative counts.
    CitationSample(std::string id, std::vector<std::int64_t> citation_counts);

    int n() const { return static_cast<int>(counts.size()); }
};

// Step-function estimate of P(X > x) from a sample. Holds a sorted copy of
// the counts so evaluation is a binary search.
class EmpiricalSurvival {
  public:
    explicit EmpiricalSurvival(const CitationSample& sample);

    int n() const { return static_cast<int>(sorted_.size()); }

    // #{i : counts_i > x}, defined for any integer x.
    std::int64_t count_above(std::int64_t x) const;

    double survival(std::int64_t x) const;

  private:
    std::vector<std::int64_t> sorted_;  // ascending
};

// Fraction of papers with more than x citations.
double empirical_survival(const CitationSample& sample, std::int64_t x);

// Empirical h-index as the largest j such that at least j papers have at
// least j citations; 0 when no paper is cited. Scans a descending sort.
std::int64_t empirical_h_max_form(const CitationSample& sample);

// Equivalent indicator-sum form sum_{j=1..n} 1[S_hat(j-1) >= j/n],
// evaluated in integer arithmetic. Agrees with the max form on every input.
std::int64_t empirical_h_sum_form(const CitationSample& sample);

template <class S>
concept SurvivalFunction = requires(const S& s, std::int64_t x) {
    { s.survival(x) } -> std::convertible_to<double>;
};

// Population h-index of a scholar with n papers under survival function S:
// sum_{j=1..n} 1[S(j-1) >= j/n]. S nonincreasing against the increasing
// threshold j/n makes this the largest qualifying j.
template <SurvivalFunction S>
std::int64_t theoretical_h(const S& s, int n) {
    std::int64_t h = 0;
    for (int j = 1; j <= n; ++j) {
        if (s.survival(j - 1) >= static_cast<double>(j) / n) ++h;
    }
    return h;
}

}  // namespace hindex
