#pragma once

#include <cstdint>
#include <vector>

#include "hindex/variance.hpp"

namespace hindex {

// Inverse standard-normal CDF. Rational minimax approximation (Wichura's
// AS 241, PPND16 coefficients); absolute error well below 1e-9 on (0, 1).
double normal_quantile(double q);

// Integer closest to x, rounding half away from zero on ties.
std::int64_t nearest_integer(double x);

// Contiguous integer range {lo, ..., hi}.
struct IntegerConfidenceSet {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    double level = 0.0;

    bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
};

// Open real interval (lo, hi); degenerate (lo == hi) when the variance
// estimate is zero.
struct RealConfidenceInterval {
    double lo = 0.0;
    double hi = 0.0;
    double level = 0.0;

    bool contains(double v) const { return lo < v && v < hi; }
};

// Per-comparison level for k(k-1)/2 jointly conservative pairwise sets.
struct SidakPlan {
    int k = 0;
    std::int64_t k_star = 0;
    double gamma = 0.0;
    double gamma_star = 0.0;  // (1 + (1-gamma)^(1/k_star)) / 2
};

SidakPlan sidak_plan(int k, double gamma);

// Confidence set for the integer-valued h: endpoints are h_hat -+ z*sqrt(v),
// rounded to the nearest integer, lower end clamped at 0.
IntegerConfidenceSet confidence_set_h(const HEstimate& est, double gamma);

// Confidence interval for the real-valued E[H_hat]: open, unrounded,
// unclamped.
RealConfidenceInterval confidence_interval_eh(const HEstimate& est, double gamma);

// One pairwise comparison; j and l are 1-based positions in the input list,
// l > j, matching the scholar ordering the caller established.
struct PairwiseSet {
    int j = 0;
    int l = 0;
    IntegerConfidenceSet set;
};

struct PairwiseInterval {
    int j = 0;
    int l = 0;
    RealConfidenceInterval interval;
};

// Simultaneous sets for all differences h_j - h_l, centered (pre-rounding)
// at h_hat_j - h_hat_l with half-width z_{gamma*} * sqrt(v_j + v_l).
// Differences may be negative, so no clamping. Pairs are emitted with j
// ascending and l ascending within j.
std::vector<PairwiseSet> pairwise_sets_h(const std::vector<HEstimate>& estimates,
                                         double gamma);

std::vector<PairwiseInterval> pairwise_intervals_eh(
    const std::vector<HEstimate>& estimates, double gamma);

// h_j > h_l (greater) or h_j < h_l; only pairs whose set excludes zero
// appear, the rest are not statistically separable.
struct StrictOrdering {
    int j = 0;
    int l = 0;
    bool greater = false;
};

std::vector<StrictOrdering> ranking_summary(const std::vector<PairwiseSet>& pairwise);

}  // namespace hindex
