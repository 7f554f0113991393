#pragma once

#include <cstdint>
#include <string>

#include "hindex/survival.hpp"

namespace hindex {

// Point-estimate bundle for one scholar.
struct HEstimate {
    std::string scholar_id;
    int n = 0;
    std::int64_t h_hat = 0;
    double v_hat = 0.0;
};

// Nonparametric plug-in variance estimate for the empirical h-index. Both
// sums run to m = min(3 * h_hat, n) and mirror the exact-variance structure
// with the empirical tails substituted; 0 when m < 1.
double v_hat(const CitationSample& sample);

// h_hat and v_hat bundled with the sample's identity.
HEstimate estimate(const CitationSample& sample);

}  // namespace hindex
