#pragma once

#include <stdexcept>
#include <vector>

#include "hindex/binomial.hpp"
#include "hindex/survival.hpp"

namespace hindex {

// Exact first two moments of the empirical h-index under a known model.
struct MomentPair {
    double expectation = 0.0;
    double variance = 0.0;
    int n = 0;
};

// p_j = P(at least j of the n papers receive at least j citations)
//     = P(Bin(n, S(j-1)) >= j).
template <SurvivalFunction S>
double p_j(const S& s, int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("p_j: j must lie in [1, n]");
    return binom_upper_tail(n, s.survival(j - 1), j);
}

namespace detail {

template <SurvivalFunction S>
std::vector<double> tail_probabilities(const S& s, int n) {
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        p[static_cast<std::size_t>(j - 1)] = binom_upper_tail(n, s.survival(j - 1), j);
    }
    return p;
}

// sum_j p_j(1 - p_j) + 2 sum_{l=2..m} sum_{j<l} p_l(1 - p_j), evaluated in
// O(m) by carrying the prefix sum of (1 - p_j). Shared by the exact variance
// and its plug-in estimator, which differ only in the tails supplied.
inline double variance_from_tails(const std::vector<double>& p) {
    double var = 0.0;
    double prefix = 0.0;  // sum of (1 - p_j) over j < l
    for (double pl : p) {
        var += pl * (1.0 - pl) + 2.0 * pl * prefix;
        prefix += 1.0 - pl;
    }
    return var < 0.0 ? 0.0 : var;  // guard against rounding at degenerate inputs
}

}  // namespace detail

// E[H_hat] = sum_{j=1..n} p_j.
template <SurvivalFunction S>
double exact_expectation(const S& s, int n) {
    double e = 0.0;
    for (double pj : detail::tail_probabilities(s, n)) e += pj;
    return e;
}

template <SurvivalFunction S>
double exact_variance(const S& s, int n) {
    return detail::variance_from_tails(detail::tail_probabilities(s, n));
}

template <SurvivalFunction S>
MomentPair exact_moments(const S& s, int n) {
    const std::vector<double> p = detail::tail_probabilities(s, n);
    MomentPair m;
    m.n = n;
    for (double pj : p) m.expectation += pj;
    m.variance = detail::variance_from_tails(p);
    return m;
}

}  // namespace hindex
