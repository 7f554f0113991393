#pragma once

#include <cstdint>

#include "hindex/survival.hpp"

namespace hindex {

// Upper binomial tail P(Bin(n, p) >= j). Exactly 1 for j <= 0 and 0 for
// j > n. Absolute error stays below 1e-12 for n up to 1e4: small n sums the
// pmf directly, large n goes through the regularized incomplete beta.
double binom_upper_tail(int n, double p, std::int64_t j);

// Plug-in tail p_hat_j = P(Bin(n, S_hat(j-1)) >= j), 1 <= j <= n.
double p_hat_j(const CitationSample& sample, int j);
double p_hat_j(const EmpiricalSurvival& surv, int j);

}  // namespace hindex
