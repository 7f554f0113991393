#include "hindex/variance.hpp"

#include <algorithm>
#include <vector>

#include "hindex/binomial.hpp"
#include "hindex/moments.hpp"

namespace hindex {

double v_hat(const CitationSample& sample) {
    const std::int64_t h = empirical_h_sum_form(sample);
    const std::int64_t m = std::min<std::int64_t>(3 * h, sample.n());
    if (m < 1) return 0.0;

    const EmpiricalSurvival surv(sample);
    std::vector<double> tails(static_cast<std::size_t>(m));
    for (std::int64_t j = 1; j <= m; ++j) {
        tails[static_cast<std::size_t>(j - 1)] = p_hat_j(surv, static_cast<int>(j));
    }
    return detail::variance_from_tails(tails);
}

HEstimate estimate(const CitationSample& sample) {
    HEstimate est;
    est.scholar_id = sample.scholar_id;
    est.n = sample.n();
    est.h_hat = empirical_h_sum_form(sample);
    est.v_hat = v_hat(sample);
    return est;
}

}  // namespace hindex
