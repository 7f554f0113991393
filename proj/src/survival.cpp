#include "hindex/survival.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hindex {

CitationSample::CitationSample(std::string id, std::vector<std::int64_t> citation_counts)
    : scholar_id(std::move(id)), counts(std::move(citation_counts)) {
    if (counts.empty()) {
        throw std::invalid_argument("CitationSample: scholar '" + scholar_id +
                                    "' has no papers");
    }
    for (std::int64_t c : counts) {
        if (c < 0) {
            throw std::invalid_argument("CitationSample: scholar '" + scholar_id +
                                        "' has a negative citation count");
        }
    }
}

EmpiricalSurvival::EmpiricalSurvival(const CitationSample& sample)
    : sorted_(sample.counts) {
    std::sort(sorted_.begin(), sorted_.end());
}

std::int64_t EmpiricalSurvival::count_above(std::int64_t x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<std::int64_t>(sorted_.end() - it);
}

double EmpiricalSurvival::survival(std::int64_t x) const {
    return static_cast<double>(count_above(x)) / static_cast<double>(sorted_.size());
}

double empirical_survival(const CitationSample& sample, std::int64_t x) {
    std::int64_t above = 0;
    for (std::int64_t c : sample.counts) {
        if (c > x) ++above;
    }
    return static_cast<double>(above) / static_cast<double>(sample.counts.size());
}

std::int64_t empirical_h_max_form(const CitationSample& sample) {
    std::vector<std::int64_t> desc(sample.counts);
    std::sort(desc.begin(), desc.end(), std::greater<>());
    std::int64_t h = 0;
    for (std::size_t j = 1; j <= desc.size(); ++j) {
        if (desc[j - 1] >= static_cast<std::int64_t>(j)) h = static_cast<std::int64_t>(j);
    }
    return h;
}

std::int64_t empirical_h_sum_form(const CitationSample& sample) {
    const EmpiricalSurvival surv(sample);
    const int n = surv.n();
    std::int64_t h = 0;
    for (int j = 1; j <= n; ++j) {
        // S_hat(j-1) >= j/n  <=>  n * S_hat(j-1) >= j, exact in integers.
        if (surv.count_above(j - 1) >= j) ++h;
    }
    return h;
}

}  // namespace hindex
