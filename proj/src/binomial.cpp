#include "hindex/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hindex {
namespace {

// Below this the tail is summed term by term; above, the incomplete beta
// identity P(Bin(n,p) >= j) = I_p(j, n-j+1) avoids overflow and cancellation.
constexpr int kDirectSumLimit = 64;

// Continued fraction for the incomplete beta (modified Lentz). Long double
// throughout keeps the binomial tails good to ~1e-14 absolute at n = 1e4.
long double beta_cf(long double a, long double b, long double x) {
    constexpr long double tiny = 1e-30L;
    constexpr long double eps = 1e-18L;
    const long double qab = a + b;
    const long double qap = a + 1;
    const long double qam = a - 1;
    long double c = 1;
    long double d = 1 - qab * x / qap;
    if (fabsl(d) < tiny) d = tiny;
    d = 1 / d;
    long double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        long double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (fabsl(d) < tiny) d = tiny;
        c = 1 + aa / c;
        if (fabsl(c) < tiny) c = tiny;
        d = 1 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (fabsl(d) < tiny) d = tiny;
        c = 1 + aa / c;
        if (fabsl(c) < tiny) c = tiny;
        d = 1 / d;
        const long double del = d * c;
        h *= del;
        if (fabsl(del - 1) < eps) break;
    }
    return h;
}

long double reg_inc_beta(long double a, long double b, long double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    const long double log_front = lgammal(a + b) - lgammal(a) - lgammal(b) +
                                  a * logl(x) + b * log1pl(-x);
    const long double front = expl(log_front);
    if (x < (a + 1) / (a + b + 2)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1 - front * beta_cf(b, a, 1 - x) / b;
}

// Sum of C(n,l) p^l (1-p)^(n-l) over l in [j, n], anchored at the in-range
// mode so the term recurrences only ever scale downward.
double direct_tail_sum(int n, double p, int j) {
    const long double lp = logl(static_cast<long double>(p));
    const long double lq = log1pl(-static_cast<long double>(p));
    const int mode = static_cast<int>(std::floor((n + 1) * p));
    const int anchor = std::clamp(mode, j, n);
    const long double log_anchor = lgammal(n + 1.0L) - lgammal(anchor + 1.0L) -
                                   lgammal(n - anchor + 1.0L) + anchor * lp +
                                   (n - anchor) * lq;
    const long double anchor_pmf = expl(log_anchor);
    const long double odds = static_cast<long double>(p) / (1 - static_cast<long double>(p));

    long double sum = anchor_pmf;
    long double term = anchor_pmf;
    for (int l = anchor + 1; l <= n; ++l) {
        term *= odds * static_cast<long double>(n - l + 1) / l;
        sum += term;
    }
    term = anchor_pmf;
    for (int l = anchor - 1; l >= j; --l) {
        term *= static_cast<long double>(l + 1) / (static_cast<long double>(n - l) * odds);
        sum += term;
    }
    return static_cast<double>(std::min(sum, 1.0L));
}

}  // namespace

double binom_upper_tail(int n, double p, std::int64_t j) {
    if (n <= 0) throw std::invalid_argument("binom_upper_tail: n must be positive");
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binom_upper_tail: p must lie in [0, 1]");
    }
    if (j <= 0) return 1.0;
    if (j > n) return 0.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    if (n <= kDirectSumLimit) return direct_tail_sum(n, p, static_cast<int>(j));
    return static_cast<double>(reg_inc_beta(static_cast<long double>(j),
                                            static_cast<long double>(n - j + 1),
                                            static_cast<long double>(p)));
}

double p_hat_j(const EmpiricalSurvival& surv, int j) {
    if (j < 1 || j > surv.n()) {
        throw std::invalid_argument("p_hat_j: j must lie in [1, n]");
    }
    return binom_upper_tail(surv.n(), surv.survival(j - 1), j);
}

double p_hat_j(const CitationSample& sample, int j) {
    return p_hat_j(EmpiricalSurvival(sample), j);
}

}  // namespace hindex
