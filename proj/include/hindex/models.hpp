#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hindex {

// Deterministic uniform source. Streams are independent per worker; a
// substream is derived from the root seed as root ^ (kStreamMultiplier * i),
// so identical (root, i) always replays the same sequence.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    static RngStream substream(std::uint64_t root_seed, std::uint64_t index) {
        return RngStream(root_seed ^ (kStreamMultiplier * index));
    }

    // Uniform strictly inside (0, 1).
    double next_uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1p-53;
    }

  private:
    static constexpr std::uint64_t kStreamMultiplier = 0x9e3779b97f4a7c15ULL;  // odd
    std::mt19937_64 gen_;
};

enum class Family { discrete_pareto, discrete_weibull, geometric, finite_support };

struct Condition4 {
    bool satisfied = false;
    std::string rationale;
};

// Integer-supported citation-count model, defined by its survival function
// S(x) = P(X > x) with S(-1) = 1:
//   discrete_pareto(alpha):        S(x) = (1+x)^-alpha,           alpha > 0
//   discrete_weibull(lambda, tau): S(x) = exp(-lambda (1+x)^tau), lambda, tau > 0
//   geometric(p):                  S(x) = (1-p)^(x+1),            p in (0, 1)
//   finite_support(pmf):           explicit pmf on {0, ..., s-1}
// The heavy-tail families use (1+x) so the survival is finite at x = 0; the
// slowly-varying factor is fixed to a constant.
class SurvivalModel {
  public:
    static SurvivalModel discrete_pareto(double alpha);
    static SurvivalModel discrete_weibull(double lambda, double tau);
    static SurvivalModel geometric(double p);
    static SurvivalModel finite_support(std::vector<double> pmf);

    // Spec strings: "pareto:alpha=1.5", "dweibull:lambda=1,tau=0.3",
    // "geometric:p=0.2", "finite:0.5,0.3,0.2".
    static SurvivalModel parse(const std::string& spec);
    std::string spec_string() const;

    Family family() const { return family_; }

    // S(x) for any integer x >= -1 (values below -1 also return 1).
    double survival(std::int64_t x) const;

    // Smallest x >= 0 with S(x) < u; the exact inverse-transform map.
    std::int64_t inverse_survival(double u) const;

    std::int64_t sample(RngStream& rng) const { return inverse_survival(rng.next_uniform()); }

    // Whether the family meets the near-uniform slow-decay condition the
    // large-sample theory rests on.
    Condition4 condition4() const;

    // finite_support only: the normalized pmf.
    const std::vector<double>& pmf() const;

  private:
    SurvivalModel(Family family, double par_a, double par_b, std::vector<double> pmf);

    Family family_;
    double par_a_ = 0.0;  // alpha | lambda | p
    double par_b_ = 0.0;  // tau
    std::vector<double> pmf_;       // finite_support, normalized
    std::vector<double> survival_;  // finite_support: S(x) for x in [0, s-1]
};

}  // namespace hindex
