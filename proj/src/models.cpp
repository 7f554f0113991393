#include "hindex/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace hindex {
namespace {

// Ceiling on closed-form inversion candidates; protects the int64 conversion
// when a tiny uniform meets a very heavy tail.
constexpr std::int64_t kSampleCap = 4'000'000'000'000'000'000LL;

std::string format_param(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

[[noreturn]] void bad_spec(const std::string& spec, const std::string& why) {
    throw std::invalid_argument("model spec '" + spec + "': " + why);
}

double parse_double(const std::string& spec, const std::string& text) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        bad_spec(spec, "'" + text + "' is not a number");
    }
    if (pos != text.size()) bad_spec(spec, "'" + text + "' is not a number");
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find(sep, start);
        parts.push_back(text.substr(start, end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return parts;
}

}  // namespace

SurvivalModel::SurvivalModel(Family family, double par_a, double par_b,
                             std::vector<double> pmf)
    : family_(family), par_a_(par_a), par_b_(par_b), pmf_(std::move(pmf)) {
    if (family_ == Family::finite_support) {
        if (pmf_.empty()) throw std::invalid_argument("finite_support: empty pmf");
        double total = 0.0;
        for (double p : pmf_) {
            if (p < 0.0) throw std::invalid_argument("finite_support: negative pmf entry");
            total += p;
        }
        if (std::fabs(total - 1.0) > 1e-6) {
            throw std::invalid_argument("finite_support: pmf must sum to 1");
        }
        for (double& p : pmf_) p /= total;
        // Backward tail sums keep S exactly nonincreasing.
        survival_.assign(pmf_.size(), 0.0);
        for (std::size_t i = pmf_.size() - 1; i > 0; --i) {
            survival_[i - 1] = survival_[i] + pmf_[i];
        }
    }
}

SurvivalModel SurvivalModel::discrete_pareto(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("discrete_pareto: alpha must be > 0");
    return SurvivalModel(Family::discrete_pareto, alpha, 0.0, {});
}

SurvivalModel SurvivalModel::discrete_weibull(double lambda, double tau) {
    if (!(lambda > 0.0)) throw std::invalid_argument("discrete_weibull: lambda must be > 0");
    if (!(tau > 0.0)) throw std::invalid_argument("discrete_weibull: tau must be > 0");
    return SurvivalModel(Family::discrete_weibull, lambda, tau, {});
}

SurvivalModel SurvivalModel::geometric(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("geometric: p must lie strictly in (0, 1)");
    }
    return SurvivalModel(Family::geometric, p, 0.0, {});
}

SurvivalModel SurvivalModel::finite_support(std::vector<double> pmf) {
    return SurvivalModel(Family::finite_support, 0.0, 0.0, std::move(pmf));
}

double SurvivalModel::survival(std::int64_t x) const {
    if (x < 0) return 1.0;
    switch (family_) {
        case Family::discrete_pareto:
            return std::pow(1.0 + static_cast<double>(x), -par_a_);
        case Family::discrete_weibull:
            return std::exp(-par_a_ * std::pow(1.0 + static_cast<double>(x), par_b_));
        case Family::geometric:
            return std::exp(static_cast<double>(x + 1) * std::log1p(-par_a_));
        case Family::finite_support: {
            const auto idx = static_cast<std::size_t>(x);
            if (idx >= survival_.size()) return 0.0;
            return survival_[idx];
        }
    }
    return 0.0;
}

std::int64_t SurvivalModel::inverse_survival(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("inverse_survival: u must lie strictly in (0, 1)");
    }
    if (family_ == Family::finite_support) {
        for (std::size_t x = 0; x < survival_.size(); ++x) {
            if (survival_[x] < u) return static_cast<std::int64_t>(x);
        }
        return static_cast<std::int64_t>(survival_.size()) - 1;
    }

    // Closed-form candidate, then a local walk so the result is exactly
    // min{x >= 0 : S(x) < u} despite rounding in the closed form.
    double y = 0.0;
    switch (family_) {
        case Family::geometric:
            // (1-p)^(x+1) < u  <=>  x + 1 > log(u)/log(1-p)
            y = std::log(u) / std::log1p(-par_a_) - 1.0;
            break;
        case Family::discrete_pareto:
            // (1+x)^-alpha < u  <=>  1 + x > u^(-1/alpha)
            y = std::pow(u, -1.0 / par_a_) - 1.0;
            break;
        case Family::discrete_weibull:
            // exp(-lambda (1+x)^tau) < u  <=>  1 + x > (-log(u)/lambda)^(1/tau)
            y = std::pow(-std::log(u) / par_a_, 1.0 / par_b_) - 1.0;
            break;
        case Family::finite_support:
            break;  // handled above
    }
    std::int64_t x = 0;
    if (y >= static_cast<double>(kSampleCap)) {
        x = kSampleCap;
    } else if (y > 0.0) {
        x = static_cast<std::int64_t>(std::floor(y)) + 1;
    }
    while (x > 0 && survival(x - 1) < u) --x;
    while (survival(x) >= u) ++x;
    return x;
}

Condition4 SurvivalModel::condition4() const {
    switch (family_) {
        case Family::discrete_pareto:
            return {true, "Pareto-type tail (1+x)^-alpha decays slowly for every alpha > 0"};
        case Family::discrete_weibull:
            if (par_b_ < 0.5) {
                return {true, "Weibull-type tail with tau < 1/2 decays slowly enough"};
            }
            return {false, "Weibull-type tail with tau >= 1/2 decays too fast"};
        case Family::geometric:
            return {false, "geometric is the Weibull-type boundary case tau = 1"};
        case Family::finite_support:
            return {false, "bounded support cannot satisfy the slow-decay condition"};
    }
    return {false, ""};
}

const std::vector<double>& SurvivalModel::pmf() const {
    if (family_ != Family::finite_support) {
        throw std::logic_error("pmf(): only available for finite_support models");
    }
    return pmf_;
}

SurvivalModel SurvivalModel::parse(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) bad_spec(spec, "expected '<family>:<parameters>'");
    const std::string family = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);

    if (family == "finite") {
        std::vector<double> pmf;
        for (const std::string& part : split(args, ',')) {
            pmf.push_back(parse_double(spec, part));
        }
        try {
            return finite_support(std::move(pmf));
        } catch (const std::invalid_argument& e) {
            bad_spec(spec, e.what());
        }
    }

    // Remaining families take key=value pairs.
    std::vector<std::pair<std::string, double>> kv;
    for (const std::string& part : split(args, ',')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos) bad_spec(spec, "expected key=value, got '" + part + "'");
        kv.emplace_back(part.substr(0, eq), parse_double(spec, part.substr(eq + 1)));
    }
    auto lookup = [&](const std::string& key) {
        for (const auto& [k, v] : kv) {
            if (k == key) return v;
        }
        bad_spec(spec, "missing parameter '" + key + "'");
    };

    if (family == "pareto") {
        if (kv.size() != 1) bad_spec(spec, "pareto takes exactly alpha");
        const double alpha = lookup("alpha");
        try {
            return discrete_pareto(alpha);
        } catch (const std::invalid_argument& e) {
            bad_spec(spec, e.what());
        }
    }
    if (family == "dweibull") {
        if (kv.size() != 2) bad_spec(spec, "dweibull takes exactly lambda and tau");
        const double lambda = lookup("lambda");
        const double tau = lookup("tau");
        try {
            return discrete_weibull(lambda, tau);
        } catch (const std::invalid_argument& e) {
            bad_spec(spec, e.what());
        }
    }
    if (family == "geometric") {
        if (kv.size() != 1) bad_spec(spec, "geometric takes exactly p");
        const double p = lookup("p");
        try {
            return geometric(p);
        } catch (const std::invalid_argument& e) {
            bad_spec(spec, e.what());
        }
    }
    bad_spec(spec, "unknown family '" + family + "'");
}

std::string SurvivalModel::spec_string() const {
    switch (family_) {
        case Family::discrete_pareto:
            return "pareto:alpha=" + format_param(par_a_);
        case Family::discrete_weibull:
            return "dweibull:lambda=" + format_param(par_a_) + ",tau=" + format_param(par_b_);
        case Family::geometric:
            return "geometric:p=" + format_param(par_a_);
        case Family::finite_support: {
            std::string out = "finite:";
            for (std::size_t i = 0; i < pmf_.size(); ++i) {
                if (i > 0) out += ',';
                out += format_param(pmf_[i]);
            }
            return out;
        }
    }
    return "";
}

}  // namespace hindex
