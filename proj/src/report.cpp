#include "hindex/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "hindex/confidence.hpp"
#include "hindex/variance.hpp"

namespace hindex {
namespace {

using nlohmann::ordered_json;

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

double rounded(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return std::stod(buf);
}

std::string gamma_text(double gamma) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", gamma);
    return buf;
}

std::string level_text(double gamma) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g%%", (1.0 - gamma) * 100.0);
    return buf;
}

std::string set_text(const IntegerConfidenceSet& set) {
    if (set.lo == set.hi) return "{" + std::to_string(set.lo) + "}";
    return "{" + std::to_string(set.lo) + ", ..., " + std::to_string(set.hi) + "}";
}

std::string interval_text(const RealConfidenceInterval& iv) {
    return "(" + fixed(iv.lo, 2) + ", " + fixed(iv.hi, 2) + ")";
}

std::vector<HEstimate> estimates_of(const Dataset& dataset) {
    std::vector<HEstimate> estimates;
    estimates.reserve(dataset.scholars.size());
    for (const CitationSample& scholar : dataset.scholars) {
        estimates.push_back(estimate(scholar));
    }
    return estimates;
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
    if (text == "markdown") return ReportFormat::markdown;
    if (text == "csv") return ReportFormat::csv;
    if (text == "json") return ReportFormat::json;
    throw std::invalid_argument("format must be markdown, csv or json, got '" + text + "'");
}

std::vector<HEstimate> sort_estimates(std::vector<HEstimate> estimates) {
    std::sort(estimates.begin(), estimates.end(),
              [](const HEstimate& a, const HEstimate& b) {
                  if (a.h_hat != b.h_hat) return a.h_hat > b.h_hat;
                  return a.scholar_id < b.scholar_id;
              });
    return estimates;
}

std::string cmd_estimate(const Dataset& dataset, double gamma, Target target,
                         ReportFormat format) {
    const std::vector<HEstimate> list = sort_estimates(estimates_of(dataset));

    if (format == ReportFormat::csv) {
        std::string out = "scholar_id,n,h_hat,v_hat,lo,hi\n";
        for (const HEstimate& est : list) {
            out += est.scholar_id + ',' + std::to_string(est.n) + ',' +
                   std::to_string(est.h_hat) + ',' + fixed(est.v_hat, 4) + ',';
            if (target == Target::h) {
                const IntegerConfidenceSet set = confidence_set_h(est, gamma);
                out += std::to_string(set.lo) + ',' + std::to_string(set.hi);
            } else {
                const RealConfidenceInterval iv = confidence_interval_eh(est, gamma);
                out += fixed(iv.lo, 2) + ',' + fixed(iv.hi, 2);
            }
            out += '\n';
        }
        return out;
    }

    if (format == ReportFormat::json) {
        ordered_json root;
        root["gamma"] = gamma;
        root["target"] = to_string(target);
        root["scholars"] = ordered_json::array();
        for (const HEstimate& est : list) {
            ordered_json row;
            row["scholar_id"] = est.scholar_id;
            row["n"] = est.n;
            row["h_hat"] = est.h_hat;
            row["v_hat"] = rounded(est.v_hat, 4);
            if (target == Target::h) {
                const IntegerConfidenceSet set = confidence_set_h(est, gamma);
                row["set"] = {{"lo", set.lo}, {"hi", set.hi}};
            } else {
                const RealConfidenceInterval iv = confidence_interval_eh(est, gamma);
                row["interval"] = {{"lo", rounded(iv.lo, 2)}, {"hi", rounded(iv.hi, 2)}};
            }
            root["scholars"].push_back(std::move(row));
        }
        return root.dump(2) + "\n";
    }

    std::string out;
    const std::string what = target == Target::h ? "confidence sets for h"
                                                 : "confidence intervals for E[h_hat]";
    out += "h-index estimates: " + what + " at the " + level_text(gamma) +
           " level (gamma = " + gamma_text(gamma) + ")\n\n";
    const std::string last_col = target == Target::h ? "C" : "C'";
    out += "| scholar_id | n | h_hat | v_hat | " + last_col + " |\n";
    out += "|---|---:|---:|---:|---|\n";
    for (const HEstimate& est : list) {
        out += "| " + est.scholar_id + " | " + std::to_string(est.n) + " | " +
               std::to_string(est.h_hat) + " | " + fixed(est.v_hat, 4) + " | ";
        if (target == Target::h) {
            out += set_text(confidence_set_h(est, gamma));
        } else {
            out += interval_text(confidence_interval_eh(est, gamma));
        }
        out += " |\n";
    }
    return out;
}

std::string cmd_compare(std::vector<HEstimate> estimates, double gamma, Target target,
                        ReportFormat format) {
    if (estimates.size() < 2) {
        throw std::invalid_argument("compare needs at least 2 scholars");
    }
    const std::vector<HEstimate> list = sort_estimates(std::move(estimates));
    const SidakPlan plan = sidak_plan(static_cast<int>(list.size()), gamma);
    const std::vector<PairwiseSet> sets = pairwise_sets_h(list, gamma);
    const std::vector<PairwiseInterval> intervals = pairwise_intervals_eh(list, gamma);

    auto direction = [&](std::size_t pair_idx) -> std::string {
        if (target == Target::h) {
            const IntegerConfidenceSet& s = sets[pair_idx].set;
            if (s.lo > 0) return ">";
            if (s.hi < 0) return "<";
        } else {
            const RealConfidenceInterval& iv = intervals[pair_idx].interval;
            if (iv.lo > 0) return ">";
            if (iv.hi < 0) return "<";
        }
        return "";
    };

    if (format == ReportFormat::csv) {
        std::string out = "j,l,scholar_j,scholar_l,diff,lo,hi,order\n";
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const int j = sets[i].j, l = sets[i].l;
            out += std::to_string(j) + ',' + std::to_string(l) + ',' +
                   list[static_cast<std::size_t>(j - 1)].scholar_id + ',' +
                   list[static_cast<std::size_t>(l - 1)].scholar_id + ',' +
                   std::to_string(list[static_cast<std::size_t>(j - 1)].h_hat -
                                  list[static_cast<std::size_t>(l - 1)].h_hat) +
                   ',';
            if (target == Target::h) {
                out += std::to_string(sets[i].set.lo) + ',' + std::to_string(sets[i].set.hi);
            } else {
                out += fixed(intervals[i].interval.lo, 2) + ',' +
                       fixed(intervals[i].interval.hi, 2);
            }
            out += ',' + direction(i) + '\n';
        }
        return out;
    }

    if (format == ReportFormat::json) {
        ordered_json root;
        root["gamma"] = gamma;
        root["target"] = to_string(target);
        root["k"] = plan.k;
        root["k_star"] = plan.k_star;
        root["gamma_star"] = plan.gamma_star;
        root["scholars"] = ordered_json::array();
        for (const HEstimate& est : list) {
            root["scholars"].push_back({{"scholar_id", est.scholar_id},
                                        {"n", est.n},
                                        {"h_hat", est.h_hat},
                                        {"v_hat", rounded(est.v_hat, 4)}});
        }
        root["pairs"] = ordered_json::array();
        for (std::size_t i = 0; i < sets.size(); ++i) {
            ordered_json row;
            row["j"] = sets[i].j;
            row["l"] = sets[i].l;
            if (target == Target::h) {
                row["lo"] = sets[i].set.lo;
                row["hi"] = sets[i].set.hi;
            } else {
                row["lo"] = rounded(intervals[i].interval.lo, 2);
                row["hi"] = rounded(intervals[i].interval.hi, 2);
            }
            const std::string dir = direction(i);
            if (!dir.empty()) row["order"] = dir;
            root["pairs"].push_back(std::move(row));
        }
        return root.dump(2) + "\n";
    }

    char gs[32];
    std::snprintf(gs, sizeof(gs), "%.8f", plan.gamma_star);
    std::string out;
    out += "Pairwise simultaneous " +
           std::string(target == Target::h ? "confidence sets for h differences"
                                           : "confidence intervals for E[h_hat] differences") +
           " at the " + level_text(gamma) + " level\n";
    out += "k = " + std::to_string(plan.k) + ", k* = " + std::to_string(plan.k_star) +
           ", gamma = " + gamma_text(gamma) + ", gamma* = " + gs + "\n\n";

    out += "| rank | scholar_id | n | h_hat | v_hat |\n";
    out += "|---:|---|---:|---:|---:|\n";
    for (std::size_t i = 0; i < list.size(); ++i) {
        out += "| " + std::to_string(i + 1) + " | " + list[i].scholar_id + " | " +
               std::to_string(list[i].n) + " | " + std::to_string(list[i].h_hat) + " | " +
               fixed(list[i].v_hat, 4) + " |\n";
    }
    out += "\n| pair | diff | " + std::string(target == Target::h ? "C_jl" : "C'_jl") +
           " |\n";
    out += "|---|---:|---|\n";
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const int j = sets[i].j, l = sets[i].l;
        out += "| h_" + std::to_string(j) + " - h_" + std::to_string(l) + " | " +
               std::to_string(list[static_cast<std::size_t>(j - 1)].h_hat -
                              list[static_cast<std::size_t>(l - 1)].h_hat) +
               " | ";
        out += target == Target::h ? set_text(sets[i].set) : interval_text(intervals[i].interval);
        out += " |\n";
    }

    std::size_t strict = 0;
    out += "\nStrict orderings (zero excluded):\n";
    if (target == Target::h) {
        for (const StrictOrdering& o : ranking_summary(sets)) {
            ++strict;
            out += "- h_" + std::to_string(o.j) + (o.greater ? " > h_" : " < h_") +
                   std::to_string(o.l) + "\n";
        }
    } else {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const std::string dir = direction(i);
            if (dir.empty()) continue;
            ++strict;
            out += "- h_" + std::to_string(sets[i].j) + " " + dir + " h_" +
                   std::to_string(sets[i].l) + "\n";
        }
    }
    if (strict == 0) out += "- none\n";
    out += "\nNot separable: " + std::to_string(sets.size() - strict) + " of " +
           std::to_string(sets.size()) + " pairs.\n";
    return out;
}

std::string cmd_compare(const Dataset& dataset, double gamma, Target target,
                        ReportFormat format) {
    return cmd_compare(estimates_of(dataset), gamma, target, format);
}

void cmd_simulate(const std::string& config_path, const std::string& out_path, int threads,
                  std::optional<std::uint64_t> seed_override) {
    ExperimentConfig config = load_experiment_config(config_path);
    if (seed_override) config.root_seed = *seed_override;
    const CoverageReport report = run_coverage(config, threads);
    write_file_atomic(out_path, coverage_csv(report));
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file '" + tmp + "'");
        out << content;
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw std::runtime_error("failed writing output file '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move output into place at '" + path + "'");
    }
}

}  // namespace hindex
