#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hindex/dataset.hpp"
#include "hindex/report.hpp"

namespace {

using hindex::Dataset;
using hindex::HEstimate;

enum class InputKind { citations_csv, citations_json, estimates_json };

InputKind detect_input(const std::string& path, const std::string& format_flag,
                       bool allow_estimates) {
    if (format_flag == "csv") return InputKind::citations_csv;
    if (format_flag == "json") return InputKind::citations_json;
    if (format_flag == "estimates") {
        if (!allow_estimates) {
            throw std::invalid_argument("estimates input is only supported by 'compare'");
        }
        return InputKind::estimates_json;
    }
    // auto: extension first, then peek for an estimates wrapper object
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        return InputKind::citations_csv;
    }
    if (allow_estimates) {
        std::ifstream in(path);
        if (in) {
            try {
                const nlohmann::json probe = nlohmann::json::parse(in);
                if (probe.is_object() && probe.contains("scholars") &&
                    probe["scholars"].is_array()) {
                    return InputKind::estimates_json;
                }
            } catch (const nlohmann::json::exception&) {
                // fall through; the real parser reports the error with context
            }
        }
    }
    return InputKind::citations_json;
}

void emit_report(const std::string& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report;
    } else {
        hindex::write_file_atomic(out_path, report);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistical inference on the h-index: point estimates, variance "
                 "estimates, confidence sets, and simultaneous pairwise comparisons"};
    app.require_subcommand(1);

    std::string input, input_format = "auto", out_path;
    double gamma = 0.05;
    std::string target = "h", format = "markdown";

    auto add_common = [&](CLI::App* cmd, bool with_estimates) {
        cmd->add_option("--input", input, "citation data file")->required();
        cmd->add_option("--input-format", input_format,
                        std::string("auto|csv|json") + (with_estimates ? "|estimates" : ""))
            ->check(CLI::IsMember(with_estimates
                                      ? std::vector<std::string>{"auto", "csv", "json",
                                                                 "estimates"}
                                      : std::vector<std::string>{"auto", "csv", "json"}));
        cmd->add_option("--gamma", gamma, "error level, confidence 1-gamma")
            ->check(CLI::Range(1e-9, 1.0 - 1e-9));
        cmd->add_option("--target", target, "h (integer sets) or eh (real intervals)")
            ->check(CLI::IsMember({"h", "eh"}));
        cmd->add_option("--format", format, "markdown|csv|json")
            ->check(CLI::IsMember({"markdown", "csv", "json"}));
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
    };

    CLI::App* est = app.add_subcommand("estimate",
                                       "per-scholar h_hat, v_hat and confidence set");
    add_common(est, false);

    CLI::App* cmp = app.add_subcommand(
        "compare", "simultaneous pairwise confidence sets and strict orderings");
    add_common(cmp, true);

    CLI::App* sim = app.add_subcommand("simulate", "coverage experiment driven by a config file");
    std::string config_path, sim_out;
    int threads = 0;
    std::uint64_t seed = 0;
    sim->add_option("--config", config_path, "key=value experiment config")->required();
    sim->add_option("--out", sim_out, "coverage CSV destination")->required();
    sim->add_option("--threads", threads, "worker threads (0 = hardware)");
    CLI::Option* seed_opt = sim->add_option("--seed", seed, "override the config seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (est->parsed()) {
            const InputKind kind = detect_input(input, input_format, false);
            const Dataset dataset =
                hindex::ingest(input, kind == InputKind::citations_csv
                                          ? hindex::DataFormat::csv
                                          : hindex::DataFormat::json);
            emit_report(hindex::cmd_estimate(dataset, gamma, hindex::parse_target(target),
                                             hindex::parse_report_format(format)),
                        out_path);
        } else if (cmp->parsed()) {
            const InputKind kind = detect_input(input, input_format, true);
            std::string report;
            if (kind == InputKind::estimates_json) {
                report = hindex::cmd_compare(hindex::load_estimates_file(input), gamma,
                                             hindex::parse_target(target),
                                             hindex::parse_report_format(format));
            } else {
                const Dataset dataset =
                    hindex::ingest(input, kind == InputKind::citations_csv
                                              ? hindex::DataFormat::csv
                                              : hindex::DataFormat::json);
                report = hindex::cmd_compare(dataset, gamma, hindex::parse_target(target),
                                             hindex::parse_report_format(format));
            }
            emit_report(report, out_path);
        } else if (sim->parsed()) {
            std::optional<std::uint64_t> seed_override;
            if (seed_opt->count() > 0) seed_override = seed;
            hindex::cmd_simulate(config_path, sim_out, threads, seed_override);
        }
    } catch (const std::exception& e) {
        std::cerr << "hindex: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
