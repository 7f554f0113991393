#include "hindex/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace hindex {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail_parse(const std::string& source, const std::string& why) {
    throw std::runtime_error(source + ": " + why);
}

// SAX consumer for the citations JSON: exactly one level of object holding
// arrays of nonnegative integers. Walking the events directly catches
// duplicate keys, which a DOM parse would silently merge.
class CitationJsonHandler : public nlohmann::json_sax<json> {
  public:
    explicit CitationJsonHandler(const std::string& source) : source_(source) {}

    std::vector<CitationSample> take_scholars() { return std::move(scholars_); }

    bool null() override { return fail("null value"); }
    bool boolean(bool) override { return fail("boolean value"); }

    bool number_integer(number_integer_t v) override {
        if (!in_array_) return fail("number outside a citation array");
        if (v < 0) {
            fail_parse(source_, "scholar '" + current_id_ + "': negative citation count " +
                                     std::to_string(v));
        }
        counts_.push_back(v);
        return true;
    }

    bool number_unsigned(number_unsigned_t v) override {
        return number_integer(static_cast<number_integer_t>(v));
    }

    bool number_float(number_float_t, const string_t&) override {
        return fail("citation counts must be integers");
    }

    bool string(string_t&) override { return fail("string value where integers expected"); }
    bool binary(binary_t&) override { return fail("binary value"); }

    bool start_object(std::size_t) override {
        if (++depth_ > 1) return fail("nested objects are not allowed");
        return true;
    }

    bool key(string_t& k) override {
        if (!seen_.insert(k).second) {
            fail_parse(source_, "duplicate scholar_id '" + k + "'");
        }
        current_id_ = k;
        return true;
    }

    bool end_object() override {
        --depth_;
        return true;
    }

    bool start_array(std::size_t) override {
        if (depth_ != 1 || in_array_) return fail("unexpected array");
        in_array_ = true;
        counts_.clear();
        return true;
    }

    bool end_array() override {
        in_array_ = false;
        if (counts_.empty()) {
            fail_parse(source_, "scholar '" + current_id_ + "' has no papers");
        }
        scholars_.emplace_back(current_id_, counts_);
        return true;
    }

    bool parse_error(std::size_t, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        hindex::fail_parse(source_, ex.what());
    }

  private:
    bool fail(const std::string& why) { hindex::fail_parse(source_, why); }

    std::string source_;
    int depth_ = 0;
    bool in_array_ = false;
    std::string current_id_;
    std::vector<std::int64_t> counts_;
    std::unordered_set<std::string> seen_;
    std::vector<CitationSample> scholars_;
};

}  // namespace

Dataset ingest_csv(std::istream& in, const std::string& source_name) {
    Dataset dataset;
    dataset.source_path = source_name;
    dataset.format = "csv";

    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) {
        fail_parse(source_name, "empty file, expected header 'scholar_id,citations'");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "scholar_id,citations") {
        fail_parse(source_name, "line 1: expected header 'scholar_id,citations'");
    }

    std::vector<std::string> order;
    std::vector<std::vector<std::int64_t>> counts;
    std::unordered_map<std::string, std::size_t> index;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.rfind(',');
        if (comma == std::string::npos || comma == 0) {
            fail_parse(source_name,
                        "line " + std::to_string(line_no) + ": expected 'scholar_id,citations'");
        }
        const std::string id = line.substr(0, comma);
        const std::string count_text = line.substr(comma + 1);
        std::int64_t count = 0;
        try {
            std::size_t pos = 0;
            count = std::stoll(count_text, &pos);
            if (pos != count_text.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            fail_parse(source_name, "line " + std::to_string(line_no) +
                                         ": citations '" + count_text + "' is not an integer");
        }
        if (count < 0) {
            fail_parse(source_name, "line " + std::to_string(line_no) +
                                         ": negative citation count for scholar '" + id + "'");
        }
        auto [it, inserted] = index.try_emplace(id, order.size());
        if (inserted) {
            order.push_back(id);
            counts.emplace_back();
        }
        counts[it->second].push_back(count);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        dataset.scholars.emplace_back(order[i], std::move(counts[i]));
    }
    return dataset;
}

Dataset ingest_json(std::istream& in, const std::string& source_name) {
    CitationJsonHandler handler(source_name);
    json::sax_parse(in, &handler);
    Dataset dataset;
    dataset.source_path = source_name;
    dataset.format = "json";
    dataset.scholars = handler.take_scholars();
    return dataset;
}

Dataset ingest(const std::string& path, DataFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    return format == DataFormat::csv ? ingest_csv(in, path) : ingest_json(in, path);
}

std::string emit_csv(const Dataset& dataset) {
    std::string out = "scholar_id,citations\n";
    for (const CitationSample& scholar : dataset.scholars) {
        if (scholar.scholar_id.find_first_of(",\"\n") != std::string::npos) {
            throw std::invalid_argument("emit_csv: scholar_id '" + scholar.scholar_id +
                                        "' contains characters the CSV format cannot carry");
        }
        for (std::int64_t c : scholar.counts) {
            out += scholar.scholar_id;
            out += ',';
            out += std::to_string(c);
            out += '\n';
        }
    }
    return out;
}

std::string emit_json(const Dataset& dataset) {
    ordered_json root = ordered_json::object();
    for (const CitationSample& scholar : dataset.scholars) {
        root[scholar.scholar_id] = scholar.counts;
    }
    return root.dump(2) + "\n";
}

std::vector<HEstimate> load_estimates_json(std::istream& in, const std::string& source_name) {
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        fail_parse(source_name, e.what());
    }
    if (!root.is_object() || !root.contains("scholars") || !root["scholars"].is_array()) {
        fail_parse(source_name, "expected an object with a 'scholars' array");
    }
    std::vector<HEstimate> estimates;
    std::unordered_set<std::string> seen;
    for (const json& item : root["scholars"]) {
        HEstimate est;
        try {
            est.scholar_id = item.at("scholar_id").get<std::string>();
            est.n = item.at("n").get<int>();
            est.h_hat = item.at("h_hat").get<std::int64_t>();
            est.v_hat = item.at("v_hat").get<double>();
        } catch (const json::exception& e) {
            fail_parse(source_name, std::string("bad scholar entry: ") + e.what());
        }
        if (est.n < 1) fail_parse(source_name, "scholar '" + est.scholar_id + "': n must be >= 1");
        if (est.h_hat < 0 || est.h_hat > est.n) {
            fail_parse(source_name, "scholar '" + est.scholar_id + "': h_hat outside [0, n]");
        }
        if (est.v_hat < 0.0) {
            fail_parse(source_name, "scholar '" + est.scholar_id + "': v_hat must be >= 0");
        }
        if (!seen.insert(est.scholar_id).second) {
            fail_parse(source_name, "duplicate scholar_id '" + est.scholar_id + "'");
        }
        estimates.push_back(std::move(est));
    }
    if (estimates.empty()) fail_parse(source_name, "'scholars' array is empty");
    return estimates;
}

std::vector<HEstimate> load_estimates_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open estimates file '" + path + "'");
    return load_estimates_json(in, path);
}

}  // namespace hindex
