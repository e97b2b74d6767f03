#include "semrl/pipeline.hpp"

#include "semrl/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace semrl {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename F>
auto stage(const char* name, F&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw Error(std::string(name) + ": " + e.what());
    }
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string join_items(const std::vector<Item>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += " ";
        out += items[i].str();
    }
    return out;
}

} // namespace

std::string_view to_string(PipelineMode m) {
    switch (m) {
    case PipelineMode::Baseline: return "baseline";
    case PipelineMode::Literal: return "literal";
    case PipelineMode::Generalized: return "generalized";
    }
    return "";
}

PipelineMode pipeline_mode_from_string(std::string_view s) {
    if (s == "baseline") return PipelineMode::Baseline;
    if (s == "literal") return PipelineMode::Literal;
    if (s == "generalized") return PipelineMode::Generalized;
    throw Error("unknown mode \"" + std::string(s) + "\" (expected literal|generalized|baseline)");
}

OutputFormat output_format_from_string(std::string_view s) {
    if (s == "jsonl") return OutputFormat::Jsonl;
    if (s == "csv") return OutputFormat::Csv;
    throw Error("unknown format \"" + std::string(s) + "\" (expected jsonl|csv)");
}

void RunConfig::check() const {
    auto ratio = [](const char* name, double v) {
        if (!(v > 0.0) || v > 1.0) throw Error(std::string(name) + " must be in (0, 1]");
    };
    ratio("support", min_support);
    ratio("confidence", min_confidence);
    if (k_neighbors < 0) throw Error("k-neighbors must be >= 0");
    if (!(window_hours > 0)) throw Error("window-hours must be > 0");
    if (precision < 0 || precision > 9) throw Error("precision must be in [0, 9]");
    if (attribute_bins < 1) throw Error("attribute-bins must be >= 1");
    if (inp_path.empty()) throw Error("an INP file is required");
    if (sensors_path.empty()) throw Error("a sensor map file is required");
    if (measurements_path.empty()) throw Error("a measurements file is required");
}

PipelineInputs load_inputs(const RunConfig& config) {
    config.check();
    PipelineInputs in;
    in.model = stage("parse", [&] { return load_inp(config.inp_path); });
    in.schema = stage("schema", [&] {
        return config.schema_path.empty() ? Schema::epanet_default() : load_schema(config.schema_path);
    });
    in.sensors = stage("sensors", [&] { return load_sensor_map(config.sensors_path); });
    in.kg = stage("build-kg", [&] { return build_kg(in.model, in.sensors, in.schema); });

    MeasurementSeries series = stage("load", [&] {
        return filter_quantities(load_measurements(config.measurements_path, in.sensors),
                                 config.quantities);
    });
    in.record_count = series.records.size();

    DiscretizationScheme scheme;
    scheme.window_seconds = static_cast<std::int64_t>(std::llround(config.window_hours * 3600.0));
    scheme.precision = config.precision;
    scheme.attribute_bins = config.attribute_bins;
    in.db = stage("discretize", [&] { return discretize(series, scheme); });
    return in;
}

RuleSet mine_with_mode(const PipelineInputs& inputs, const RunConfig& config, double min_support) {
    // an empty db mines to an empty rule set instead of erroring, so
    // degenerate inputs (no measurements) still produce a complete artifact
    if (inputs.db.empty()) {
        RuleSet empty;
        empty.min_support = min_support;
        empty.min_confidence = config.min_confidence;
        return empty;
    }
    if (config.mode == PipelineMode::Baseline)
        return stage("mine", [&] {
            return mine_rules(inputs.db, min_support, config.min_confidence, inputs.schema);
        });

    EnrichmentConfig ec;
    ec.k_neighbors = config.k_neighbors;
    ec.mode = config.mode == PipelineMode::Literal ? EnrichMode::Literal : EnrichMode::Generalized;
    ec.include_attributes = config.include_attributes;
    ec.attribute_bins = config.attribute_bins;
    return stage("mine", [&] {
        return naive_semrl(inputs.kg, inputs.db, ec, min_support, config.min_confidence);
    });
}

PipelineResult run_pipeline(const RunConfig& config) {
    PipelineInputs inputs = load_inputs(config);

    PipelineResult result;
    result.rules = mine_with_mode(inputs, config, config.min_support);
    result.stats = ruleset_stats(result.rules);
    result.transaction_count = inputs.db.size();
    result.sensor_count = inputs.sensors.entries.size();
    result.record_count = inputs.record_count;

    if (!config.out_path.empty())
        stage("write", [&] { write_rules_atomic(result.rules, config.out_path, config.format); return 0; });
    return result;
}

std::vector<SweepRow> run_sweep(const RunConfig& config, const std::vector<double>& supports) {
    if (supports.empty()) throw Error("sweep needs at least one support threshold");
    PipelineInputs inputs = load_inputs(config);
    if (config.mode == PipelineMode::Baseline)
        throw Error("sweep compares the semantic mode against the baseline; pick literal or generalized");

    RunConfig baseline_config = config;
    baseline_config.mode = PipelineMode::Baseline;

    std::vector<SweepRow> rows;
    for (double s : supports) {
        RuleSet semantic = mine_with_mode(inputs, config, s);
        RuleSet baseline = mine_with_mode(inputs, baseline_config, s);
        RuleSetStats stats = ruleset_stats(semantic);
        SweepRow row;
        row.support = s;
        row.rule_count = semantic.rules.size();
        row.max_se = stats.max_se;
        row.min_se = stats.min_se;
        row.baseline_rule_count = baseline.rules.size();
        rows.push_back(row);
    }
    return rows;
}

ComparisonReport compare(const RuleSet& baseline, const RuleSet& semantic) {
    if (baseline.min_support != semantic.min_support ||
        baseline.min_confidence != semantic.min_confidence)
        throw Error("rule sets were mined at different thresholds");

    ComparisonReport report;
    report.baseline_count = baseline.rules.size();
    report.semantic_count = semantic.rules.size();
    RuleSetStats stats = ruleset_stats(semantic);
    report.semantic_max_se = stats.max_se;
    report.semantic_min_se = stats.min_se;
    report.count_ratio = baseline.rules.empty()
                             ? std::numeric_limits<double>::infinity()
                             : static_cast<double>(semantic.rules.size()) /
                                   static_cast<double>(baseline.rules.size());
    return report;
}

std::vector<RuleViolations> check_rules(const RuleSet& rules, const TransactionDB& db) {
    std::vector<RuleViolations> out;
    out.reserve(rules.rules.size());
    for (std::size_t i = 0; i < rules.rules.size(); ++i) {
        const AssociationRule& r = rules.rules[i];
        RuleViolations v;
        v.rule_index = i;
        for (const auto& t : db) {
            if (!t.contains_all(r.antecedent)) continue;
            ++v.antecedent_count;
            if (!t.contains_all(r.consequent)) ++v.violations;
        }
        v.rate = v.antecedent_count == 0
                     ? 0.0
                     : static_cast<double>(v.violations) / static_cast<double>(v.antecedent_count);
        out.push_back(v);
    }
    std::stable_sort(out.begin(), out.end(), [](const RuleViolations& a, const RuleViolations& b) {
        return a.violations > b.violations;
    });
    return out;
}

namespace {

ordered_json rule_to_json(const AssociationRule& r) {
    ordered_json j;
    auto strings = [](const std::vector<Item>& items) {
        std::vector<std::string> out;
        out.reserve(items.size());
        for (const auto& it : items) out.push_back(it.str());
        return out;
    };
    j["antecedent"] = strings(r.antecedent);
    j["consequent"] = strings(r.consequent);
    j["support"] = r.support;
    j["confidence"] = r.confidence;
    j["semantic_expressivity"] = r.semantic_expressivity;
    return j;
}

} // namespace

std::string render_rules(const RuleSet& rules, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Jsonl) {
        for (const auto& r : rules.rules) out << rule_to_json(r).dump() << "\n";
    } else {
        out << "antecedent,consequent,support,confidence,semantic_expressivity\n";
        for (const auto& r : rules.rules) {
            ordered_json nums = {r.support, r.confidence, r.semantic_expressivity};
            out << csv_quote(join_items(r.antecedent)) << "," << csv_quote(join_items(r.consequent))
                << "," << nums[0].dump() << "," << nums[1].dump() << "," << nums[2].dump() << "\n";
        }
    }
    return out.str();
}

void write_rules_atomic(const RuleSet& rules, const std::string& path, OutputFormat format) {
    namespace fs = std::filesystem;
    std::string body = render_rules(rules, format);
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open output file: " + tmp.string());
        out << body;
        if (!out) throw Error("failed writing output file: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("cannot move output into place: " + target.string() + " (" + ec.message() + ")");
    }
}

RuleSet read_rules_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open rule file: " + path);

    RuleSet rs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw ParseError(path + " line " + std::to_string(lineno), e.what());
        }
        AssociationRule r;
        try {
            for (const auto& s : j.at("antecedent")) r.antecedent.push_back(Item::parse(s.get<std::string>()));
            for (const auto& s : j.at("consequent")) r.consequent.push_back(Item::parse(s.get<std::string>()));
            r.support = j.at("support").get<double>();
            r.confidence = j.at("confidence").get<double>();
            r.semantic_expressivity = j.value("semantic_expressivity", 0.0);
        } catch (const std::exception& e) {
            throw ParseError(path + " line " + std::to_string(lineno), e.what());
        }
        normalize(r.antecedent);
        normalize(r.consequent);
        if (r.antecedent.empty() || r.consequent.empty())
            throw ParseError(path + " line " + std::to_string(lineno), "rule sides must be non-empty");
        rs.rules.push_back(std::move(r));
    }
    return rs;
}

std::string render_stats_json(const PipelineResult& result, const RunConfig& config) {
    ordered_json j;
    j["mode"] = std::string(to_string(config.mode));
    j["support"] = config.min_support;
    j["confidence"] = config.min_confidence;
    j["transactions"] = result.transaction_count;
    j["records"] = result.record_count;
    j["sensors"] = result.sensor_count;
    j["rules"] = result.stats.count;
    if (result.stats.max_se) {
        j["max_se"] = *result.stats.max_se;
        j["min_se"] = *result.stats.min_se;
        j["max_se_2dp"] = format_score_2dp(*result.stats.max_se);
        j["min_se_2dp"] = format_score_2dp(*result.stats.min_se);
    }
    j["support_hist"] = result.stats.support_hist;
    j["confidence_hist"] = result.stats.confidence_hist;
    return j.dump();
}

} // namespace semrl
