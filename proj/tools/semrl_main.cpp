// semrl: semantic association rule mining for sensor networks.
//
// Subcommands:
//   validate  parse an INP file and print the validation report
//   mine      run the full pipeline and write a rule file
//   sweep     mine at several support thresholds, semantic vs baseline
//   compare   mine semantic and baseline at one threshold, side by side
//   check     count rule violations against a measurement db

#include "semrl/error.hpp"
#include "semrl/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace {

using semrl::RunConfig;

void add_input_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--inp", config.inp_path, "EPANET INP network file")->required();
    cmd->add_option("--sensors", config.sensors_path, "sensor map CSV")->required();
    cmd->add_option("--measurements", config.measurements_path,
                    "measurement CSV (or per-node manifest)")
        ->required();
    cmd->add_option("--schema", config.schema_path, "schema override file");
}

void add_mining_options(CLI::App* cmd, RunConfig& config, std::string& mode, std::string& quantities) {
    cmd->add_option("--confidence", config.min_confidence, "minimum confidence (0,1]")
        ->capture_default_str();
    cmd->add_option("--k-neighbors", config.k_neighbors, "hop radius for enrichment")
        ->capture_default_str();
    cmd->add_option("--mode", mode, "literal|generalized|baseline")->capture_default_str();
    cmd->add_option("--window-hours", config.window_hours, "aggregation window length")
        ->capture_default_str();
    cmd->add_option("--precision", config.precision, "decimal places kept when discretizing")
        ->capture_default_str();
    cmd->add_option("--attribute-bins", config.attribute_bins,
                    "equal-width bins for graph attributes")
        ->capture_default_str();
    cmd->add_flag("--no-attributes", "enrich with topology only, no attribute items");
    cmd->add_option("--quantities", quantities, "comma list of pressure,demand,flow (default all)");
}

void apply_common(const CLI::App* cmd, RunConfig& config, const std::string& mode,
                  const std::string& quantities) {
    config.mode = semrl::pipeline_mode_from_string(mode);
    config.include_attributes = cmd->count("--no-attributes") == 0;
    if (!quantities.empty()) {
        std::stringstream ss(quantities);
        std::string part;
        while (std::getline(ss, part, ','))
            config.quantities.push_back(semrl::quantity_from_string(part));
    }
}

std::vector<std::string> item_strings(const std::vector<semrl::Item>& items) {
    std::vector<std::string> out;
    out.reserve(items.size());
    for (const auto& it : items) out.push_back(it.str());
    return out;
}

std::vector<double> parse_supports(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
    return out;
}

int cmd_validate(const std::string& inp_path) {
    std::ifstream in(inp_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open INP file: " << inp_path << "\n";
        return 1;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    semrl::InpDocument doc = semrl::parse_inp_document(ss.str());

    for (const auto& w : doc.report.warnings)
        std::cout << "warning: " << w.location << ": " << w.message << "\n";
    for (const auto& e : doc.report.errors)
        std::cout << "error: " << e.location << ": " << e.message << "\n";
    std::cout << "junctions=" << doc.model.junctions.size()
              << " reservoirs=" << doc.model.reservoirs.size()
              << " tanks=" << doc.model.tanks.size() << " pipes=" << doc.model.pipes.size()
              << " pumps=" << doc.model.pumps.size() << " valves=" << doc.model.valves.size()
              << "\n";
    std::cout << (doc.report.ok() ? "valid" : "invalid") << "\n";
    return doc.report.ok() ? 0 : 1;
}

int cmd_mine(const RunConfig& config) {
    semrl::PipelineResult result = semrl::run_pipeline(config);
    std::cout << semrl::render_stats_json(result, config) << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& config, const std::vector<double>& supports) {
    auto rows = semrl::run_sweep(config, supports);

    std::ostringstream table;
    if (config.format == semrl::OutputFormat::Csv) {
        table << "support,rules,max_se,min_se,baseline_rules\n";
        for (const auto& r : rows) {
            table << r.support << "," << r.rule_count << ","
                  << (r.max_se ? semrl::format_score_2dp(*r.max_se) : "") << ","
                  << (r.min_se ? semrl::format_score_2dp(*r.min_se) : "") << ","
                  << r.baseline_rule_count << "\n";
        }
    } else {
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["support"] = r.support;
            j["rules"] = r.rule_count;
            if (r.max_se) {
                j["max_se"] = semrl::format_score_2dp(*r.max_se);
                j["min_se"] = semrl::format_score_2dp(*r.min_se);
            }
            j["baseline_rules"] = r.baseline_rule_count;
            table << j.dump() << "\n";
        }
    }

    if (!config.out_path.empty()) {
        std::ofstream out(config.out_path + ".tmp", std::ios::binary | std::ios::trunc);
        if (!out) throw semrl::Error("cannot open output file: " + config.out_path);
        out << table.str();
        out.close();
        std::filesystem::rename(config.out_path + ".tmp", config.out_path);
    }
    std::cout << table.str();
    return 0;
}

int cmd_compare(const RunConfig& config) {
    semrl::PipelineInputs inputs = semrl::load_inputs(config);
    if (config.mode == semrl::PipelineMode::Baseline)
        throw semrl::Error("compare needs a semantic mode (literal or generalized)");

    RunConfig baseline_config = config;
    baseline_config.mode = semrl::PipelineMode::Baseline;

    semrl::RuleSet semantic = semrl::mine_with_mode(inputs, config, config.min_support);
    semrl::RuleSet baseline = semrl::mine_with_mode(inputs, baseline_config, config.min_support);
    semrl::ComparisonReport report = semrl::compare(baseline, semantic);

    nlohmann::ordered_json j;
    j["support"] = config.min_support;
    j["confidence"] = config.min_confidence;
    j["semantic_rules"] = report.semantic_count;
    j["baseline_rules"] = report.baseline_count;
    if (report.semantic_max_se) {
        j["max_se"] = semrl::format_score_2dp(*report.semantic_max_se);
        j["min_se"] = semrl::format_score_2dp(*report.semantic_min_se);
    }
    if (std::isfinite(report.count_ratio)) j["count_ratio"] = report.count_ratio;
    else j["count_ratio"] = "inf";
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_check(const RunConfig& config, const std::string& rules_path) {
    semrl::PipelineInputs inputs = semrl::load_inputs(config);
    semrl::RuleSet rules = semrl::read_rules_jsonl(rules_path);

    // violations are counted against the same item vocabulary the rules were
    // mined from, so the db is enriched per the configured mode
    semrl::TransactionDB db = inputs.db;
    if (config.mode != semrl::PipelineMode::Baseline && !db.empty()) {
        semrl::EnrichmentConfig ec;
        ec.k_neighbors = config.k_neighbors;
        ec.mode = config.mode == semrl::PipelineMode::Literal ? semrl::EnrichMode::Literal
                                                              : semrl::EnrichMode::Generalized;
        ec.include_attributes = config.include_attributes;
        ec.attribute_bins = config.attribute_bins;
        db = semrl::Enricher(inputs.kg, ec).enrich_db(db);
    }

    auto violations = semrl::check_rules(rules, db);
    std::uint64_t total = 0;
    for (const auto& v : violations) {
        total += v.violations;
        nlohmann::ordered_json j;
        j["rule"] = v.rule_index;
        j["violations"] = v.violations;
        j["applicable"] = v.antecedent_count;
        j["rate"] = v.rate;
        j["antecedent"] = item_strings(rules.rules[v.rule_index].antecedent);
        j["consequent"] = item_strings(rules.rules[v.rule_index].consequent);
        std::cout << j.dump() << "\n";
    }
    std::cerr << "checked " << rules.rules.size() << " rule(s) against " << db.size()
              << " transaction(s), " << total << " violation(s) total\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic association rule learning for water sensor networks"};
    app.require_subcommand(1);

    RunConfig config;
    std::string mode = "generalized";
    std::string quantities;
    std::string supports_text = "0.2,0.3,0.4,0.5";
    std::string rules_path;
    std::string format = "jsonl";

    CLI::App* validate = app.add_subcommand("validate", "parse and validate an INP file");
    std::string inp_only;
    validate->add_option("--inp", inp_only, "EPANET INP network file")->required();

    CLI::App* mine = app.add_subcommand("mine", "mine association rules");
    add_input_options(mine, config);
    mine->add_option("--support", config.min_support, "minimum support (0,1]")->capture_default_str();
    add_mining_options(mine, config, mode, quantities);
    mine->add_option("--out", config.out_path, "rule file to write");
    mine->add_option("--format", format, "jsonl|csv")->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "mine across several support thresholds");
    add_input_options(sweep, config);
    sweep->add_option("--supports", supports_text, "comma list of support thresholds")
        ->capture_default_str();
    add_mining_options(sweep, config, mode, quantities);
    sweep->add_option("--out", config.out_path, "table file to write");
    sweep->add_option("--format", format, "jsonl|csv")->capture_default_str();

    CLI::App* comparecmd = app.add_subcommand("compare", "semantic vs baseline rule counts");
    add_input_options(comparecmd, config);
    comparecmd->add_option("--support", config.min_support, "minimum support (0,1]")
        ->capture_default_str();
    add_mining_options(comparecmd, config, mode, quantities);

    CLI::App* check = app.add_subcommand("check", "count rule violations against the data");
    add_input_options(check, config);
    check->add_option("--rules", rules_path, "rule file (jsonl) to check")->required();
    add_mining_options(check, config, mode, quantities);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(inp_only);

        CLI::App* active = app.get_subcommands().front();
        apply_common(active, config, mode, quantities);
        config.format = semrl::output_format_from_string(format);

        if (mine->parsed()) return cmd_mine(config);
        if (sweep->parsed()) return cmd_sweep(config, parse_supports(supports_text));
        if (comparecmd->parsed()) return cmd_compare(config);
        if (check->parsed()) return cmd_check(config, rules_path);
    } catch (const semrl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
