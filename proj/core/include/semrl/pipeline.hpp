#pragma once

#include "semrl/enrich.hpp"
#include "semrl/fpgrowth.hpp"
#include "semrl/ingest.hpp"
#include "semrl/inp.hpp"
#include "semrl/kg.hpp"
#include "semrl/quality.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semrl {

enum class PipelineMode { Baseline, Literal, Generalized };

std::string_view to_string(PipelineMode m);
PipelineMode pipeline_mode_from_string(std::string_view s);

enum class OutputFormat { Jsonl, Csv };

OutputFormat output_format_from_string(std::string_view s);

struct RunConfig {
    std::string inp_path;
    std::string sensors_path;
    std::string measurements_path;
    std::string schema_path;  // empty -> EPANET default schema

    double min_support = 0.2;
    double min_confidence = 0.9;
    int k_neighbors = 2;
    PipelineMode mode = PipelineMode::Generalized;
    double window_hours = 24.0;
    int precision = 0;
    int attribute_bins = 5;
    bool include_attributes = true;
    std::vector<Quantity> quantities;  // empty -> all

    std::string out_path;  // empty -> no rule file written
    OutputFormat format = OutputFormat::Jsonl;

    void check() const;
};

struct PipelineResult {
    RuleSet rules;
    RuleSetStats stats;
    std::size_t transaction_count = 0;
    std::size_t sensor_count = 0;
    std::size_t record_count = 0;
};

/// parse -> build_kg -> load -> discretize -> (enrich) -> mine -> score.
/// Errors are rethrown tagged with the failing stage; the rule file is
/// written atomically (temp file + rename), so failures leave no partial
/// output.
PipelineResult run_pipeline(const RunConfig& config);

/// Inputs loaded once, then both the configured mode and the baseline mined
/// at each support threshold.
struct SweepRow {
    double support = 0.0;
    std::uint64_t rule_count = 0;
    std::optional<double> max_se;
    std::optional<double> min_se;
    std::uint64_t baseline_rule_count = 0;
};

std::vector<SweepRow> run_sweep(const RunConfig& config, const std::vector<double>& supports);

struct ComparisonReport {
    std::uint64_t baseline_count = 0;
    std::uint64_t semantic_count = 0;
    std::optional<double> semantic_max_se;
    std::optional<double> semantic_min_se;
    double count_ratio = 0.0;  // semantic / baseline; infinity if baseline is empty
};

/// Both sets must come from the same thresholds.
ComparisonReport compare(const RuleSet& baseline, const RuleSet& semantic);

struct RuleViolations {
    std::size_t rule_index = 0;  // into the checked RuleSet
    std::uint64_t violations = 0;  // antecedent held, consequent did not
    std::uint64_t antecedent_count = 0;
    double rate = 0.0;  // violations / antecedent_count (0 when never applicable)
};

/// Per-rule violation counts against a db, sorted by descending violations
/// (ties keep rule order).
std::vector<RuleViolations> check_rules(const RuleSet& rules, const TransactionDB& db);

/// Rule records, one per line: {"antecedent": [...], "consequent": [...],
/// "support": s, "confidence": c, "semantic_expressivity": e} with items in
/// the stable item-string grammar. CSV uses the same item strings,
/// space-joined per side.
std::string render_rules(const RuleSet& rules, OutputFormat format);
void write_rules_atomic(const RuleSet& rules, const std::string& path, OutputFormat format);

/// Parse a JSONL rule file back (thresholds are not stored in the file and
/// come back as 0).
RuleSet read_rules_jsonl(const std::string& path);

std::string render_stats_json(const PipelineResult& result, const RunConfig& config);

/// Loaded inputs shared by the pipeline entry points.
struct PipelineInputs {
    NetworkModel model;
    Schema schema;
    SensorMap sensors;
    KnowledgeGraph kg;
    TransactionDB db;
    std::size_t record_count = 0;
};

PipelineInputs load_inputs(const RunConfig& config);

/// Mine `db` per the configured mode (baseline skips enrichment).
RuleSet mine_with_mode(const PipelineInputs& inputs, const RunConfig& config, double min_support);

} // namespace semrl
