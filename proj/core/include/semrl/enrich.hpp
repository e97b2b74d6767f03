#pragma once

#include "semrl/fpgrowth.hpp"
#include "semrl/ingest.hpp"
#include "semrl/items.hpp"
#include "semrl/kg.hpp"

#include <map>
#include <string>
#include <vector>

namespace semrl {

enum class EnrichMode {
    Literal,     // append graph items over concrete component ids
    Generalized  // rewrite onto canonical per-neighborhood variables
};

struct EnrichmentConfig {
    int k_neighbors = 2;
    EnrichMode mode = EnrichMode::Generalized;
    bool include_attributes = true;
    int attribute_bins = 5;  // equal-width bins over each attribute's observed range

    void check() const;
};

/// Canonical form of a sensor's k-hop neighborhood. Labels are
/// "<ClassName>_<i>" with per-class counters assigned in BFS visit order, so
/// isomorphic neighborhoods (same classes, predicates, attribute bins,
/// adjacency) come out with identical item sets.
struct CanonicalNeighborhood {
    std::map<std::string, std::string> labels;  // concrete id -> canonical label
    std::vector<Item> items;                    // relation / attribute items over labels
};

/// Read-only enrichment engine: precomputes attribute bin ranges from the
/// graph and resolves each sensor's neighborhood once per db pass.
class Enricher {
public:
    Enricher(const KnowledgeGraph& kg, EnrichmentConfig config);

    const EnrichmentConfig& config() const { return config_; }

    /// Bin index of a value on the observed range of (class, attribute).
    std::int32_t attribute_bin(const std::string& klass, const std::string& attr, double value) const;

    CanonicalNeighborhood canonicalize(const std::string& sensor_id) const;

    Transaction enrich(const Transaction& t) const;
    TransactionDB enrich_db(const TransactionDB& db) const;

private:
    std::vector<Item> literal_items(const std::string& sensor_id) const;

    const KnowledgeGraph* kg_;
    EnrichmentConfig config_;
    std::map<std::pair<std::string, std::string>, std::pair<double, double>> ranges_;
};

/// One-shot wrappers over Enricher.
CanonicalNeighborhood canonicalize_neighborhood(const KnowledgeGraph& kg, const std::string& sensor_id,
                                                const EnrichmentConfig& config);
Transaction enrich_transaction(const KnowledgeGraph& kg, const Transaction& t,
                               const EnrichmentConfig& config);

/// FP-Growth + rule generation + expressivity scoring on a transaction db
/// as-is (the non-semantic baseline path).
RuleSet mine_rules(const TransactionDB& db, double min_support, double min_confidence,
                   const Schema& schema);

/// Enrich every transaction with k-hop topology and attributes from the
/// graph, then mine. Output ordering is deterministic: descending support,
/// then confidence, then item order.
RuleSet naive_semrl(const KnowledgeGraph& kg, const TransactionDB& db, const EnrichmentConfig& config,
                    double min_support, double min_confidence);

} // namespace semrl
