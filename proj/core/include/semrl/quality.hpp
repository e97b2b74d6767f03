#pragma once

#include "semrl/fpgrowth.hpp"
#include "semrl/kg.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semrl {

// Rule-side generalizability scoring. An instance is any label occurring in
// a side (measurement/relation/attribute subjects and relation objects);
// attribute items are the only ones that count toward attribute coverage.

struct SideAnalysis {
    struct Instance {
        std::string label;
        std::string klass;       // empty when the side has no attribute item for it
        std::size_t attr_count = 0;  // distinct schema attributes constrained
    };
    std::vector<Instance> instances;  // sorted by label
    double attr_ratio = 0.0;
};

SideAnalysis analyze_side(const std::vector<Item>& side, const Schema& schema);

/// Product over instances of attr_count/attributes(class); an instance with
/// no attribute items (or a class with no schema attributes) contributes 0.
double attr_ratio(const std::vector<Item>& side, const Schema& schema);

/// (1 - attr_ratio(X)) * (1 - attr_ratio(Y)) / ((instances(X) + instances(Y)) / 2)
double semantic_expressivity(const std::vector<Item>& antecedent,
                             const std::vector<Item>& consequent, const Schema& schema);
double semantic_expressivity(const AssociationRule& rule, const Schema& schema);

/// Fill semantic_expressivity on every rule.
void score_rules(RuleSet& rules, const Schema& schema);

struct RuleSetStats {
    std::size_t count = 0;
    std::optional<double> max_se;
    std::optional<double> min_se;
    std::array<std::uint64_t, 10> support_hist{};     // 10 equal bins over [0,1]
    std::array<std::uint64_t, 10> confidence_hist{};
};

RuleSetStats ruleset_stats(const RuleSet& rules);

/// Two-decimal presentation used in reports; truncates toward zero
/// (0.2857... renders as "0.28").
std::string format_score_2dp(double value);

} // namespace semrl
