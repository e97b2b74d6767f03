#include "semrl/quality.hpp"

#include "semrl/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace semrl {

SideAnalysis analyze_side(const std::vector<Item>& side, const Schema& schema) {
    struct Info {
        std::string klass;
        std::set<std::string> attrs;
    };
    std::map<std::string, Info> by_label;

    for (const auto& item : side) {
        by_label.try_emplace(item.subject);
        switch (item.kind) {
        case ItemKind::Measurement:
            break;  // levels are values, not instances
        case ItemKind::Relation:
            by_label.try_emplace(item.value);  // object is an instance too
            break;
        case ItemKind::Attribute: {
            Info& info = by_label[item.subject];
            if (item.klass.empty())
                throw Error("attribute item " + item.str() + " has no class information");
            if (!info.klass.empty() && info.klass != item.klass)
                throw Error("instance \"" + item.subject + "\" carries two classes: " + info.klass +
                            " and " + item.klass);
            info.klass = item.klass;
            if (!schema.has_class(item.klass))
                throw Error("class \"" + item.klass + "\" not in schema");
            if (!schema.has_attribute(item.klass, item.key))
                throw Error("class \"" + item.klass + "\" has no attribute \"" + item.key + "\"");
            info.attrs.insert(item.key);
            break;
        }
        }
    }

    SideAnalysis out;
    double ratio = by_label.empty() ? 0.0 : 1.0;
    for (const auto& [label, info] : by_label) {
        SideAnalysis::Instance inst;
        inst.label = label;
        inst.klass = info.klass;
        inst.attr_count = info.attrs.size();
        double factor = 0.0;
        if (inst.attr_count > 0) {
            std::size_t total = schema.attribute_count(info.klass);
            factor = total == 0 ? 0.0
                                : static_cast<double>(inst.attr_count) / static_cast<double>(total);
        }
        ratio *= factor;
        out.instances.push_back(std::move(inst));
    }
    out.attr_ratio = ratio;
    return out;
}

double attr_ratio(const std::vector<Item>& side, const Schema& schema) {
    if (side.empty()) throw Error("attr_ratio of an empty side");
    return analyze_side(side, schema).attr_ratio;
}

double semantic_expressivity(const std::vector<Item>& antecedent,
                             const std::vector<Item>& consequent, const Schema& schema) {
    SideAnalysis x = analyze_side(antecedent, schema);
    SideAnalysis y = analyze_side(consequent, schema);
    const std::size_t ix = x.instances.size();
    const std::size_t iy = y.instances.size();
    if (ix == 0 || iy == 0) throw Error("semantic expressivity needs at least one instance per side");

    double mean_instances = static_cast<double>(ix + iy) / 2.0;
    return (1.0 - x.attr_ratio) * (1.0 - y.attr_ratio) / mean_instances;
}

double semantic_expressivity(const AssociationRule& rule, const Schema& schema) {
    return semantic_expressivity(rule.antecedent, rule.consequent, schema);
}

void score_rules(RuleSet& rules, const Schema& schema) {
    for (auto& r : rules.rules) r.semantic_expressivity = semantic_expressivity(r, schema);
}

RuleSetStats ruleset_stats(const RuleSet& rules) {
    RuleSetStats stats;
    stats.count = rules.rules.size();
    auto bucket = [](double v) {
        int b = static_cast<int>(v * 10.0);
        return static_cast<std::size_t>(std::clamp(b, 0, 9));
    };
    for (const auto& r : rules.rules) {
        double se = r.semantic_expressivity;
        if (!stats.max_se || se > *stats.max_se) stats.max_se = se;
        if (!stats.min_se || se < *stats.min_se) stats.min_se = se;
        ++stats.support_hist[bucket(r.support)];
        ++stats.confidence_hist[bucket(r.confidence)];
    }
    return stats;
}

std::string format_score_2dp(double value) {
    // truncation toward zero, matching the usual 0.xx presentation of scores;
    // the epsilon keeps exact hundredths from falling one cent short
    double t = std::trunc(value * 100.0 + (value < 0 ? -1e-7 : 1e-7)) / 100.0;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", t);
    return buf;
}

} // namespace semrl
