#include "semrl/enrich.hpp"

#include "semrl/error.hpp"
#include "semrl/quality.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace semrl {

void EnrichmentConfig::check() const {
    if (k_neighbors < 0) throw Error("k_neighbors must be >= 0");
    if (attribute_bins < 1) throw Error("attribute_bins must be >= 1");
}

Enricher::Enricher(const KnowledgeGraph& kg, EnrichmentConfig config)
    : kg_(&kg), config_(config) {
    config_.check();
    for (const auto& [id, node] : kg.nodes()) {
        for (const auto& [attr, value] : node.attributes) {
            auto [it, inserted] = ranges_.try_emplace({node.klass, attr}, value, value);
            if (!inserted) {
                it->second.first = std::min(it->second.first, value);
                it->second.second = std::max(it->second.second, value);
            }
        }
    }
}

std::int32_t Enricher::attribute_bin(const std::string& klass, const std::string& attr,
                                     double value) const {
    auto it = ranges_.find({klass, attr});
    if (it == ranges_.end()) throw Error("no observed values for " + klass + "." + attr);
    const auto [lo, hi] = it->second;
    if (hi <= lo) return 0;
    double t = (value - lo) / (hi - lo) * config_.attribute_bins;
    auto bin = static_cast<std::int32_t>(t);
    return std::clamp(bin, 0, config_.attribute_bins - 1);
}

CanonicalNeighborhood Enricher::canonicalize(const std::string& sensor_id) const {
    if (!kg_->has_node(sensor_id)) throw Error("unknown sensor \"" + sensor_id + "\"");

    // BFS layer by layer. Within each new layer the visit order is sorted by
    // (class, reaching predicate, attribute bin vector, degree, id) so that
    // label assignment depends only on neighborhood structure; the concrete
    // id is a last-resort tiebreak.
    std::map<std::string, int> dist;
    std::map<std::string, int> visit_pos;
    std::vector<std::string> visit_order;

    dist[sensor_id] = 0;
    visit_pos[sensor_id] = 0;
    visit_order.push_back(sensor_id);

    std::vector<std::string> layer{sensor_id};
    for (int d = 0; d < config_.k_neighbors && !layer.empty(); ++d) {
        struct Candidate {
            std::string klass;
            std::string predicate;
            std::vector<std::pair<std::string, std::int32_t>> bins;
            std::size_t degree;
            std::string id;

            auto key() const { return std::tie(klass, predicate, bins, degree, id); }
        };
        std::map<std::string, Candidate> found;

        for (const std::string& cur : layer) {
            for (std::uint32_t ei : kg_->incident_edges(cur)) {
                const KgEdge& e = kg_->edges()[ei];
                const std::string& other = e.subject == cur ? e.object : e.subject;
                if (dist.count(other)) continue;
                auto [it, inserted] = found.try_emplace(other);
                Candidate& c = it->second;
                std::string pred(to_string(e.predicate));
                if (inserted) {
                    const KgNode& node = kg_->node(other);
                    c.id = other;
                    c.klass = node.klass;
                    c.predicate = std::move(pred);
                    for (const auto& [attr, value] : node.attributes)
                        c.bins.emplace_back(attr, attribute_bin(node.klass, attr, value));
                    c.degree = kg_->degree(other);
                } else if (pred < c.predicate) {
                    c.predicate = std::move(pred);
                }
            }
        }

        std::vector<const Candidate*> order;
        order.reserve(found.size());
        for (const auto& [id, c] : found) order.push_back(&c);
        std::sort(order.begin(), order.end(),
                  [](const Candidate* a, const Candidate* b) { return a->key() < b->key(); });

        layer.clear();
        for (const Candidate* c : order) {
            dist[c->id] = d + 1;
            visit_pos[c->id] = static_cast<int>(visit_order.size());
            visit_order.push_back(c->id);
            layer.push_back(c->id);
        }
    }

    CanonicalNeighborhood out;
    std::map<std::string, int> class_counter;
    for (const std::string& id : visit_order) {
        const std::string& klass = kg_->node(id).klass;
        out.labels[id] = klass + "_" + std::to_string(++class_counter[klass]);
    }

    // relation items for every edge on a <=k-hop path. placed_in keeps its
    // stored sensor-as-subject orientation; connected_to is oriented away
    // from the root (nearer endpoint as subject, visit order on ties).
    std::set<std::uint32_t> picked;
    for (const auto& [id, d] : dist) {
        if (d > config_.k_neighbors - 1) continue;
        for (std::uint32_t ei : kg_->incident_edges(id)) {
            const KgEdge& e = kg_->edges()[ei];
            const std::string& other = e.subject == id ? e.object : e.subject;
            if (dist.count(other)) picked.insert(ei);
        }
    }
    for (std::uint32_t ei : picked) {
        const KgEdge& e = kg_->edges()[ei];
        const std::string& a = e.subject;
        const std::string& b = e.object;
        bool keep_stored = e.predicate == Predicate::PlacedIn ||
                           (dist[a] != dist[b] ? dist[a] < dist[b] : visit_pos[a] < visit_pos[b]);
        const std::string& subj = keep_stored ? a : b;
        const std::string& obj = keep_stored ? b : a;
        out.items.push_back(
            Item::relation(out.labels.at(subj), std::string(to_string(e.predicate)), out.labels.at(obj)));
    }

    if (config_.include_attributes) {
        for (const auto& [id, d] : dist) {
            const KgNode& node = kg_->node(id);
            for (const auto& [attr, value] : node.attributes)
                out.items.push_back(Item::attribute(out.labels.at(id), node.klass, attr,
                                                    attribute_bin(node.klass, attr, value)));
        }
    }

    normalize(out.items);
    return out;
}

std::vector<Item> Enricher::literal_items(const std::string& sensor_id) const {
    std::vector<Item> items;
    for (const KgEdge& e : k_hop_topology(*kg_, sensor_id, config_.k_neighbors))
        items.push_back(Item::relation(e.subject, std::string(to_string(e.predicate)), e.object));
    if (config_.include_attributes) {
        for (const AttributeTuple& a : k_hop_attributes(*kg_, sensor_id, config_.k_neighbors))
            items.push_back(
                Item::attribute(a.node_id, a.klass, a.attribute, attribute_bin(a.klass, a.attribute, a.value)));
    }
    return items;
}

Transaction Enricher::enrich(const Transaction& t) const {
    Transaction out;
    out.window_start = t.window_start;

    if (config_.mode == EnrichMode::Literal) {
        out.items = t.items;
        for (const auto& item : t.items) {
            if (item.kind != ItemKind::Measurement) continue;
            if (!kg_->has_node(item.subject))
                throw Error("sensor \"" + item.subject + "\" not in knowledge graph");
            auto extra = literal_items(item.subject);
            out.items.insert(out.items.end(), extra.begin(), extra.end());
        }
    } else {
        for (const auto& item : t.items) {
            if (item.kind != ItemKind::Measurement) {
                out.items.push_back(item);
                continue;
            }
            if (!kg_->has_node(item.subject))
                throw Error("sensor \"" + item.subject + "\" not in knowledge graph");
            CanonicalNeighborhood hood = canonicalize(item.subject);
            out.items.push_back(Item::measurement(hood.labels.at(item.subject), item.key, item.value));
            out.items.insert(out.items.end(), hood.items.begin(), hood.items.end());
        }
    }

    normalize(out.items);
    return out;
}

TransactionDB Enricher::enrich_db(const TransactionDB& db) const {
    TransactionDB out;
    out.reserve(db.size());
    for (const auto& t : db) out.push_back(enrich(t));
    return out;
}

CanonicalNeighborhood canonicalize_neighborhood(const KnowledgeGraph& kg, const std::string& sensor_id,
                                                const EnrichmentConfig& config) {
    return Enricher(kg, config).canonicalize(sensor_id);
}

Transaction enrich_transaction(const KnowledgeGraph& kg, const Transaction& t,
                               const EnrichmentConfig& config) {
    return Enricher(kg, config).enrich(t);
}

RuleSet mine_rules(const TransactionDB& db, double min_support, double min_confidence,
                   const Schema& schema) {
    FPTree tree = build_fp_tree(db, min_support);
    FrequentItemsets fis = mine_frequent(tree, min_support);
    RuleSet rules = generate_rules(fis, min_confidence);
    rules.min_support = min_support;
    score_rules(rules, schema);
    return rules;
}

RuleSet naive_semrl(const KnowledgeGraph& kg, const TransactionDB& db, const EnrichmentConfig& config,
                    double min_support, double min_confidence) {
    Enricher enricher(kg, config);
    TransactionDB enriched = enricher.enrich_db(db);
    return mine_rules(enriched, min_support, min_confidence, kg.schema());
}

} // namespace semrl
