#pragma once

#include "semrl/items.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace semrl {

/// count >= ceil(min_support * n), with a small epsilon guard so decimal
/// thresholds land on the intended integer boundary. Always >= 1.
std::uint64_t support_threshold(double min_support, std::uint64_t transaction_count);

/// Prefix tree with per-item node chains. Items are interned: `vocabulary()`
/// maps the dense ids used everywhere below back to Items, in canonical Item
/// order. The header table is ordered by descending support, ties broken by
/// item order.
class FPTree {
public:
    struct Node {
        std::int32_t item = -1;  // -1 at the root
        std::uint64_t count = 0;
        std::uint32_t parent = 0;
        std::uint32_t next = 0;  // same-item chain, 0 terminates
        std::map<std::int32_t, std::uint32_t> children;
    };

    struct HeaderEntry {
        std::int32_t item = 0;
        std::uint64_t support = 0;
        std::uint32_t head = 0;  // first node of the chain, 0 if none
    };

    static FPTree build(const TransactionDB& db, double min_support);

    const std::vector<Item>& vocabulary() const { return vocabulary_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<HeaderEntry>& header() const { return header_; }
    std::uint64_t transaction_count() const { return transaction_count_; }
    std::uint64_t min_count() const { return min_count_; }
    double min_support() const { return min_support_; }

private:
    std::vector<Item> vocabulary_;
    std::vector<Node> nodes_;  // nodes_[0] is the root
    std::vector<HeaderEntry> header_;
    std::uint64_t transaction_count_ = 0;
    std::uint64_t min_count_ = 1;
    double min_support_ = 0.0;
};

/// Itemsets as sorted dense-id vectors -> exact support counts.
struct FrequentItemsets {
    std::vector<Item> vocabulary;
    std::map<std::vector<std::int32_t>, std::uint64_t> entries;
    std::uint64_t transaction_count = 0;

    std::uint64_t support(const std::vector<std::int32_t>& itemset) const;
    std::vector<Item> materialize(const std::vector<std::int32_t>& itemset) const;
};

struct AssociationRule {
    std::vector<Item> antecedent;
    std::vector<Item> consequent;
    std::uint64_t joint_count = 0;       // supp_count(X u Y)
    std::uint64_t antecedent_count = 0;  // supp_count(X)
    double support = 0.0;
    double confidence = 0.0;
    double semantic_expressivity = 0.0;

    friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

struct RuleSet {
    std::vector<AssociationRule> rules;
    std::uint64_t transaction_count = 0;
    double min_support = 0.0;
    double min_confidence = 0.0;
};

/// Items below threshold pruned, surviving items inserted in header order.
/// Throws on an empty db.
FPTree build_fp_tree(const TransactionDB& db, double min_support);

/// Recursive conditional-pattern-base mining. `min_support` must match the
/// tree's.
FrequentItemsets mine_frequent(const FPTree& tree, double min_support);

/// Every X -> Z\X with supp(Z)/supp(X) >= min_confidence, over frequent Z of
/// size >= 2. Rules come out sorted by (support desc, confidence desc, item
/// order); semantic_expressivity is left 0 for the caller to fill.
RuleSet generate_rules(const FrequentItemsets& fis, double min_confidence);

/// Levelwise brute-force miner, implemented independently of FPTree as a
/// test oracle. Refuses dbs with more than 20 distinct items.
FrequentItemsets apriori_oracle(const TransactionDB& db, double min_support);

} // namespace semrl
