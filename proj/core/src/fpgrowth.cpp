#include "semrl/fpgrowth.hpp"

#include "semrl/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace semrl {

std::uint64_t support_threshold(double min_support, std::uint64_t transaction_count) {
    if (!(min_support > 0.0) || min_support > 1.0)
        throw Error("min_support must be in (0, 1]");
    double raw = min_support * static_cast<double>(transaction_count);
    auto count = static_cast<std::uint64_t>(std::ceil(raw - 1e-9));
    return std::max<std::uint64_t>(count, 1);
}

FPTree FPTree::build(const TransactionDB& db, double min_support) {
    if (db.empty()) throw Error("empty transaction database, nothing to mine");

    FPTree tree;
    tree.transaction_count_ = db.size();
    tree.min_support_ = min_support;
    tree.min_count_ = support_threshold(min_support, db.size());

    // pass 1: global supports; map iteration gives canonical item order
    std::map<Item, std::uint64_t> counts;
    for (const auto& t : db)
        for (const auto& item : t.items) ++counts[item];

    std::map<Item, std::int32_t> id_of;
    for (const auto& [item, c] : counts) {
        if (c < tree.min_count_) continue;
        id_of.emplace(item, static_cast<std::int32_t>(tree.vocabulary_.size()));
        tree.vocabulary_.push_back(item);
        tree.header_.push_back({static_cast<std::int32_t>(tree.header_.size()), c, 0});
    }

    // header order: descending support, ties by item order (ascending id)
    std::stable_sort(tree.header_.begin(), tree.header_.end(),
                     [](const HeaderEntry& a, const HeaderEntry& b) { return a.support > b.support; });
    std::vector<std::uint32_t> rank(tree.vocabulary_.size());
    for (std::uint32_t pos = 0; pos < tree.header_.size(); ++pos) rank[tree.header_[pos].item] = pos;

    tree.nodes_.push_back({});  // root

    // pass 2: insert each transaction's surviving items in header order
    std::vector<std::int32_t> filtered;
    for (const auto& t : db) {
        filtered.clear();
        for (const auto& item : t.items) {
            auto it = id_of.find(item);
            if (it != id_of.end()) filtered.push_back(it->second);
        }
        std::sort(filtered.begin(), filtered.end(),
                  [&](std::int32_t a, std::int32_t b) { return rank[a] < rank[b]; });

        std::uint32_t cur = 0;
        for (std::int32_t item : filtered) {
            auto [child, inserted] = tree.nodes_[cur].children.try_emplace(item, 0);
            if (inserted) {
                std::uint32_t idx = static_cast<std::uint32_t>(tree.nodes_.size());
                child->second = idx;
                Node n;
                n.item = item;
                n.parent = cur;
                HeaderEntry& h = tree.header_[rank[item]];
                n.next = h.head;
                h.head = idx;
                tree.nodes_.push_back(std::move(n));
            }
            cur = tree.nodes_[cur].children.at(item);
            ++tree.nodes_[cur].count;
        }
    }
    return tree;
}

FPTree build_fp_tree(const TransactionDB& db, double min_support) {
    return FPTree::build(db, min_support);
}

std::uint64_t FrequentItemsets::support(const std::vector<std::int32_t>& itemset) const {
    auto it = entries.find(itemset);
    return it == entries.end() ? 0 : it->second;
}

std::vector<Item> FrequentItemsets::materialize(const std::vector<std::int32_t>& itemset) const {
    std::vector<Item> out;
    out.reserve(itemset.size());
    for (std::int32_t id : itemset) out.push_back(vocabulary.at(id));
    return out;
}

namespace {

// Conditional pattern base: prefix paths in ascending header-rank order,
// each carrying the count of the tree node it was lifted from.
using WeightedPath = std::pair<std::vector<std::int32_t>, std::uint64_t>;

void mine_base(const std::vector<WeightedPath>& base, const std::vector<std::int32_t>& suffix,
               std::uint64_t min_count, FrequentItemsets& out) {
    std::map<std::int32_t, std::uint64_t> counts;
    for (const auto& [path, w] : base)
        for (std::int32_t item : path) counts[item] += w;

    for (const auto& [item, count] : counts) {
        if (count < min_count) continue;

        std::vector<std::int32_t> itemset = suffix;
        itemset.push_back(item);
        std::sort(itemset.begin(), itemset.end());
        out.entries.emplace(std::move(itemset), count);

        std::vector<WeightedPath> sub;
        for (const auto& [path, w] : base) {
            auto pos = std::find(path.begin(), path.end(), item);
            if (pos == path.end() || pos == path.begin()) continue;
            sub.emplace_back(std::vector<std::int32_t>(path.begin(), pos), w);
        }
        if (!sub.empty()) {
            std::vector<std::int32_t> next_suffix = suffix;
            next_suffix.push_back(item);
            mine_base(sub, next_suffix, min_count, out);
        }
    }
}

} // namespace

FrequentItemsets mine_frequent(const FPTree& tree, double min_support) {
    std::uint64_t min_count = support_threshold(min_support, tree.transaction_count());
    if (min_count != tree.min_count())
        throw Error("mine_frequent called with a different min_support than the tree was built with");

    FrequentItemsets out;
    out.vocabulary = tree.vocabulary();
    out.transaction_count = tree.transaction_count();

    for (const auto& h : tree.header()) {
        out.entries.emplace(std::vector<std::int32_t>{h.item}, h.support);

        // conditional pattern base of this item from its node chain
        std::vector<WeightedPath> base;
        for (std::uint32_t ni = h.head; ni != 0; ni = tree.nodes()[ni].next) {
            const auto& node = tree.nodes()[ni];
            std::vector<std::int32_t> path;
            for (std::uint32_t p = node.parent; p != 0; p = tree.nodes()[p].parent)
                path.push_back(tree.nodes()[p].item);
            if (path.empty()) continue;
            std::reverse(path.begin(), path.end());
            base.emplace_back(std::move(path), node.count);
        }
        if (!base.empty()) mine_base(base, {h.item}, min_count, out);
    }
    return out;
}

RuleSet generate_rules(const FrequentItemsets& fis, double min_confidence) {
    if (!(min_confidence > 0.0) || min_confidence > 1.0)
        throw Error("min_confidence must be in (0, 1]");

    RuleSet rs;
    rs.transaction_count = fis.transaction_count;
    rs.min_confidence = min_confidence;
    const double n = static_cast<double>(fis.transaction_count);

    for (const auto& [itemset, joint] : fis.entries) {
        const std::size_t size = itemset.size();
        if (size < 2) continue;
        if (size > 62) throw Error("frequent itemset too large to expand into rules");

        // every non-empty proper subset as antecedent
        const std::uint64_t limit = (1ull << size) - 1;
        std::vector<std::int32_t> antecedent, consequent;
        for (std::uint64_t mask = 1; mask < limit; ++mask) {
            antecedent.clear();
            consequent.clear();
            for (std::size_t i = 0; i < size; ++i)
                ((mask >> i) & 1 ? antecedent : consequent).push_back(itemset[i]);

            std::uint64_t ante = fis.support(antecedent);
            // confidence test on exact counts: joint/ante >= min_confidence
            if (static_cast<double>(joint) < min_confidence * static_cast<double>(ante) - 1e-9)
                continue;

            AssociationRule rule;
            rule.antecedent = fis.materialize(antecedent);
            rule.consequent = fis.materialize(consequent);
            rule.joint_count = joint;
            rule.antecedent_count = ante;
            rule.support = static_cast<double>(joint) / n;
            rule.confidence = static_cast<double>(joint) / static_cast<double>(ante);
            rs.rules.push_back(std::move(rule));
        }
    }

    // descending support, then confidence (exact rational compare), then items
    std::sort(rs.rules.begin(), rs.rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
        if (a.joint_count != b.joint_count) return a.joint_count > b.joint_count;
        // a.conf > b.conf  <=>  a.joint*b.ante > b.joint*a.ante
        std::uint64_t lhs = a.joint_count * b.antecedent_count;
        std::uint64_t rhs = b.joint_count * a.antecedent_count;
        if (lhs != rhs) return lhs > rhs;
        if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
        return a.consequent < b.consequent;
    });
    return rs;
}

FrequentItemsets apriori_oracle(const TransactionDB& db, double min_support) {
    if (db.empty()) throw Error("empty transaction database, nothing to mine");

    std::set<Item> distinct;
    for (const auto& t : db) distinct.insert(t.items.begin(), t.items.end());
    if (distinct.size() > 20)
        throw Error("apriori oracle limited to 20 distinct items, got " + std::to_string(distinct.size()));

    FrequentItemsets out;
    out.transaction_count = db.size();
    out.vocabulary.assign(distinct.begin(), distinct.end());
    const std::uint64_t min_count = support_threshold(min_support, db.size());
    const std::size_t n_items = out.vocabulary.size();

    std::map<Item, std::int32_t> id_of;
    for (std::size_t i = 0; i < n_items; ++i) id_of[out.vocabulary[i]] = static_cast<std::int32_t>(i);

    std::vector<std::uint32_t> masks;
    masks.reserve(db.size());
    for (const auto& t : db) {
        std::uint32_t m = 0;
        for (const auto& item : t.items) m |= 1u << id_of[item];
        masks.push_back(m);
    }

    auto count_mask = [&](std::uint32_t m) {
        std::uint64_t c = 0;
        for (std::uint32_t tm : masks)
            if ((tm & m) == m) ++c;
        return c;
    };

    // L1
    std::vector<std::vector<std::int32_t>> level;
    for (std::size_t i = 0; i < n_items; ++i) {
        std::uint64_t c = count_mask(1u << i);
        if (c >= min_count) {
            level.push_back({static_cast<std::int32_t>(i)});
            out.entries.emplace(level.back(), c);
        }
    }

    // levelwise join + prune + count
    while (!level.empty()) {
        std::set<std::vector<std::int32_t>> prev(level.begin(), level.end());
        std::vector<std::vector<std::int32_t>> next;

        for (std::size_t a = 0; a < level.size(); ++a) {
            for (std::size_t b = a + 1; b < level.size(); ++b) {
                const auto& A = level[a];
                const auto& B = level[b];
                if (!std::equal(A.begin(), A.end() - 1, B.begin(), B.end() - 1)) continue;

                std::vector<std::int32_t> cand = A;
                cand.push_back(B.back());
                std::sort(cand.begin(), cand.end());

                // anti-monotone prune: every (k-1)-subset must be frequent
                bool ok = true;
                for (std::size_t drop = 0; ok && drop < cand.size(); ++drop) {
                    std::vector<std::int32_t> sub;
                    for (std::size_t i = 0; i < cand.size(); ++i)
                        if (i != drop) sub.push_back(cand[i]);
                    ok = prev.count(sub) != 0;
                }
                if (!ok) continue;

                std::uint32_t m = 0;
                for (std::int32_t i : cand) m |= 1u << i;
                std::uint64_t c = count_mask(m);
                if (c >= min_count) {
                    next.push_back(cand);
                    out.entries.emplace(cand, c);
                }
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        level = std::move(next);
    }
    return out;
}

} // namespace semrl
