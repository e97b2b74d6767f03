#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace semrl {

// The market-basket vocabulary mined by FP-Growth. Three kinds of items:
//
//   Measurement  m(<label>,<quantity>,<level>)   discretized sensor reading
//   Relation     r(<subj>,<pred>,<obj>)          edge taken from the graph
//   Attribute    a(<label>,<attr>,<bin>)         binned component attribute
//
// The rendered form above is the stable on-disk grammar for rule files.
// Labels are concrete component/sensor ids in literal mode and canonical
// variables (e.g. "Junction_1") in generalized mode.

enum class ItemKind : std::uint8_t { Measurement = 0, Relation = 1, Attribute = 2 };

struct Item {
    ItemKind kind = ItemKind::Measurement;
    std::string subject;  // instance label
    std::string key;      // quantity | predicate | attribute name
    std::string value;    // level text | object label | unused
    std::int32_t bin = -1;

    // Class of the subject for Attribute items. Annotation only: it is not
    // part of the item's identity (the rendered grammar omits it), so items
    // parsed back from a rule file compare equal to pipeline-produced ones.
    std::string klass;

    static Item measurement(std::string label, std::string quantity, std::string level);
    static Item relation(std::string subject, std::string predicate, std::string object);
    static Item attribute(std::string label, std::string klass, std::string attr, std::int32_t bin);

    /// Render in the stable item-string grammar.
    std::string str() const;

    /// Inverse of str(). Attribute items come back with an empty klass.
    static Item parse(const std::string& text);

private:
    auto tie() const { return std::tie(kind, subject, key, value, bin); }

public:
    friend bool operator==(const Item& a, const Item& b) { return a.tie() == b.tie(); }
    friend std::strong_ordering operator<=>(const Item& a, const Item& b) { return a.tie() <=> b.tie(); }
};

/// One time window's worth of items. `items` is kept sorted and
/// duplicate-free (set semantics), in the canonical Item order.
struct Transaction {
    std::int64_t window_start = 0;  // unix seconds, UTC
    std::vector<Item> items;

    bool contains(const Item& item) const;
    bool contains_all(const std::vector<Item>& subset) const;

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

using TransactionDB = std::vector<Transaction>;

/// Sort + dedupe, establishing the set invariant.
void normalize(std::vector<Item>& items);

} // namespace semrl
