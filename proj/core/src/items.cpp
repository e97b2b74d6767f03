#include "semrl/items.hpp"

#include "semrl/error.hpp"

#include <algorithm>

namespace semrl {

Item Item::measurement(std::string label, std::string quantity, std::string level) {
    Item i;
    i.kind = ItemKind::Measurement;
    i.subject = std::move(label);
    i.key = std::move(quantity);
    i.value = std::move(level);
    return i;
}

Item Item::relation(std::string subject, std::string predicate, std::string object) {
    Item i;
    i.kind = ItemKind::Relation;
    i.subject = std::move(subject);
    i.key = std::move(predicate);
    i.value = std::move(object);
    return i;
}

Item Item::attribute(std::string label, std::string klass, std::string attr, std::int32_t bin) {
    Item i;
    i.kind = ItemKind::Attribute;
    i.subject = std::move(label);
    i.key = std::move(attr);
    i.bin = bin;
    i.klass = std::move(klass);
    return i;
}

std::string Item::str() const {
    switch (kind) {
    case ItemKind::Measurement:
        return "m(" + subject + "," + key + "," + value + ")";
    case ItemKind::Relation:
        return "r(" + subject + "," + key + "," + value + ")";
    case ItemKind::Attribute:
        return "a(" + subject + "," + key + "," + std::to_string(bin) + ")";
    }
    return {};
}

Item Item::parse(const std::string& text) {
    auto fail = [&] { throw ParseError("item \"" + text + "\"", "not a valid item string"); };
    if (text.size() < 4 || text[1] != '(' || text.back() != ')') fail();

    const char k = text[0];
    std::vector<std::string> fields;
    std::string cur;
    for (std::size_t i = 2; i + 1 < text.size(); ++i) {
        if (text[i] == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(text[i]);
        }
    }
    fields.push_back(cur);
    if (fields.size() != 3) fail();

    switch (k) {
    case 'm':
        return measurement(fields[0], fields[1], fields[2]);
    case 'r':
        return relation(fields[0], fields[1], fields[2]);
    case 'a': {
        std::int32_t bin = 0;
        try {
            std::size_t pos = 0;
            bin = std::stoi(fields[2], &pos);
            if (pos != fields[2].size()) fail();
        } catch (const std::exception&) {
            fail();
        }
        return attribute(fields[0], "", fields[1], bin);
    }
    default:
        fail();
    }
    return {};
}

bool Transaction::contains(const Item& item) const {
    return std::binary_search(items.begin(), items.end(), item);
}

bool Transaction::contains_all(const std::vector<Item>& subset) const {
    for (const auto& it : subset)
        if (!contains(it)) return false;
    return true;
}

void normalize(std::vector<Item>& items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
}

} // namespace semrl
