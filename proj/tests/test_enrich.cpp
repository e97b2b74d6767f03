#include "semrl/enrich.hpp"

#include "semrl/error.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace semrl;

namespace {

// two structurally identical wings: a sensor on a junction with three pipes,
// mirrored with fresh ids and a junction in between to keep them apart
KnowledgeGraph twin_graph() {
    std::vector<KgNode> nodes;
    std::vector<KgEdge> edges;
    auto junction = [&](const std::string& id, double elev) {
        nodes.push_back({id, "Junction", {{"elevation", elev}}});
    };
    auto pipe = [&](const std::string& id, double len, const std::string& to) {
        nodes.push_back({id, "Pipe", {{"length", len}}});
        edges.push_back({id, Predicate::ConnectedTo, to});
    };
    junction("JA", 10.0);
    pipe("PA1", 100.0, "JA");
    pipe("PA2", 200.0, "JA");
    pipe("PA3", 900.0, "JA");
    junction("JB", 10.0);
    pipe("PB1", 100.0, "JB");
    pipe("PB2", 200.0, "JB");
    pipe("PB3", 900.0, "JB");
    junction("JMID", 55.0);
    edges.push_back({"PA3", Predicate::ConnectedTo, "JMID"});
    edges.push_back({"PB3", Predicate::ConnectedTo, "JMID"});

    nodes.push_back({"sa", "WaterPressureSensor", {}});
    nodes.push_back({"sb", "WaterPressureSensor", {}});
    edges.push_back({"sa", Predicate::PlacedIn, "JA"});
    edges.push_back({"sb", Predicate::PlacedIn, "JB"});
    return KnowledgeGraph(Schema::epanet_default(), std::move(nodes), std::move(edges));
}

// sensor -> junction -> single pipe, the sample-rule shape
KnowledgeGraph chain_graph() {
    std::vector<KgNode> nodes = {
        {"J7", "Junction", {}},
        {"P9", "Pipe", {}},
        {"J8", "Junction", {}},
        {"s_p", "WaterPressureSensor", {}},
    };
    std::vector<KgEdge> edges = {
        {"P9", Predicate::ConnectedTo, "J7"},
        {"P9", Predicate::ConnectedTo, "J8"},
        {"s_p", Predicate::PlacedIn, "J7"},
    };
    return KnowledgeGraph(Schema::epanet_default(), std::move(nodes), std::move(edges));
}

std::set<std::string> item_strings(const std::vector<Item>& items) {
    std::set<std::string> out;
    for (const auto& i : items) out.insert(i.str());
    return out;
}

} // namespace

TEST_CASE("isomorphic neighborhoods canonicalize to identical item sets") {
    KnowledgeGraph kg = twin_graph();
    EnrichmentConfig config;
    config.k_neighbors = 2;

    CanonicalNeighborhood a = canonicalize_neighborhood(kg, "sa", config);
    CanonicalNeighborhood b = canonicalize_neighborhood(kg, "sb", config);
    CHECK(a.items == b.items);
    CHECK(a.labels.at("sa") == b.labels.at("sb"));

    SUBCASE("canonicalizing twice is stable") {
        CanonicalNeighborhood again = canonicalize_neighborhood(kg, "sa", config);
        CHECK(a.items == again.items);
        CHECK(a.labels == again.labels);
    }
}

TEST_CASE("canonicalization is idempotent on already-canonical ids") {
    std::vector<KgNode> nodes = {
        {"Junction_1", "Junction", {}},
        {"Pipe_1", "Pipe", {}},
        {"WaterPressureSensor_1", "WaterPressureSensor", {}},
    };
    std::vector<KgEdge> edges = {
        {"Pipe_1", Predicate::ConnectedTo, "Junction_1"},
        {"WaterPressureSensor_1", Predicate::PlacedIn, "Junction_1"},
    };
    KnowledgeGraph kg(Schema::epanet_default(), std::move(nodes), std::move(edges));

    EnrichmentConfig config;
    config.k_neighbors = 2;
    CanonicalNeighborhood hood = canonicalize_neighborhood(kg, "WaterPressureSensor_1", config);
    for (const auto& [id, label] : hood.labels) CHECK(id == label);
}

TEST_CASE("k=0 canonicalization is a single label with no relations") {
    KnowledgeGraph kg = chain_graph();
    EnrichmentConfig config;
    config.k_neighbors = 0;
    CanonicalNeighborhood hood = canonicalize_neighborhood(kg, "s_p", config);
    CHECK(hood.labels.size() == 1);
    CHECK(hood.labels.at("s_p") == "WaterPressureSensor_1");
    CHECK(hood.items.empty());
}

TEST_CASE("sample-rule shape at k=2: placed_in plus junction-to-pipe") {
    KnowledgeGraph kg = chain_graph();
    EnrichmentConfig config;
    config.k_neighbors = 2;
    config.include_attributes = false;

    CanonicalNeighborhood hood = canonicalize_neighborhood(kg, "s_p", config);
    CHECK(item_strings(hood.items) ==
          std::set<std::string>{"r(WaterPressureSensor_1,placed_in,Junction_1)",
                                "r(Junction_1,connected_to,Pipe_1)"});
}

TEST_CASE("unknown sensor is rejected") {
    KnowledgeGraph kg = chain_graph();
    CHECK_THROWS_AS(canonicalize_neighborhood(kg, "ghost", {}), Error);

    Transaction t;
    t.items.push_back(Item::measurement("ghost", "pressure", "43"));
    CHECK_THROWS_AS(enrich_transaction(kg, t, {}), Error);
}

TEST_CASE("literal enrichment appends the k-hop graph items") {
    KnowledgeGraph kg = chain_graph();
    Transaction t;
    t.window_start = 86400;
    t.items.push_back(Item::measurement("s_p", "pressure", "43"));

    SUBCASE("k=1 adds the placed_in triple over concrete ids") {
        EnrichmentConfig config;
        config.mode = EnrichMode::Literal;
        config.k_neighbors = 1;
        Transaction out = enrich_transaction(kg, t, config);
        CHECK(item_strings(out.items) ==
              std::set<std::string>{"m(s_p,pressure,43)", "r(s_p,placed_in,J7)"});
        CHECK(out.window_start == t.window_start);
    }
    SUBCASE("k=2 also reaches the pipe edge, in stored orientation") {
        EnrichmentConfig config;
        config.mode = EnrichMode::Literal;
        config.k_neighbors = 2;
        Transaction out = enrich_transaction(kg, t, config);
        CHECK(item_strings(out.items) ==
              std::set<std::string>{"m(s_p,pressure,43)", "r(s_p,placed_in,J7)",
                                    "r(P9,connected_to,J7)"});
    }
    SUBCASE("k=0 is the identity") {
        EnrichmentConfig config;
        config.mode = EnrichMode::Literal;
        config.k_neighbors = 0;
        Transaction out = enrich_transaction(kg, t, config);
        CHECK(out.items == t.items);
    }
}

TEST_CASE("literal enrichment output always contains the input") {
    KnowledgeGraph kg = twin_graph();
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> level(1, 5);
    EnrichmentConfig config;
    config.mode = EnrichMode::Literal;

    for (int k = 0; k <= 3; ++k) {
        config.k_neighbors = k;
        Enricher enricher(kg, config);
        for (int round = 0; round < 10; ++round) {
            Transaction t;
            t.items.push_back(
                Item::measurement("sa", "pressure", std::to_string(level(rng))));
            if (round % 2)
                t.items.push_back(
                    Item::measurement("sb", "pressure", std::to_string(level(rng))));
            normalize(t.items);
            Transaction out = enricher.enrich(t);
            CHECK(std::includes(out.items.begin(), out.items.end(), t.items.begin(), t.items.end()));
        }
    }
}

TEST_CASE("generalized enrichment rewrites measurements onto canonical labels") {
    KnowledgeGraph kg = twin_graph();
    EnrichmentConfig config;
    config.k_neighbors = 2;

    Transaction ta;
    ta.items.push_back(Item::measurement("sa", "pressure", "43"));
    Transaction tb;
    tb.items.push_back(Item::measurement("sb", "pressure", "43"));

    Enricher enricher(kg, config);
    Transaction ea = enricher.enrich(ta);
    Transaction eb = enricher.enrich(tb);
    CHECK(ea.items == eb.items);  // twins with equal levels are indistinguishable

    bool has_canonical_measurement = false;
    for (const auto& item : ea.items)
        if (item.kind == ItemKind::Measurement && item.subject == "WaterPressureSensor_1")
            has_canonical_measurement = true;
    CHECK(has_canonical_measurement);
}

TEST_CASE("attribute items carry bins from the observed range") {
    KnowledgeGraph kg = twin_graph();
    EnrichmentConfig config;
    config.k_neighbors = 2;
    config.attribute_bins = 4;
    Enricher enricher(kg, config);

    // lengths observed: 100..900 -> width 200 per bin
    CHECK(enricher.attribute_bin("Pipe", "length", 100.0) == 0);
    CHECK(enricher.attribute_bin("Pipe", "length", 200.0) == 0);
    CHECK(enricher.attribute_bin("Pipe", "length", 350.0) == 1);
    CHECK(enricher.attribute_bin("Pipe", "length", 900.0) == 3);  // max clamps to the last bin

    CanonicalNeighborhood hood = enricher.canonicalize("sa");
    bool found = false;
    for (const auto& item : hood.items)
        if (item.kind == ItemKind::Attribute && item.key == "length" && item.bin == 3) found = true;
    CHECK(found);

    SUBCASE("constant attributes land in bin 0") {
        CHECK(enricher.attribute_bin("Junction", "elevation", 10.0) >= 0);
        std::vector<KgNode> nodes = {{"J1", "Junction", {{"elevation", 5.0}}},
                                     {"P1", "Pipe", {{"length", 7.0}}}};
        std::vector<KgEdge> edges = {{"P1", Predicate::ConnectedTo, "J1"}};
        KnowledgeGraph flat(Schema::epanet_default(), std::move(nodes), std::move(edges));
        Enricher e2(flat, config);
        CHECK(e2.attribute_bin("Pipe", "length", 7.0) == 0);
    }
}

TEST_CASE("generalized rules are invariant under renaming of concrete ids") {
    // mine twice: once as built, once with every component id renamed
    auto build_db = [](const std::string& prefix) {
        std::vector<KgNode> nodes;
        std::vector<KgEdge> edges;
        auto jid = [&](int i) { return prefix + "J" + std::to_string(i); };
        auto pid = [&](int i) { return prefix + "P" + std::to_string(i); };
        for (int i = 0; i < 4; ++i) nodes.push_back({jid(i), "Junction", {{"elevation", 5.0 * i}}});
        for (int i = 0; i < 3; ++i) {
            nodes.push_back({pid(i), "Pipe", {{"length", 100.0 + 50.0 * i}}});
            edges.push_back({pid(i), Predicate::ConnectedTo, jid(i)});
            edges.push_back({pid(i), Predicate::ConnectedTo, jid(i + 1)});
        }
        nodes.push_back({prefix + "s0", "WaterPressureSensor", {}});
        nodes.push_back({prefix + "s1", "WaterConsumptionSensor", {}});
        edges.push_back({prefix + "s0", Predicate::PlacedIn, jid(0)});
        edges.push_back({prefix + "s1", Predicate::PlacedIn, jid(3)});
        KnowledgeGraph kg(Schema::epanet_default(), std::move(nodes), std::move(edges));

        TransactionDB db;
        std::mt19937 rng(42);  // same data either way
        std::uniform_int_distribution<int> level(40, 44);
        for (int d = 0; d < 30; ++d) {
            Transaction t;
            t.window_start = d * 86400;
            int v = level(rng);
            t.items.push_back(Item::measurement(prefix + "s0", "pressure", std::to_string(v)));
            t.items.push_back(Item::measurement(prefix + "s1", "demand", std::to_string(v - 5)));
            normalize(t.items);
            db.push_back(std::move(t));
        }
        return std::make_pair(std::move(kg), std::move(db));
    };

    EnrichmentConfig config;
    config.k_neighbors = 2;
    auto [kg1, db1] = build_db("");
    auto [kg2, db2] = build_db("zzz_");
    RuleSet r1 = naive_semrl(kg1, db1, config, 0.2, 0.9);
    RuleSet r2 = naive_semrl(kg2, db2, config, 0.2, 0.9);
    CHECK(r1.rules == r2.rules);
    CHECK_FALSE(r1.rules.empty());
}

TEST_CASE("enrichment against a graph with no edges leaves literal rules at baseline") {
    // sensors exist in the graph but have no neighborhood at all
    std::vector<KgNode> nodes = {{"s0", "WaterPressureSensor", {}},
                                 {"s1", "WaterConsumptionSensor", {}}};
    KnowledgeGraph kg(Schema::epanet_default(), std::move(nodes), {});

    TransactionDB db;
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> level(1, 3);
    for (int d = 0; d < 20; ++d) {
        Transaction t;
        t.window_start = d * 86400;
        t.items.push_back(Item::measurement("s0", "pressure", std::to_string(level(rng))));
        t.items.push_back(Item::measurement("s1", "demand", std::to_string(level(rng))));
        normalize(t.items);
        db.push_back(std::move(t));
    }

    EnrichmentConfig config;
    config.mode = EnrichMode::Literal;
    config.k_neighbors = 3;
    RuleSet enriched = naive_semrl(kg, db, config, 0.2, 0.8);
    RuleSet baseline = mine_rules(db, 0.2, 0.8, Schema::epanet_default());
    CHECK(enriched.rules == baseline.rules);
}

TEST_CASE("support sweep counts match when no itemset sits between thresholds") {
    // every itemset has support 1.0 or 0.25: counts at 0.4 and 0.5 must agree
    TransactionDB db;
    for (int d = 0; d < 4; ++d) {
        Transaction t;
        t.window_start = d * 86400;
        t.items.push_back(Item::measurement("s0", "pressure", "7"));
        t.items.push_back(Item::measurement("s1", "demand", d == 0 ? "1" : "2"));
        normalize(t.items);
        db.push_back(std::move(t));
    }
    RuleSet at04 = mine_rules(db, 0.4, 0.9, Schema::epanet_default());
    RuleSet at05 = mine_rules(db, 0.5, 0.9, Schema::epanet_default());
    CHECK(at04.rules.size() == at05.rules.size());
}

TEST_CASE("toy db rules match brute-force enumeration") {
    // four transactions with a planted co-occurrence
    TransactionDB db = {
        testutil::tx({"a", "b", "c"}, 0),
        testutil::tx({"a", "b"}, 86400),
        testutil::tx({"a", "b", "d"}, 2 * 86400),
        testutil::tx({"c", "d"}, 3 * 86400),
    };
    const double min_support = 0.5, min_confidence = 0.9;
    RuleSet mined = mine_rules(db, min_support, min_confidence, Schema::epanet_default());

    // oracle: enumerate all antecedent/consequent splits of all item subsets
    std::vector<Item> universe;
    for (const auto& t : db)
        for (const auto& i : t.items) universe.push_back(i);
    normalize(universe);
    REQUIRE(universe.size() == 4);

    std::set<std::pair<std::vector<Item>, std::vector<Item>>> expected;
    auto support_count = [&](const std::vector<Item>& itemset) {
        std::uint64_t c = 0;
        for (const auto& t : db)
            if (t.contains_all(itemset)) ++c;
        return c;
    };
    for (unsigned z = 1; z < 16; ++z) {
        std::vector<Item> itemset;
        for (unsigned i = 0; i < 4; ++i)
            if (z >> i & 1) itemset.push_back(universe[i]);
        if (itemset.size() < 2) continue;
        std::uint64_t joint = support_count(itemset);
        if (joint < support_threshold(min_support, db.size())) continue;
        for (unsigned x = 1; x < (1u << itemset.size()) - 1; ++x) {
            std::vector<Item> ante, cons;
            for (unsigned i = 0; i < itemset.size(); ++i)
                (x >> i & 1 ? ante : cons).push_back(itemset[i]);
            std::uint64_t xa = support_count(ante);
            if (static_cast<double>(joint) / xa >= min_confidence - 1e-12)
                expected.insert({ante, cons});
        }
    }

    std::set<std::pair<std::vector<Item>, std::vector<Item>>> got;
    for (const auto& r : mined.rules) got.insert({r.antecedent, r.consequent});
    CHECK(got == expected);
}
