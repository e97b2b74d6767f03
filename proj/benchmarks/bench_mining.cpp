#include "semrl/enrich.hpp"
#include "semrl/fpgrowth.hpp"
#include "semrl/ingest.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>

using namespace semrl;

namespace {

TransactionDB synthetic_db(int n_transactions, int n_items, double density, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    TransactionDB db;
    db.reserve(n_transactions);
    for (int i = 0; i < n_transactions; ++i) {
        Transaction t;
        t.window_start = i * 86400;
        for (int j = 0; j < n_items; ++j)
            if (coin(rng) < density)
                t.items.push_back(Item::measurement("s" + std::to_string(j), "pressure",
                                                    std::to_string(j % 7)));
        if (t.items.empty()) t.items.push_back(Item::measurement("s0", "pressure", "0"));
        normalize(t.items);
        db.push_back(std::move(t));
    }
    return db;
}

KnowledgeGraph ring_graph(int n_junctions) {
    std::vector<KgNode> nodes;
    std::vector<KgEdge> edges;
    auto jid = [](int i) { return "J" + std::to_string(i); };
    auto pid = [](int i) { return "P" + std::to_string(i); };
    for (int i = 0; i < n_junctions; ++i) {
        nodes.push_back({jid(i), "Junction", {{"elevation", 5.0 + i % 13}}});
        nodes.push_back({pid(i), "Pipe", {{"length", 100.0 + 37.0 * (i % 9)}}});
        edges.push_back({pid(i), Predicate::ConnectedTo, jid(i)});
        edges.push_back({pid(i), Predicate::ConnectedTo, jid((i + 1) % n_junctions)});
        nodes.push_back({"s" + std::to_string(i), "WaterPressureSensor", {}});
        edges.push_back({"s" + std::to_string(i), Predicate::PlacedIn, jid(i)});
    }
    return KnowledgeGraph(Schema::epanet_default(), std::move(nodes), std::move(edges));
}

} // namespace

static void BM_BuildFpTree(benchmark::State& state) {
    TransactionDB db = synthetic_db(static_cast<int>(state.range(0)), 40, 0.25, 1);
    for (auto _ : state) benchmark::DoNotOptimize(build_fp_tree(db, 0.1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildFpTree)->Arg(100)->Arg(1000)->Arg(5000);

static void BM_MineFrequent(benchmark::State& state) {
    TransactionDB db = synthetic_db(1000, static_cast<int>(state.range(0)), 0.3, 2);
    FPTree tree = build_fp_tree(db, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(mine_frequent(tree, 0.1));
}
BENCHMARK(BM_MineFrequent)->Arg(12)->Arg(18)->Arg(24);

static void BM_GenerateRules(benchmark::State& state) {
    TransactionDB db = synthetic_db(500, 16, 0.4, 3);
    FrequentItemsets fis = mine_frequent(build_fp_tree(db, 0.1), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(generate_rules(fis, 0.8));
}
BENCHMARK(BM_GenerateRules);

static void BM_AprioriOracle(benchmark::State& state) {
    TransactionDB db = synthetic_db(50, 15, 0.3, 4);
    for (auto _ : state) benchmark::DoNotOptimize(apriori_oracle(db, 0.2));
}
BENCHMARK(BM_AprioriOracle);

static void BM_Discretize(benchmark::State& state) {
    MeasurementSeries series;
    const int sensors = 64;
    const int days = static_cast<int>(state.range(0));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    for (int d = 0; d < days; ++d)
        for (int s = 0; s < sensors; ++s)
            series.records.push_back({d * 86400 + (s % 24) * 3600, "s" + std::to_string(s),
                                      Quantity::Pressure, value(rng)});
    DiscretizationScheme scheme;
    for (auto _ : state) benchmark::DoNotOptimize(discretize(series, scheme));
    state.SetItemsProcessed(state.iterations() * series.records.size());
}
BENCHMARK(BM_Discretize)->Arg(30)->Arg(365);

static void BM_Canonicalize(benchmark::State& state) {
    KnowledgeGraph kg = ring_graph(64);
    EnrichmentConfig config;
    config.k_neighbors = static_cast<int>(state.range(0));
    Enricher enricher(kg, config);
    for (auto _ : state) benchmark::DoNotOptimize(enricher.canonicalize("s7"));
}
BENCHMARK(BM_Canonicalize)->Arg(1)->Arg(2)->Arg(4);

static void BM_EnrichDb(benchmark::State& state) {
    KnowledgeGraph kg = ring_graph(64);
    TransactionDB db;
    for (int d = 0; d < 100; ++d) {
        Transaction t;
        t.window_start = d * 86400;
        for (int s = 0; s < 64; s += 2)
            t.items.push_back(Item::measurement("s" + std::to_string(s), "pressure",
                                                std::to_string(d % 5)));
        normalize(t.items);
        db.push_back(std::move(t));
    }
    EnrichmentConfig config;
    config.k_neighbors = 2;
    config.mode = state.range(0) ? EnrichMode::Generalized : EnrichMode::Literal;
    Enricher enricher(kg, config);
    for (auto _ : state) benchmark::DoNotOptimize(enricher.enrich_db(db));
    state.SetItemsProcessed(state.iterations() * db.size());
}
BENCHMARK(BM_EnrichDb)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
