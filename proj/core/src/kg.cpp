#include "semrl/kg.hpp"

#include "semrl/error.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace semrl {

std::string_view to_string(Predicate p) {
    return p == Predicate::ConnectedTo ? "connected_to" : "placed_in";
}

Predicate predicate_from_string(std::string_view s) {
    if (s == "connected_to") return Predicate::ConnectedTo;
    if (s == "placed_in") return Predicate::PlacedIn;
    throw Error("unknown predicate \"" + std::string(s) + "\"");
}

std::string_view to_string(Quantity q) {
    switch (q) {
    case Quantity::Pressure: return "pressure";
    case Quantity::Demand: return "demand";
    case Quantity::Flow: return "flow";
    }
    return "";
}

Quantity quantity_from_string(std::string_view s) {
    if (s == "pressure") return Quantity::Pressure;
    if (s == "demand") return Quantity::Demand;
    if (s == "flow") return Quantity::Flow;
    throw Error("unknown quantity \"" + std::string(s) + "\" (expected pressure|demand|flow)");
}

std::size_t Schema::attribute_count(const std::string& klass) const {
    auto it = classes.find(klass);
    if (it == classes.end()) throw Error("class \"" + klass + "\" not in schema");
    return it->second.size();
}

bool Schema::has_attribute(const std::string& klass, const std::string& attr) const {
    auto it = classes.find(klass);
    if (it == classes.end()) return false;
    return std::find(it->second.begin(), it->second.end(), attr) != it->second.end();
}

Schema Schema::epanet_default() {
    Schema s;
    s.classes["Junction"] = {"elevation", "base_demand"};
    s.classes["Reservoir"] = {"head"};
    s.classes["Tank"] = {"elevation", "diameter"};
    s.classes["Pipe"] = {"length", "diameter", "roughness"};
    s.classes["Pump"] = {};
    s.classes["Valve"] = {};
    s.classes["WaterPressureSensor"] = {};
    s.classes["WaterConsumptionSensor"] = {};
    s.classes["FlowSensor"] = {};
    return s;
}

namespace {

std::string trim(std::string_view sv) {
    std::size_t b = 0, e = sv.size();
    while (b < e && std::isspace(static_cast<unsigned char>(sv[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(sv[e - 1]))) --e;
    return std::string(sv.substr(b, e - b));
}

std::vector<std::string> split(std::string_view sv, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= sv.size(); ++i) {
        if (i == sv.size() || sv[i] == sep) {
            out.emplace_back(sv.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(std::string("cannot open ") + what + " file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Schema parse_schema(std::string_view text) {
    Schema schema;
    std::size_t lineno = 0;
    for (const auto& raw : split(text, '\n')) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("schema line " + std::to_string(lineno), "expected \"Class: attr, ...\"");
        std::string klass = trim(line.substr(0, colon));
        if (klass.empty())
            throw ParseError("schema line " + std::to_string(lineno), "empty class name");
        if (schema.classes.count(klass))
            throw ParseError("schema line " + std::to_string(lineno), "class \"" + klass + "\" listed twice");

        std::vector<std::string> attrs;
        std::string rest = trim(line.substr(colon + 1));
        if (!rest.empty()) {
            for (const auto& part : split(rest, ',')) {
                std::string attr = trim(part);
                if (attr.empty())
                    throw ParseError("schema line " + std::to_string(lineno), "empty attribute name");
                if (std::find(attrs.begin(), attrs.end(), attr) != attrs.end())
                    throw ParseError("schema line " + std::to_string(lineno),
                                     "attribute \"" + attr + "\" listed twice for class \"" + klass + "\"");
                attrs.push_back(std::move(attr));
            }
        }
        schema.classes[klass] = std::move(attrs);
    }
    return schema;
}

Schema load_schema(const std::string& path) { return parse_schema(read_file(path, "schema")); }

const SensorPlacement* SensorMap::find(std::string_view sensor_id) const {
    for (const auto& e : entries)
        if (e.sensor_id == sensor_id) return &e;
    return nullptr;
}

SensorMap parse_sensor_map(std::string_view text) {
    SensorMap map;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::set<std::string> ids;
    for (const auto& raw : split(text, '\n')) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "sensor_id,sensor_class,host_component,quantity")
                throw ParseError("sensor map line 1",
                                 "expected header sensor_id,sensor_class,host_component,quantity");
            header_seen = true;
            continue;
        }
        auto cols = split(line, ',');
        if (cols.size() != 4)
            throw ParseError("sensor map line " + std::to_string(lineno),
                             "expected 4 columns, got " + std::to_string(cols.size()));
        SensorPlacement p;
        p.sensor_id = trim(cols[0]);
        p.sensor_class = trim(cols[1]);
        p.host_component = trim(cols[2]);
        p.quantity = quantity_from_string(trim(cols[3]));
        if (!ids.insert(p.sensor_id).second)
            throw ParseError("sensor map line " + std::to_string(lineno),
                             "duplicate sensor id \"" + p.sensor_id + "\"");
        map.entries.push_back(std::move(p));
    }
    if (!header_seen) throw ParseError("sensor map", "empty file (header line required)");
    return map;
}

SensorMap load_sensor_map(const std::string& path) {
    return parse_sensor_map(read_file(path, "sensor map"));
}

KnowledgeGraph::KnowledgeGraph(Schema schema, std::vector<KgNode> nodes, std::vector<KgEdge> edges)
    : schema_(std::move(schema)) {
    for (auto& n : nodes) {
        if (!schema_.has_class(n.klass))
            throw Error("node \"" + n.id + "\": class \"" + n.klass + "\" not in schema");
        for (const auto& [attr, value] : n.attributes) {
            if (!schema_.has_attribute(n.klass, attr))
                throw Error("class \"" + n.klass + "\": attribute \"" + attr + "\" not in schema");
            if (!std::isfinite(value))
                throw Error("node \"" + n.id + "\": attribute \"" + attr + "\" is not finite");
        }
        std::string id = n.id;
        if (!nodes_.emplace(id, std::move(n)).second)
            throw Error("duplicate node id \"" + id + "\"");
    }

    static const std::set<std::string> link_classes = {"Pipe", "Pump", "Valve"};
    static const std::set<std::string> node_classes = {"Junction", "Reservoir", "Tank"};
    for (const auto& e : edges) {
        auto sub = nodes_.find(e.subject);
        auto obj = nodes_.find(e.object);
        if (sub == nodes_.end()) throw Error("edge subject \"" + e.subject + "\" is not a node");
        if (obj == nodes_.end()) throw Error("edge object \"" + e.object + "\" is not a node");
        const std::string& sk = sub->second.klass;
        const std::string& ok = obj->second.klass;
        if (e.predicate == Predicate::ConnectedTo) {
            if (!link_classes.count(sk) || !node_classes.count(ok))
                throw Error("connected_to edge " + e.subject + " -> " + e.object +
                            " must link a Pipe/Pump/Valve to a Junction/Reservoir/Tank");
        } else {
            if (link_classes.count(sk) || node_classes.count(sk) ||
                (!link_classes.count(ok) && !node_classes.count(ok)))
                throw Error("placed_in edge " + e.subject + " -> " + e.object +
                            " must link a sensor to a network component");
        }
    }

    // canonical order: (predicate, subject class, object class, subject id, object id)
    edges_ = std::move(edges);
    auto key = [&](const KgEdge& e) {
        return std::make_tuple(e.predicate, nodes_.at(e.subject).klass, nodes_.at(e.object).klass,
                               e.subject, e.object);
    };
    std::sort(edges_.begin(), edges_.end(),
              [&](const KgEdge& a, const KgEdge& b) { return key(a) < key(b); });
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
        adjacency_[edges_[i].subject].push_back(i);
        adjacency_[edges_[i].object].push_back(i);
    }
}

const KgNode& KnowledgeGraph::node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw Error("unknown node \"" + id + "\"");
    return it->second;
}

const std::vector<std::uint32_t>& KnowledgeGraph::incident_edges(const std::string& id) const {
    static const std::vector<std::uint32_t> empty;
    auto it = adjacency_.find(id);
    return it == adjacency_.end() ? empty : it->second;
}

KnowledgeGraph build_kg(const NetworkModel& model, const SensorMap& sensors, const Schema& schema) {
    std::vector<KgNode> nodes;
    std::vector<KgEdge> edges;

    auto add_node = [&](const std::string& id, const char* klass,
                        std::initializer_list<std::pair<const char*, std::optional<double>>> attrs) {
        KgNode n;
        n.id = id;
        n.klass = klass;
        for (const auto& [name, value] : attrs)
            if (value) n.attributes[name] = *value;
        nodes.push_back(std::move(n));
    };

    for (const auto& j : model.junctions)
        add_node(j.id, "Junction", {{"elevation", j.elevation}, {"base_demand", j.base_demand}});
    for (const auto& r : model.reservoirs) add_node(r.id, "Reservoir", {{"head", r.head}});
    for (const auto& t : model.tanks)
        add_node(t.id, "Tank", {{"elevation", t.elevation}, {"diameter", t.diameter}});
    for (const auto& p : model.pipes)
        add_node(p.id, "Pipe",
                 {{"length", p.length}, {"diameter", p.diameter}, {"roughness", p.roughness}});
    for (const auto& l : model.pumps) add_node(l.id, "Pump", {});
    for (const auto& l : model.valves) add_node(l.id, "Valve", {});

    auto link_edges = [&](const std::string& id, const std::string& a, const std::string& b) {
        edges.push_back({id, Predicate::ConnectedTo, a});
        edges.push_back({id, Predicate::ConnectedTo, b});
    };
    for (const auto& p : model.pipes) link_edges(p.id, p.from_node, p.to_node);
    for (const auto& l : model.pumps) link_edges(l.id, l.from_node, l.to_node);
    for (const auto& l : model.valves) link_edges(l.id, l.from_node, l.to_node);

    for (const auto& s : sensors.entries) {
        if (!model.has_node(s.host_component) &&
            !std::any_of(model.pipes.begin(), model.pipes.end(),
                         [&](const Pipe& p) { return p.id == s.host_component; }) &&
            !std::any_of(model.pumps.begin(), model.pumps.end(),
                         [&](const LinkStub& l) { return l.id == s.host_component; }) &&
            !std::any_of(model.valves.begin(), model.valves.end(),
                         [&](const LinkStub& l) { return l.id == s.host_component; }))
            throw Error("sensor \"" + s.sensor_id + "\": host component \"" + s.host_component +
                        "\" not in model");
        KgNode n;
        n.id = s.sensor_id;
        n.klass = s.sensor_class;
        nodes.push_back(std::move(n));
        edges.push_back({s.sensor_id, Predicate::PlacedIn, s.host_component});
    }

    return KnowledgeGraph(schema, std::move(nodes), std::move(edges));
}

std::map<std::string, int> hop_distances(const KnowledgeGraph& kg, const std::string& start, int max_hops) {
    if (!kg.has_node(start)) throw Error("unknown node \"" + start + "\"");
    std::map<std::string, int> dist;
    dist[start] = 0;
    std::deque<std::string> frontier{start};
    while (!frontier.empty()) {
        std::string cur = frontier.front();
        frontier.pop_front();
        int d = dist[cur];
        if (d >= max_hops) continue;
        for (std::uint32_t ei : kg.incident_edges(cur)) {
            const KgEdge& e = kg.edges()[ei];
            const std::string& other = e.subject == cur ? e.object : e.subject;
            if (dist.emplace(other, d + 1).second) frontier.push_back(other);
        }
    }
    return dist;
}

std::vector<KgEdge> k_hop_topology(const KnowledgeGraph& kg, const std::string& start, int k) {
    if (k < 0) throw Error("hop count must be >= 0");
    auto dist = hop_distances(kg, start, k);
    if (k == 0) return {};

    // an edge lies on a <=k-hop path iff its nearer endpoint is within k-1 hops
    std::set<std::uint32_t> picked;
    for (const auto& [id, d] : dist) {
        if (d > k - 1) continue;
        for (std::uint32_t ei : kg.incident_edges(id)) picked.insert(ei);
    }
    std::vector<KgEdge> out;
    out.reserve(picked.size());
    for (std::uint32_t ei : picked) out.push_back(kg.edges()[ei]); // index order == canonical order
    return out;
}

std::vector<AttributeTuple> k_hop_attributes(const KnowledgeGraph& kg, const std::string& start, int k) {
    if (k < 0) throw Error("hop count must be >= 0");
    auto dist = hop_distances(kg, start, k);

    std::vector<AttributeTuple> out;
    for (const auto& [id, d] : dist) {
        const KgNode& n = kg.node(id);
        for (const auto& [attr, value] : n.attributes)
            out.push_back({n.id, n.klass, attr, value});
    }
    std::sort(out.begin(), out.end(), [](const AttributeTuple& a, const AttributeTuple& b) {
        return std::tie(a.klass, a.node_id, a.attribute) < std::tie(b.klass, b.node_id, b.attribute);
    });
    return out;
}

} // namespace semrl
