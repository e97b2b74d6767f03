#pragma once

#include "semrl/inp.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace semrl {

enum class Predicate : std::uint8_t { ConnectedTo, PlacedIn };

std::string_view to_string(Predicate p);
Predicate predicate_from_string(std::string_view s);

enum class Quantity : std::uint8_t { Pressure, Demand, Flow };

std::string_view to_string(Quantity q);
Quantity quantity_from_string(std::string_view s);

/// Class name -> ordered attribute names. Attribute order is the file /
/// construction order; class lookup is by name.
struct Schema {
    std::map<std::string, std::vector<std::string>> classes;

    bool has_class(const std::string& klass) const { return classes.count(klass) != 0; }

    /// Number of schema attributes of a class; throws on unknown class.
    std::size_t attribute_count(const std::string& klass) const;

    /// True if `attr` is a schema attribute of `klass`.
    bool has_attribute(const std::string& klass, const std::string& attr) const;

    /// EPANET-faithful default: Junction {elevation, base_demand},
    /// Reservoir {head}, Tank {elevation, diameter},
    /// Pipe {length, diameter, roughness}, Pump/Valve and the sensor
    /// classes with no attributes.
    static Schema epanet_default();
};

/// Schema file format, one class per line, order-preserving:
///   Pipe: diameter, length, elevation
///   WaterPressureSensor:
/// '#' starts a comment.
Schema parse_schema(std::string_view text);
Schema load_schema(const std::string& path);

struct SensorPlacement {
    std::string sensor_id;
    std::string sensor_class;   // e.g. WaterPressureSensor
    std::string host_component; // component id in the NetworkModel
    Quantity quantity = Quantity::Pressure;
    friend bool operator==(const SensorPlacement&, const SensorPlacement&) = default;
};

struct SensorMap {
    std::vector<SensorPlacement> entries;

    const SensorPlacement* find(std::string_view sensor_id) const;
};

/// CSV with header: sensor_id,sensor_class,host_component,quantity
SensorMap parse_sensor_map(std::string_view text);
SensorMap load_sensor_map(const std::string& path);

struct KgNode {
    std::string id;
    std::string klass;
    std::map<std::string, double> attributes;
    friend bool operator==(const KgNode&, const KgNode&) = default;
};

struct KgEdge {
    std::string subject;
    Predicate predicate = Predicate::ConnectedTo;
    std::string object;
    friend bool operator==(const KgEdge&, const KgEdge&) = default;
    friend auto operator<=>(const KgEdge&, const KgEdge&) = default;
};

struct AttributeTuple {
    std::string node_id;
    std::string klass;
    std::string attribute;
    double value = 0.0;
    friend bool operator==(const AttributeTuple&, const AttributeTuple&) = default;
};

/// Typed instance graph. Immutable once built; edges are stored in canonical
/// order (predicate, subject class, object class, subject id, object id) and
/// traversal is undirected.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;

    /// Validating constructor used by build_kg and by tests that assemble
    /// graphs by hand. Sorts edges canonically and indexes adjacency.
    KnowledgeGraph(Schema schema, std::vector<KgNode> nodes, std::vector<KgEdge> edges);

    const Schema& schema() const { return schema_; }
    const std::map<std::string, KgNode>& nodes() const { return nodes_; }
    const std::vector<KgEdge>& edges() const { return edges_; }

    bool has_node(const std::string& id) const { return nodes_.count(id) != 0; }
    const KgNode& node(const std::string& id) const;

    /// Indices into edges() incident to `id`.
    const std::vector<std::uint32_t>& incident_edges(const std::string& id) const;

    /// Undirected node degree.
    std::size_t degree(const std::string& id) const { return incident_edges(id).size(); }

private:
    Schema schema_;
    std::map<std::string, KgNode> nodes_;
    std::vector<KgEdge> edges_;
    std::map<std::string, std::vector<std::uint32_t>> adjacency_;
};

/// One node per component and per sensor, one connected_to edge per
/// (link, endpoint) pair, one placed_in edge per sensor.
KnowledgeGraph build_kg(const NetworkModel& model, const SensorMap& sensors, const Schema& schema);

/// Every edge lying on a path of at most k undirected hops from `start`,
/// deduplicated, in canonical edge order. k = 0 yields nothing.
std::vector<KgEdge> k_hop_topology(const KnowledgeGraph& kg, const std::string& start, int k);

/// Attribute tuples of `start` and every node within k hops, sorted by
/// (class, node id, attribute name). Nodes without attributes contribute
/// nothing.
std::vector<AttributeTuple> k_hop_attributes(const KnowledgeGraph& kg, const std::string& start, int k);

/// Hop distances from `start` up to `max_hops` (BFS; used by the traversal
/// operations and as an oracle hook for tests).
std::map<std::string, int> hop_distances(const KnowledgeGraph& kg, const std::string& start, int max_hops);

} // namespace semrl
