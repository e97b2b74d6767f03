#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semrl {

// Parsed subset of the EPANET INP format: the topological and attribute
// sections only. Units are taken verbatim from the file.

struct Junction {
    std::string id;
    double elevation = 0.0;
    std::optional<double> base_demand;
    friend bool operator==(const Junction&, const Junction&) = default;
};

struct Reservoir {
    std::string id;
    double head = 0.0;
    friend bool operator==(const Reservoir&, const Reservoir&) = default;
};

struct Tank {
    std::string id;
    double elevation = 0.0;
    std::optional<double> diameter;
    friend bool operator==(const Tank&, const Tank&) = default;
};

struct Pipe {
    std::string id;
    std::string from_node;
    std::string to_node;
    double length = 0.0;
    double diameter = 0.0;
    double roughness = 0.0;
    friend bool operator==(const Pipe&, const Pipe&) = default;
};

/// Pump or valve; only the endpoints matter for graph construction.
struct LinkStub {
    std::string id;
    std::string from_node;
    std::string to_node;
    friend bool operator==(const LinkStub&, const LinkStub&) = default;
};

struct NetworkModel {
    std::vector<Junction> junctions;
    std::vector<Reservoir> reservoirs;
    std::vector<Tank> tanks;
    std::vector<Pipe> pipes;
    std::vector<LinkStub> pumps;
    std::vector<LinkStub> valves;

    bool has_node(std::string_view id) const;
    friend bool operator==(const NetworkModel&, const NetworkModel&) = default;
};

struct ValidationIssue {
    std::string location;  // "[PIPES] line 12" or "pipe P1"
    std::string message;
    friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

/// Empty `errors` means the model is accepted; warnings never block.
struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;

    bool ok() const { return errors.empty(); }
};

struct InpDocument {
    NetworkModel model;
    ValidationReport report;
};

/// Parse without rejecting invariant violations: syntax errors throw
/// ParseError, everything else lands in the report.
InpDocument parse_inp_document(std::string_view text);

/// Parse and validate. Throws ParseError on syntax errors and Error on the
/// first validation error (duplicate id, dangling endpoint, bad numeric).
NetworkModel parse_inp(std::string_view text);

NetworkModel load_inp(const std::string& path);

/// Model-level invariant checks; all findings go in the report.
ValidationReport validate_network(const NetworkModel& model);

/// Serialize back to INP text. Numbers are written with shortest
/// round-trip precision so parse(to_inp(m)) == m.
std::string to_inp(const NetworkModel& model);

} // namespace semrl
