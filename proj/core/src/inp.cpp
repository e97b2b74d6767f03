#include "semrl/inp.hpp"

#include "semrl/error.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace semrl {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

double parse_number(const std::string& tok, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(where, "expected a number, got \"" + tok + "\"");
    return v;
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// Sections we understand; anything else is skipped with a warning.
enum class Section {
    None, Title, Junctions, Reservoirs, Tanks, Pipes, Pumps, Valves, Coordinates, Skipped
};

Section section_from_header(const std::string& name) {
    static const std::map<std::string, Section> known = {
        {"TITLE", Section::Title},         {"JUNCTIONS", Section::Junctions},
        {"RESERVOIRS", Section::Reservoirs}, {"TANKS", Section::Tanks},
        {"PIPES", Section::Pipes},         {"PUMPS", Section::Pumps},
        {"VALVES", Section::Valves},       {"COORDINATES", Section::Coordinates},
    };
    auto it = known.find(name);
    return it == known.end() ? Section::Skipped : it->second;
}

} // namespace

bool NetworkModel::has_node(std::string_view id) const {
    auto match = [&](const auto& xs) {
        return std::any_of(xs.begin(), xs.end(), [&](const auto& x) { return x.id == id; });
    };
    return match(junctions) || match(reservoirs) || match(tanks);
}

InpDocument parse_inp_document(std::string_view text) {
    InpDocument doc;
    NetworkModel& m = doc.model;

    Section section = Section::None;
    std::string section_name;
    bool saw_junctions = false, saw_pipes = false;
    std::set<std::string> warned_sections;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;

        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (auto semi = raw.find(';'); semi != std::string_view::npos) raw = raw.substr(0, semi);

        auto tokens = split_ws(raw);
        if (tokens.empty()) continue;

        if (tokens[0].front() == '[') {
            std::string header = tokens[0];
            if (header.back() != ']')
                throw ParseError("line " + std::to_string(lineno), "malformed section header \"" + header + "\"");
            section_name = header.substr(1, header.size() - 2);
            std::transform(section_name.begin(), section_name.end(), section_name.begin(),
                           [](unsigned char c) { return std::toupper(c); });
            if (section_name == "END") {
                section = Section::Skipped;
                continue;
            }
            section = section_from_header(section_name);
            if (section == Section::Junctions) saw_junctions = true;
            if (section == Section::Pipes) saw_pipes = true;
            if (section == Section::Skipped && warned_sections.insert(section_name).second)
                doc.report.warnings.push_back({"[" + section_name + "]", "section skipped"});
            continue;
        }

        std::string where = "[" + section_name + "] line " + std::to_string(lineno);
        auto require_cols = [&](std::size_t need) {
            if (tokens.size() < need)
                throw ParseError(where, "expected " + std::to_string(need) + " columns, got " +
                                            std::to_string(tokens.size()));
        };
        auto warn_extra = [&](std::size_t expect) {
            if (tokens.size() > expect && warned_sections.insert(section_name + "+extra").second)
                doc.report.warnings.push_back({where, "extra columns ignored"});
        };

        switch (section) {
        case Section::None:
            throw ParseError("line " + std::to_string(lineno), "data before any section header");
        case Section::Title:
        case Section::Skipped:
        case Section::Coordinates:
            break;
        case Section::Junctions: {
            require_cols(2);
            Junction j;
            j.id = tokens[0];
            j.elevation = parse_number(tokens[1], where);
            if (tokens.size() >= 3) j.base_demand = parse_number(tokens[2], where);
            warn_extra(3);
            m.junctions.push_back(std::move(j));
            break;
        }
        case Section::Reservoirs: {
            require_cols(2);
            Reservoir r;
            r.id = tokens[0];
            r.head = parse_number(tokens[1], where);
            warn_extra(2);
            m.reservoirs.push_back(std::move(r));
            break;
        }
        case Section::Tanks: {
            require_cols(2);
            Tank t;
            t.id = tokens[0];
            t.elevation = parse_number(tokens[1], where);
            if (tokens.size() >= 3) t.diameter = parse_number(tokens[2], where);
            warn_extra(3);
            m.tanks.push_back(std::move(t));
            break;
        }
        case Section::Pipes: {
            require_cols(6);
            Pipe p;
            p.id = tokens[0];
            p.from_node = tokens[1];
            p.to_node = tokens[2];
            p.length = parse_number(tokens[3], where);
            p.diameter = parse_number(tokens[4], where);
            p.roughness = parse_number(tokens[5], where);
            warn_extra(6);
            m.pipes.push_back(std::move(p));
            break;
        }
        case Section::Pumps:
        case Section::Valves: {
            require_cols(3);
            LinkStub l;
            l.id = tokens[0];
            l.from_node = tokens[1];
            l.to_node = tokens[2];
            // remaining columns (parameters, settings) are irrelevant here
            (section == Section::Pumps ? m.pumps : m.valves).push_back(std::move(l));
            break;
        }
        }
    }

    if (!saw_junctions) throw ParseError("input", "missing required section [JUNCTIONS]");
    if (!saw_pipes) throw ParseError("input", "missing required section [PIPES]");

    ValidationReport checks = validate_network(m);
    doc.report.errors.insert(doc.report.errors.end(), checks.errors.begin(), checks.errors.end());
    doc.report.warnings.insert(doc.report.warnings.end(), checks.warnings.begin(), checks.warnings.end());
    return doc;
}

NetworkModel parse_inp(std::string_view text) {
    InpDocument doc = parse_inp_document(text);
    if (!doc.report.ok()) {
        const auto& e = doc.report.errors.front();
        std::string msg = e.location + ": " + e.message;
        if (doc.report.errors.size() > 1)
            msg += " (+" + std::to_string(doc.report.errors.size() - 1) + " more)";
        throw Error(msg);
    }
    return std::move(doc.model);
}

NetworkModel load_inp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open INP file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_inp(ss.str());
}

ValidationReport validate_network(const NetworkModel& m) {
    ValidationReport report;
    auto err = [&](std::string loc, std::string msg) {
        report.errors.push_back({std::move(loc), std::move(msg)});
    };
    auto warn = [&](std::string loc, std::string msg) {
        report.warnings.push_back({std::move(loc), std::move(msg)});
    };

    std::unordered_set<std::string> ids;
    auto check_id = [&](const std::string& kind, const std::string& id) {
        if (!ids.insert(id).second) err(kind + " " + id, "duplicate component id \"" + id + "\"");
    };
    auto check_finite = [&](const std::string& loc, const char* what, double v) {
        if (!std::isfinite(v)) err(loc, std::string(what) + " is not finite");
    };

    std::unordered_set<std::string> nodes;
    for (const auto& j : m.junctions) {
        check_id("junction", j.id);
        nodes.insert(j.id);
        check_finite("junction " + j.id, "elevation", j.elevation);
        if (j.base_demand) check_finite("junction " + j.id, "base_demand", *j.base_demand);
    }
    for (const auto& r : m.reservoirs) {
        check_id("reservoir", r.id);
        nodes.insert(r.id);
        check_finite("reservoir " + r.id, "head", r.head);
    }
    for (const auto& t : m.tanks) {
        check_id("tank", t.id);
        nodes.insert(t.id);
        check_finite("tank " + t.id, "elevation", t.elevation);
        if (t.diameter) {
            check_finite("tank " + t.id, "diameter", *t.diameter);
            if (*t.diameter <= 0) err("tank " + t.id, "diameter must be > 0");
        }
    }

    // adjacency over all links, for the connectivity warning
    std::unordered_map<std::string, std::vector<const std::string*>> adj;
    auto check_link = [&](const std::string& kind, const std::string& id, const std::string& a,
                          const std::string& b) {
        if (!nodes.count(a)) err(kind + " " + id, "endpoint \"" + a + "\" is not a known node");
        if (!nodes.count(b)) err(kind + " " + id, "endpoint \"" + b + "\" is not a known node");
        if (a == b) err(kind + " " + id, "self-loop (both endpoints \"" + a + "\")");
        if (nodes.count(a) && nodes.count(b) && a != b) {
            adj[a].push_back(&b);
            adj[b].push_back(&a);
        }
    };

    for (const auto& p : m.pipes) {
        check_id("pipe", p.id);
        check_link("pipe", p.id, p.from_node, p.to_node);
        check_finite("pipe " + p.id, "length", p.length);
        check_finite("pipe " + p.id, "diameter", p.diameter);
        check_finite("pipe " + p.id, "roughness", p.roughness);
        if (std::isfinite(p.length) && p.length <= 0) err("pipe " + p.id, "length must be > 0");
        if (std::isfinite(p.diameter) && p.diameter <= 0) err("pipe " + p.id, "diameter must be > 0");
    }
    for (const auto& l : m.pumps) {
        check_id("pump", l.id);
        check_link("pump", l.id, l.from_node, l.to_node);
    }
    for (const auto& l : m.valves) {
        check_id("valve", l.id);
        check_link("valve", l.id, l.from_node, l.to_node);
    }

    for (const auto& j : m.junctions)
        if (!adj.count(j.id)) warn("junction " + j.id, "isolated node (no incident link)");

    // connectivity is a warning, not an error
    if (!nodes.empty()) {
        std::unordered_set<std::string> seen;
        std::queue<std::string> q;
        q.push(*std::min_element(nodes.begin(), nodes.end()));
        seen.insert(q.front());
        while (!q.empty()) {
            std::string cur = q.front();
            q.pop();
            auto it = adj.find(cur);
            if (it == adj.end()) continue;
            for (const std::string* nb : it->second)
                if (seen.insert(*nb).second) q.push(*nb);
        }
        if (seen.size() < nodes.size())
            warn("network", "not fully connected (" + std::to_string(nodes.size() - seen.size()) +
                                " node(s) unreachable)");
    }

    return report;
}

std::string to_inp(const NetworkModel& m) {
    std::ostringstream out;
    out << "[TITLE]\n";
    out << "[JUNCTIONS]\n";
    for (const auto& j : m.junctions) {
        out << j.id << " " << format_number(j.elevation);
        if (j.base_demand) out << " " << format_number(*j.base_demand);
        out << "\n";
    }
    if (!m.reservoirs.empty()) {
        out << "[RESERVOIRS]\n";
        for (const auto& r : m.reservoirs) out << r.id << " " << format_number(r.head) << "\n";
    }
    if (!m.tanks.empty()) {
        out << "[TANKS]\n";
        for (const auto& t : m.tanks) {
            out << t.id << " " << format_number(t.elevation);
            if (t.diameter) out << " " << format_number(*t.diameter);
            out << "\n";
        }
    }
    out << "[PIPES]\n";
    for (const auto& p : m.pipes)
        out << p.id << " " << p.from_node << " " << p.to_node << " " << format_number(p.length)
            << " " << format_number(p.diameter) << " " << format_number(p.roughness) << "\n";
    if (!m.pumps.empty()) {
        out << "[PUMPS]\n";
        for (const auto& l : m.pumps) out << l.id << " " << l.from_node << " " << l.to_node << "\n";
    }
    if (!m.valves.empty()) {
        out << "[VALVES]\n";
        for (const auto& l : m.valves) out << l.id << " " << l.from_node << " " << l.to_node << "\n";
    }
    out << "[END]\n";
    return out.str();
}

} // namespace semrl
