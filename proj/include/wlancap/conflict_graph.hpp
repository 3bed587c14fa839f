#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geometry.hpp"

namespace wlancap {

/// Tolerant comparisons for distances (meters).
inline bool dist_geq(double a, double b) { return a >= b - kDistanceTol; }
inline bool dist_gt(double a, double b) { return a > b + kDistanceTol; }

/// One full-duplex voice session: a client station plus its access point.
/// Both endpoints transmit, so both get the same interference range.
struct Session {
    int vertex_id = 0;
    int station_id = 0;
    int cell = 0;
    double link_length = 0.0;
    Vec2 client_pos;
    Vec2 ap_pos;
};

enum class ConflictKind { none, cs_coupled, hidden_node };

enum class EdgeLabel { same_cell, cs_coupled, hidden_node, intra_cs_gap };

inline std::string to_string(EdgeLabel l) {
    switch (l) {
        case EdgeLabel::same_cell: return "same_cell";
        case EdgeLabel::cs_coupled: return "cs_coupled";
        case EdgeLabel::hidden_node: return "hidden_node";
        case EdgeLabel::intra_cs_gap: return "intra_cs_gap";
    }
    return "same_cell";
}

/// Classifies a cross-cell session pair.
///
/// The pair is carrier-sense coupled when any of the four node pairs
/// (client/client, client/AP, AP/client, AP/AP) is within cs_range: the
/// closer pair's sensing serializes the two sessions. Otherwise the pair
/// is checked for hidden-node interference: each of the four nodes
/// disturbs the other session if its interference range exceeds its
/// distance to the nearer of that session's two receivers.
inline ConflictKind conflict_test(const Session& a, const Session& b,
                                  double cs_range, double margin) {
    if (a.cell == b.cell)
        throw std::invalid_argument("conflict_test expects sessions in different cells");

    double d_cc = distance(a.client_pos, b.client_pos);
    double d_ca = distance(a.client_pos, b.ap_pos);
    double d_ac = distance(a.ap_pos, b.client_pos);
    double d_aa = distance(a.ap_pos, b.ap_pos);

    double nearest = std::min(std::min(d_cc, d_ca), std::min(d_ac, d_aa));
    if (dist_geq(cs_range, nearest)) return ConflictKind::cs_coupled;

    double ir_a = interference_range(a.link_length, margin);
    double ir_b = interference_range(b.link_length, margin);
    bool hidden = dist_gt(ir_a, std::min(d_cc, d_ca)) ||
                  dist_gt(ir_a, std::min(d_ac, d_aa)) ||
                  dist_gt(ir_b, std::min(d_cc, d_ac)) ||
                  dist_gt(ir_b, std::min(d_ca, d_aa));
    return hidden ? ConflictKind::hidden_node : ConflictKind::none;
}

enum class GraphMode { admission, coloring };

/// Conflict graph over sessions. Vertices are indexed 0..n-1 and edges are
/// kept both as sorted adjacency lists and as a label map keyed (u, v)
/// with u < v.
struct ConflictGraph {
    GraphMode mode = GraphMode::admission;
    std::vector<Session> vertices;
    std::vector<std::vector<int>> adj;
    std::map<std::pair<int, int>, EdgeLabel> labels;
    std::map<int, std::optional<int>> cell_channels;

    void add_edge(int u, int v, EdgeLabel label) {
        if (u == v) throw std::invalid_argument("self loops are not allowed");
        if (u > v) std::swap(u, v);
        auto [it, inserted] = labels.emplace(std::make_pair(u, v), label);
        (void)it;
        if (!inserted) return;
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return labels.count({u, v}) != 0;
    }

    std::size_t edge_count() const { return labels.size(); }

    int degree(int v) const { return static_cast<int>(adj.at(static_cast<std::size_t>(v)).size()); }

    void sort_adjacency() {
        for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    }
};

/// Builds one session per station, in station order.
inline std::vector<Session> make_sessions(const Topology& topo) {
    std::vector<Session> out;
    out.reserve(topo.stations.size());
    int v = 0;
    for (const Station& s : topo.stations)
        out.push_back({v++, s.id, s.cell, s.link_length, s.pos,
                       topo.ap_position(s.cell)});
    return out;
}

namespace detail {

inline int channel_or_zero(const Cell& c) { return c.channel.value_or(0); }

inline ConflictGraph make_graph(const Topology& topo, GraphMode mode) {
    ConflictGraph g;
    g.mode = mode;
    g.vertices = make_sessions(topo);
    g.adj.assign(g.vertices.size(), {});
    for (const Cell& c : topo.cells) g.cell_channels[c.id] = c.channel;
    return g;
}

} // namespace detail

/// Conflict graph for admission control: same-cell sessions always share
/// the medium, cross-cell co-channel pairs are classified geometrically.
/// Cells without an assigned channel are treated as co-channel.
inline ConflictGraph build_admission_graph(const Topology& topo, double cs_range) {
    ConflictGraph g = detail::make_graph(topo, GraphMode::admission);
    double margin = topo.radio.interference_margin;
    int n = static_cast<int>(g.vertices.size());
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const Session& a = g.vertices[static_cast<std::size_t>(u)];
            const Session& b = g.vertices[static_cast<std::size_t>(v)];
            if (a.cell == b.cell) {
                g.add_edge(u, v, EdgeLabel::same_cell);
                continue;
            }
            if (detail::channel_or_zero(topo.cell(a.cell)) !=
                detail::channel_or_zero(topo.cell(b.cell)))
                continue;
            ConflictKind kind = conflict_test(a, b, cs_range, margin);
            if (kind == ConflictKind::cs_coupled)
                g.add_edge(u, v, EdgeLabel::cs_coupled);
            else if (kind == ConflictKind::hidden_node)
                g.add_edge(u, v, EdgeLabel::hidden_node);
        }
    }
    g.sort_adjacency();
    return g;
}

/// Conflict graph for slot coloring. Same-cell sessions conflict only when
/// the clients are mutually out of carrier-sense range (they could not
/// share a slot politely). Cross-cell pairs on distinct assigned channels
/// never conflict; pairs where either cell lacks a channel are tested, so
/// a free-plan graph carries every geometric conflict.
inline ConflictGraph build_coloring_graph(const Topology& topo, double cs_range) {
    ConflictGraph g = detail::make_graph(topo, GraphMode::coloring);
    double margin = topo.radio.interference_margin;
    int n = static_cast<int>(g.vertices.size());
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const Session& a = g.vertices[static_cast<std::size_t>(u)];
            const Session& b = g.vertices[static_cast<std::size_t>(v)];
            if (a.cell == b.cell) {
                if (dist_gt(distance(a.client_pos, b.client_pos), cs_range))
                    g.add_edge(u, v, EdgeLabel::intra_cs_gap);
                continue;
            }
            const auto& cha = topo.cell(a.cell).channel;
            const auto& chb = topo.cell(b.cell).channel;
            if (cha && chb && *cha != *chb) continue;
            ConflictKind kind = conflict_test(a, b, cs_range, margin);
            if (kind == ConflictKind::cs_coupled)
                g.add_edge(u, v, EdgeLabel::cs_coupled);
            else if (kind == ConflictKind::hidden_node)
                g.add_edge(u, v, EdgeLabel::hidden_node);
        }
    }
    g.sort_adjacency();
    return g;
}

inline nlohmann::json to_json(const ConflictGraph& g) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const Session& s : g.vertices)
        vertices.push_back(
            {{"id", s.vertex_id}, {"station", s.station_id}, {"cell", s.cell}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [key, label] : g.labels)
        edges.push_back({key.first, key.second, to_string(label)});
    return {{"mode", g.mode == GraphMode::admission ? "admission" : "coloring"},
            {"vertices", vertices},
            {"edges", edges}};
}

} // namespace wlancap
