#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "conflict_graph.hpp"
#include "rng.hpp"

namespace wlancap {

namespace detail {

/// Shortest round-trip decimal form, so emitted reports do not depend on
/// locale or printf state.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace detail

/// Per-slot station budget when a cell's single-cell capacity is split
/// over the given number of slots.
inline int slot_cap(int single_cell_capacity, int slots) {
    if (single_cell_capacity < 1)
        throw std::invalid_argument("single_cell_capacity must be at least 1");
    if (slots < 1) throw std::invalid_argument("slots must be at least 1");
    return single_cell_capacity / slots;
}

/// Parameters of the two-layer coloring: cells take one of `num_channels`
/// first-layer colors, vertices take one of `num_slots` second-layer
/// colors, and each (cell, slot) pair holds at most slot_cap vertices.
struct CoTDMAParams {
    int num_channels = 3;
    int num_slots = 1;
    int single_cell_capacity = 12;
    bool fixed_plan = true; ///< take first-layer colors from the topology

    int cap_per_slot() const { return slot_cap(single_cell_capacity, num_slots); }

    void validate() const {
        if (num_channels < 1)
            throw std::invalid_argument("num_channels must be at least 1");
        if (num_slots < 1)
            throw std::invalid_argument("num_slots must be at least 1");
        if (single_cell_capacity < 1)
            throw std::invalid_argument("single_cell_capacity must be at least 1");
        if (cap_per_slot() < 1)
            throw std::invalid_argument("num_slots exceeds single_cell_capacity");
    }
};

/// First-layer color per cell and second-layer color per colored vertex.
/// Vertices missing from `vertex_slot` stayed uncolored.
struct ColorAssignment {
    std::map<int, int> cell_channel;
    std::map<int, int> vertex_slot;

    bool is_colored(int v) const { return vertex_slot.count(v) != 0; }
};

struct ColoringResult {
    ColorAssignment assignment;
    int colored = 0;
    int total = 0;
    std::vector<int> uncolored;

    double coverage() const {
        return total > 0 ? static_cast<double>(colored) / static_cast<double>(total)
                         : 1.0;
    }
};

/// Greedy two-layer coloring. Vertices are visited by conflict degree,
/// highest first (ties by vertex id), and take the lexicographically
/// lowest feasible (channel, slot) combination; a vertex with no feasible
/// combination is skipped. With a fixed plan the channel of every cell
/// comes from the topology; otherwise a cell is pinned to the channel its
/// first colored vertex picks.
inline ColoringResult color(const ConflictGraph& graph, const CoTDMAParams& params) {
    params.validate();
    const int m = params.num_channels;
    const int n = params.num_slots;
    const int k = params.cap_per_slot();

    ColoringResult result;
    result.total = static_cast<int>(graph.vertices.size());

    std::map<int, int> bound; ///< cell -> first-layer color
    if (params.fixed_plan) {
        for (const Session& s : graph.vertices) {
            auto it = graph.cell_channels.find(s.cell);
            if (it == graph.cell_channels.end() || !it->second.has_value())
                throw std::invalid_argument("fixed plan needs a channel for cell " +
                                            std::to_string(s.cell));
            int f = *it->second;
            if (f < 0 || f >= m)
                throw std::invalid_argument("cell " + std::to_string(s.cell) +
                                            " has channel outside the plan");
            bound[s.cell] = f;
        }
    }

    std::vector<int> order(graph.vertices.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int da = graph.degree(a);
        int db = graph.degree(b);
        if (da != db) return da > db;
        return graph.vertices[static_cast<std::size_t>(a)].vertex_id <
               graph.vertices[static_cast<std::size_t>(b)].vertex_id;
    });

    std::map<std::pair<int, int>, int> occupancy; ///< (cell, slot) -> count
    ColorAssignment& asg = result.assignment;

    for (int v : order) {
        const Session& s = graph.vertices[static_cast<std::size_t>(v)];
        auto cell_it = bound.find(s.cell);

        int lo_f = 0, hi_f = m;
        if (cell_it != bound.end()) {
            lo_f = cell_it->second;
            hi_f = lo_f + 1;
        }

        bool placed = false;
        for (int f = lo_f; f < hi_f && !placed; ++f) {
            for (int t = 0; t < n && !placed; ++t) {
                auto occ = occupancy.find({s.cell, t});
                if (occ != occupancy.end() && occ->second >= k) continue;
                bool clash = false;
                for (int w : graph.adj[static_cast<std::size_t>(v)]) {
                    if (!asg.is_colored(w)) continue;
                    const Session& ws = graph.vertices[static_cast<std::size_t>(w)];
                    if (bound.at(ws.cell) == f && asg.vertex_slot.at(w) == t) {
                        clash = true;
                        break;
                    }
                }
                if (clash) continue;
                asg.vertex_slot[v] = t;
                if (cell_it == bound.end()) {
                    bound[s.cell] = f;
                    cell_it = bound.find(s.cell);
                }
                occupancy[{s.cell, t}] += 1;
                placed = true;
            }
        }
        if (!placed) result.uncolored.push_back(v);
    }

    asg.cell_channel = bound;
    result.colored = static_cast<int>(asg.vertex_slot.size());
    std::sort(result.uncolored.begin(), result.uncolored.end());
    return result;
}

struct ColorViolation {
    int constraint = 0;
    std::string detail;
    std::vector<int> vertices;
};

/// Checks an assignment against the four coloring rules: colors in range,
/// every colored vertex's cell carries a first-layer color, per-(cell,
/// slot) occupancy within the cap, and distinct combinations across every
/// conflict edge. Returns one entry per violation; empty means valid.
inline std::vector<ColorViolation> validate_assignment(const ConflictGraph& graph,
                                                       const ColorAssignment& asg,
                                                       const CoTDMAParams& params) {
    params.validate();
    std::vector<ColorViolation> out;
    const int m = params.num_channels;
    const int n = params.num_slots;
    const int k = params.cap_per_slot();

    for (const auto& [cell, f] : asg.cell_channel)
        if (f < 0 || f >= m)
            out.push_back({1,
                           "cell " + std::to_string(cell) + " has channel " +
                               std::to_string(f) + " outside [0, " +
                               std::to_string(m) + ")",
                           {}});

    std::map<std::pair<int, int>, int> occupancy;
    for (const auto& [v, t] : asg.vertex_slot) {
        if (v < 0 || v >= static_cast<int>(graph.vertices.size())) {
            out.push_back({1, "slot assigned to unknown vertex " + std::to_string(v), {v}});
            continue;
        }
        const Session& s = graph.vertices[static_cast<std::size_t>(v)];
        if (t < 0 || t >= n)
            out.push_back({1,
                           "vertex " + std::to_string(v) + " has slot " +
                               std::to_string(t) + " outside [0, " +
                               std::to_string(n) + ")",
                           {v}});
        if (asg.cell_channel.count(s.cell) == 0)
            out.push_back({2,
                           "vertex " + std::to_string(v) + " is colored but cell " +
                               std::to_string(s.cell) + " has no channel",
                           {v}});
        occupancy[{s.cell, t}] += 1;
    }

    for (const auto& [key, count] : occupancy)
        if (count > k)
            out.push_back({3,
                           "cell " + std::to_string(key.first) + " slot " +
                               std::to_string(key.second) + " holds " +
                               std::to_string(count) + " vertices, cap " +
                               std::to_string(k),
                           {}});

    for (const auto& [edge, label] : graph.labels) {
        (void)label;
        int u = edge.first;
        int v = edge.second;
        if (!asg.is_colored(u) || !asg.is_colored(v)) continue;
        const Session& su = graph.vertices[static_cast<std::size_t>(u)];
        const Session& sv = graph.vertices[static_cast<std::size_t>(v)];
        auto fu = asg.cell_channel.find(su.cell);
        auto fv = asg.cell_channel.find(sv.cell);
        if (fu == asg.cell_channel.end() || fv == asg.cell_channel.end()) continue;
        if (fu->second == fv->second &&
            asg.vertex_slot.at(u) == asg.vertex_slot.at(v))
            out.push_back({4,
                           "vertices " + std::to_string(u) + " and " +
                               std::to_string(v) + " share combination (" +
                               std::to_string(fu->second) + ", " +
                               std::to_string(asg.vertex_slot.at(u)) + ") across an edge",
                           {u, v}});
    }
    return out;
}

inline nlohmann::json to_json(const ColorAssignment& asg) {
    nlohmann::json cells = nlohmann::json::object();
    for (const auto& [cell, f] : asg.cell_channel) cells[std::to_string(cell)] = f;
    nlohmann::json vertices = nlohmann::json::object();
    for (const auto& [v, t] : asg.vertex_slot)
        vertices[std::to_string(v)] = {{"t", t}};
    return {{"cells", cells}, {"vertices", vertices}};
}

inline nlohmann::json to_json(const ColoringResult& r) {
    return {{"assignment", to_json(r.assignment)},
            {"colored", r.colored},
            {"total", r.total},
            {"coverage", r.coverage()},
            {"uncolored", r.uncolored}};
}

struct SweepRow {
    int slots = 0;
    double cs_over_radius = 0.0;
    int trial = 0;
    int colored = 0;
    int total = 0;

    double coverage() const {
        return total > 0 ? static_cast<double>(colored) / static_cast<double>(total)
                         : 1.0;
    }
};

struct SweepReport {
    int grid_dim = 0;
    int stations_per_cell = 0;
    CoTDMAParams params;
    std::vector<SweepRow> rows;
    double total_seconds = 0.0;
};

/// Colors freshly drawn placements for every (slots, cs_range) pair.
/// Station placements are regenerated per trial from a substream of
/// `seed` and shared across the parameter grid, so rows with the same
/// trial index are paired. The topology argument supplies the grid, the
/// radio model, the station density and the frequency plan.
inline SweepReport cs_range_sweep(const Topology& topo, const CoTDMAParams& base,
                                  const std::vector<int>& slots_values,
                                  const std::vector<double>& cs_ratios, int trials,
                                  std::uint64_t seed) {
    if (topo.cells.empty()) throw std::invalid_argument("topology has no cells");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (slots_values.empty() || cs_ratios.empty())
        throw std::invalid_argument("sweep grid must be non-empty");
    if (topo.stations.size() % topo.cells.size() != 0)
        throw std::invalid_argument("topology must have a uniform station count per cell");
    int per_cell = static_cast<int>(topo.stations.size() / topo.cells.size());
    if (per_cell < 1) throw std::invalid_argument("topology has no stations");
    for (int n : slots_values) {
        CoTDMAParams p = base;
        p.num_slots = n;
        p.validate();
    }

    std::map<int, int> plan;
    bool planned = true;
    for (const Cell& c : topo.cells) {
        if (!c.channel) {
            planned = false;
            break;
        }
        plan[c.id] = *c.channel;
    }
    if (base.fixed_plan && !planned)
        throw std::invalid_argument("fixed plan sweep needs channels on every cell");

    SweepReport report;
    report.grid_dim = topo.grid_dim;
    report.stations_per_cell = per_cell;
    report.params = base;

    auto t0 = std::chrono::steady_clock::now();
    for (int trial = 0; trial < trials; ++trial) {
        Topology draw = build_topology(topo.grid_dim, topo.radio, per_cell,
                                       substream(seed, static_cast<std::uint64_t>(trial)));
        if (planned) draw = assign_frequencies(draw, plan);
        for (double ratio : cs_ratios) {
            double cs = ratio * topo.radio.cell_radius;
            ConflictGraph graph = build_coloring_graph(draw, cs);
            for (int n : slots_values) {
                CoTDMAParams p = base;
                p.num_slots = n;
                ColoringResult res = color(graph, p);
                report.rows.push_back(
                    {n, ratio, trial, res.colored, res.total});
            }
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    report.total_seconds = std::chrono::duration<double>(t1 - t0).count();

    std::sort(report.rows.begin(), report.rows.end(),
              [](const SweepRow& a, const SweepRow& b) {
                  if (a.slots != b.slots) return a.slots < b.slots;
                  if (a.cs_over_radius != b.cs_over_radius)
                      return a.cs_over_radius < b.cs_over_radius;
                  return a.trial < b.trial;
              });
    return report;
}

inline std::string to_csv(const SweepReport& r) {
    std::string out = "n,cs_range_over_dmax,trial,colored,total,coverage\n";
    for (const SweepRow& row : r.rows) {
        out += std::to_string(row.slots);
        out += ',';
        out += detail::format_double(row.cs_over_radius);
        out += ',';
        out += std::to_string(row.trial);
        out += ',';
        out += std::to_string(row.colored);
        out += ',';
        out += std::to_string(row.total);
        out += ',';
        out += detail::format_double(row.coverage());
        out += '\n';
    }
    return out;
}

inline nlohmann::json sweep_summary_json(const SweepReport& r) {
    struct Agg {
        int trials = 0;
        double sum = 0.0;
        double lo = 1.0;
        double hi = 0.0;
    };
    std::map<std::pair<int, double>, Agg> aggs;
    for (const SweepRow& row : r.rows) {
        Agg& a = aggs[{row.slots, row.cs_over_radius}];
        double c = row.coverage();
        a.trials += 1;
        a.sum += c;
        a.lo = std::min(a.lo, c);
        a.hi = std::max(a.hi, c);
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [key, a] : aggs)
        rows.push_back({{"n", key.first},
                        {"cs_range_over_dmax", key.second},
                        {"trials", a.trials},
                        {"mean_coverage", a.sum / a.trials},
                        {"min_coverage", a.lo},
                        {"max_coverage", a.hi}});
    return {{"grid_dim", r.grid_dim},
            {"stations_per_cell", r.stations_per_cell},
            {"single_cell_capacity", r.params.single_cell_capacity},
            {"num_channels", r.params.num_channels},
            {"rows", rows}};
}

} // namespace wlancap
