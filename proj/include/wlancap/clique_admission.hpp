#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "conflict_graph.hpp"

namespace wlancap {

/// A clique is a sorted vector of vertex ids.
using Clique = std::vector<int>;

/// True when sorted range `a` is a subset of sorted range `b`.
inline bool clique_subset(const Clique& a, const Clique& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Intersection of a sorted clique with a sorted vertex set.
inline Clique clique_intersect(const Clique& a, const std::vector<int>& b) {
    Clique out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
}

/// Removes duplicates and any clique contained in another, leaving the
/// family in lexicographic order.
inline std::vector<Clique> no_redundancy(std::vector<Clique> family) {
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    std::stable_sort(family.begin(), family.end(),
                     [](const Clique& a, const Clique& b) {
                         return a.size() > b.size();
                     });
    std::vector<Clique> kept;
    for (const Clique& c : family) {
        bool redundant = false;
        for (const Clique& k : kept) {
            if (clique_subset(c, k)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

/// The maximal cliques through one vertex, with the size of the largest.
struct CliqueFamily {
    std::vector<Clique> cliques;
    int max_size = 0;

    void refresh_max() {
        max_size = 0;
        for (const Clique& c : cliques)
            max_size = std::max(max_size, static_cast<int>(c.size()));
    }
};

/// Incremental admission state. For every admitted vertex v the state
/// keeps the exact set of maximal cliques through v in the subgraph
/// induced by the admitted set. A new vertex is accepted only if no such
/// clique would grow beyond the cap.
struct AdmissionState {
    std::vector<int> admitted; ///< sorted
    std::map<int, CliqueFamily> families;

    bool is_admitted(int v) const { return families.count(v) != 0; }

    int max_clique_size(int v) const {
        auto it = families.find(v);
        if (it == families.end())
            throw std::out_of_range("vertex not admitted: " + std::to_string(v));
        return it->second.max_size;
    }

    int max_clique_size() const {
        int m = 0;
        for (const auto& [v, fam] : families) m = std::max(m, fam.max_size);
        return m;
    }

    /// Tries to admit `v` whose conflicts inside the admitted set are
    /// exactly `neighbors`. Updates the families of those neighbors; if
    /// any family would exceed `cap`, every touched family is restored
    /// and the state is left byte-identical to before the call.
    bool admit(int v, std::vector<int> neighbors, int cap) {
        if (cap < 1)
            throw std::invalid_argument("cap must be at least 1");
        if (is_admitted(v))
            throw std::invalid_argument("vertex already admitted: " + std::to_string(v));
        std::sort(neighbors.begin(), neighbors.end());
        for (std::size_t i = 0; i < neighbors.size(); ++i) {
            if (i > 0 && neighbors[i] == neighbors[i - 1])
                throw std::invalid_argument("duplicate neighbor: " +
                                            std::to_string(neighbors[i]));
            if (neighbors[i] == v || !is_admitted(neighbors[i]))
                throw std::invalid_argument("unknown neighbor: " +
                                            std::to_string(neighbors[i]));
        }

        std::map<int, CliqueFamily> saved;
        for (int u : neighbors) saved[u] = families[u];

        bool fits = true;
        for (int u : neighbors) {
            CliqueFamily& fam = families[u];
            std::vector<Clique> next;
            for (const Clique& c : fam.cliques) {
                if (clique_subset(c, neighbors)) {
                    Clique grown = c;
                    grown.insert(std::upper_bound(grown.begin(), grown.end(), v), v);
                    next.push_back(std::move(grown));
                } else {
                    Clique spawn = clique_intersect(c, neighbors);
                    spawn.insert(std::upper_bound(spawn.begin(), spawn.end(), v), v);
                    next.push_back(c);
                    next.push_back(std::move(spawn));
                }
            }
            fam.cliques = no_redundancy(std::move(next));
            fam.refresh_max();
            if (fam.max_size > cap) {
                fits = false;
                break;
            }
        }
        if (!fits) {
            for (auto& [u, fam] : saved) families[u] = std::move(fam);
            return false;
        }

        CliqueFamily mine;
        if (neighbors.empty()) {
            mine.cliques = {{v}};
        } else {
            std::vector<Clique> through_v;
            for (int u : neighbors)
                for (const Clique& c : families[u].cliques)
                    if (std::binary_search(c.begin(), c.end(), v))
                        through_v.push_back(c);
            mine.cliques = no_redundancy(std::move(through_v));
        }
        mine.refresh_max();
        families[v] = std::move(mine);
        admitted.insert(std::upper_bound(admitted.begin(), admitted.end(), v), v);
        return true;
    }

    /// Canonical text form, used to check that rejections have no side
    /// effects and that replays reproduce states exactly.
    std::string serialize() const {
        nlohmann::json fams = nlohmann::json::object();
        for (const auto& [v, fam] : families)
            fams[std::to_string(v)] = {{"m", fam.max_size}, {"cliques", fam.cliques}};
        nlohmann::json j = {{"admitted", admitted}, {"families", fams}};
        return j.dump();
    }
};

/// Outcome of a single admission request.
struct AdmissionRow {
    int request_index = 0;
    int station_id = 0;
    int cell = 0;
    bool admitted = false;
    int admitted_total = 0;
    int max_clique_after = 0;
    double decision_seconds = 0.0; ///< not serialized; reported via manifests
};

struct AdmissionReport {
    int grid_dim = 0;
    int cap = 0;
    double cs_range = 0.0;
    std::vector<AdmissionRow> rows;
    std::map<int, int> admitted_per_cell;
    int admitted_total = 0;
    double total_seconds = 0.0;
};

/// Feeds candidate stations through admission control in the given order.
/// Conflicts against already admitted sessions use the admission-graph
/// rule: same cell always conflicts, cross-cell co-channel pairs are
/// classified geometrically. Rejected candidates are not retried.
inline AdmissionReport run_admission_stream(const Topology& topo, double cs_range,
                                            const std::vector<int>& candidates,
                                            int cap) {
    if (cap < 1) throw std::invalid_argument("cap must be at least 1");
    std::vector<Session> sessions = make_sessions(topo);
    std::map<int, std::size_t> by_station;
    for (std::size_t i = 0; i < sessions.size(); ++i)
        by_station[sessions[i].station_id] = i;

    AdmissionReport report;
    report.grid_dim = topo.grid_dim;
    report.cap = cap;
    report.cs_range = cs_range;

    double margin = topo.radio.interference_margin;
    AdmissionState state;
    std::vector<int> live; ///< station ids admitted so far
    std::map<int, bool> seen;

    int index = 0;
    for (int sid : candidates) {
        auto it = by_station.find(sid);
        if (it == by_station.end())
            throw std::invalid_argument("unknown station id: " + std::to_string(sid));
        if (seen[sid])
            throw std::invalid_argument("station requested twice: " + std::to_string(sid));
        seen[sid] = true;

        const Session& cand = sessions[it->second];
        std::vector<int> conflicts;
        for (int uid : live) {
            const Session& other = sessions[by_station[uid]];
            if (other.cell == cand.cell) {
                conflicts.push_back(uid);
                continue;
            }
            if (detail::channel_or_zero(topo.cell(other.cell)) !=
                detail::channel_or_zero(topo.cell(cand.cell)))
                continue;
            if (conflict_test(cand, other, cs_range, margin) != ConflictKind::none)
                conflicts.push_back(uid);
        }

        auto t0 = std::chrono::steady_clock::now();
        bool ok = state.admit(sid, conflicts, cap);
        auto t1 = std::chrono::steady_clock::now();
        double dt = std::chrono::duration<double>(t1 - t0).count();

        if (ok) {
            live.push_back(sid);
            report.admitted_per_cell[cand.cell] += 1;
            report.admitted_total += 1;
        }
        report.rows.push_back({index, sid, cand.cell, ok, report.admitted_total,
                               state.max_clique_size(), dt});
        report.total_seconds += dt;
        ++index;
    }
    return report;
}

inline std::string to_csv(const AdmissionReport& r) {
    std::string out = "request_index,station_id,cell_id,decision,admitted_total,max_clique_after\n";
    for (const AdmissionRow& row : r.rows) {
        out += std::to_string(row.request_index);
        out += ',';
        out += std::to_string(row.station_id);
        out += ',';
        out += std::to_string(row.cell);
        out += ',';
        out += row.admitted ? "admitted" : "rejected";
        out += ',';
        out += std::to_string(row.admitted_total);
        out += ',';
        out += std::to_string(row.max_clique_after);
        out += '\n';
    }
    return out;
}

inline nlohmann::json summary_json(const AdmissionReport& r) {
    nlohmann::json per_cell = nlohmann::json::object();
    for (const auto& [cell, count] : r.admitted_per_cell)
        per_cell[std::to_string(cell)] = count;
    double aps = static_cast<double>(r.grid_dim) * static_cast<double>(r.grid_dim);
    return {{"cap", r.cap},
            {"cs_range", r.cs_range},
            {"requests", r.rows.size()},
            {"admitted_total", r.admitted_total},
            {"admitted_per_cell", per_cell},
            {"mean_admitted_per_ap",
             aps > 0.0 ? static_cast<double>(r.admitted_total) / aps : 0.0}};
}

} // namespace wlancap
