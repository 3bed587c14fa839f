#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "wlancap/wlancap.hpp"

using namespace wlancap;

namespace {

/// Adjacency restricted to the vertices in `mask`.
std::vector<std::uint32_t> induced(const std::vector<std::uint32_t>& adj,
                                   std::uint32_t mask) {
    std::vector<std::uint32_t> out(adj.size(), 0);
    for (std::size_t u = 0; u < adj.size(); ++u)
        if (mask & (1u << u)) out[u] = adj[u] & mask;
    return out;
}

int family_max(const std::vector<Clique>& cliques) {
    std::size_t m = 0;
    for (const Clique& c : cliques) m = std::max(m, c.size());
    return static_cast<int>(m);
}

/// Admits 1..5 with the conflict pattern whose final family around vertex
/// 1 is {{1,2,3,5},{1,3,4}}.
AdmissionState five_vertex_state(int cap) {
    AdmissionState st;
    REQUIRE(st.admit(1, {}, cap));
    REQUIRE(st.admit(2, {1}, cap));
    REQUIRE(st.admit(3, {1, 2}, cap));
    REQUIRE(st.admit(4, {1, 3}, cap));
    st.admit(5, {1, 2, 3}, cap);
    return st;
}

} // namespace

TEST_CASE("family reduction removes duplicates and dominated cliques") {
    CHECK(no_redundancy({{1, 2}, {1, 2}, {2}, {1, 2, 3}, {4}}) ==
          std::vector<Clique>{{1, 2, 3}, {4}});
    CHECK(no_redundancy({{3}, {1}, {2}}) == std::vector<Clique>{{1}, {2}, {3}});
    CHECK(no_redundancy({}) == std::vector<Clique>{});
    CHECK(no_redundancy({{2, 5}, {2, 5}}).size() == 1);

    Rng rng(42);
    for (int round = 0; round < 60; ++round) {
        std::vector<Clique> family;
        int cliques = 1 + static_cast<int>(rng.next_below(8));
        for (int i = 0; i < cliques; ++i) {
            Clique c;
            for (int v = 0; v < 8; ++v)
                if (rng.next_double() < 0.4) c.push_back(v);
            if (c.empty()) c.push_back(static_cast<int>(rng.next_below(8)));
            family.push_back(c);
        }
        CHECK(no_redundancy(family) == oracles::reduce_family(family));
    }
}

TEST_CASE("incremental families track the worked five-vertex pattern") {
    AdmissionState st = five_vertex_state(8);

    REQUIRE(st.admitted == std::vector<int>{1, 2, 3, 4, 5});
    CHECK(st.families.at(1).cliques ==
          std::vector<Clique>{{1, 2, 3, 5}, {1, 3, 4}});
    CHECK(st.families.at(2).cliques == std::vector<Clique>{{1, 2, 3, 5}});
    CHECK(st.families.at(3).cliques ==
          std::vector<Clique>{{1, 2, 3, 5}, {1, 3, 4}});
    CHECK(st.families.at(4).cliques == std::vector<Clique>{{1, 3, 4}});
    CHECK(st.families.at(5).cliques == std::vector<Clique>{{1, 2, 3, 5}});

    CHECK(st.max_clique_size(1) == 4);
    CHECK(st.max_clique_size(4) == 3);
    CHECK(st.max_clique_size() == 4);
    CHECK_THROWS_AS(st.max_clique_size(6), std::out_of_range);
}

TEST_CASE("the cap turns the fifth request away but not the fourth") {
    AdmissionState tight = five_vertex_state(3);
    CHECK_FALSE(tight.is_admitted(5));
    CHECK(tight.admitted == std::vector<int>{1, 2, 3, 4});
    CHECK(tight.max_clique_size() == 3);

    AdmissionState loose = five_vertex_state(4);
    CHECK(loose.is_admitted(5));
}

TEST_CASE("complete graphs fill up to exactly the cap") {
    for (int cap : {1, 2, 4, 5}) {
        AdmissionState st;
        std::vector<int> in;
        for (int v = 0; v < 5; ++v) {
            if (st.admit(v, in, cap)) in.push_back(v);
        }
        CHECK(static_cast<int>(in.size()) == std::min(cap, 5));
        CHECK(st.max_clique_size() == std::min(cap, 5));
        if (cap >= 5)
            CHECK(st.families.at(0).cliques ==
                  std::vector<Clique>{{0, 1, 2, 3, 4}});
    }
}

TEST_CASE("admission rejects malformed requests") {
    AdmissionState st;
    REQUIRE(st.admit(0, {}, 2));
    CHECK_THROWS_AS(st.admit(0, {}, 2), std::invalid_argument);
    CHECK_THROWS_AS(st.admit(1, {5}, 2), std::invalid_argument);
    CHECK_THROWS_AS(st.admit(1, {0, 0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(st.admit(1, {1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(st.admit(1, {}, 0), std::invalid_argument);
    CHECK(st.admitted == std::vector<int>{0});
}

TEST_CASE("rejection leaves the state byte-identical") {
    AdmissionState st;
    REQUIRE(st.admit(1, {}, 3));
    REQUIRE(st.admit(2, {1}, 3));
    REQUIRE(st.admit(3, {1, 2}, 3));
    REQUIRE(st.admit(4, {1, 3}, 3));
    const std::string before = st.serialize();
    REQUIRE_FALSE(st.admit(5, {1, 2, 3}, 3));
    CHECK(st.serialize() == before);
    CHECK_FALSE(st.is_admitted(5));

    Rng rng(7);
    for (int round = 0; round < 20; ++round) {
        int n = 6 + static_cast<int>(rng.next_below(6));
        std::vector<std::uint32_t> adj = oracles::random_graph(rng, n, 0.6);
        AdmissionState state;
        std::vector<int> in;
        for (int v = 0; v < n; ++v) {
            std::vector<int> nbrs;
            for (int u : in)
                if (adj[static_cast<std::size_t>(v)] & (1u << u)) nbrs.push_back(u);
            const std::string snap = state.serialize();
            if (state.admit(v, nbrs, 2))
                in.push_back(v);
            else
                CHECK(state.serialize() == snap);
        }
    }
}

TEST_CASE("families match a fresh maximal-clique enumeration") {
    Rng rng(12345);
    for (double p : {0.2, 0.5, 0.8}) {
        for (int cap : {2, 3, 99}) {
            for (int round = 0; round < 6; ++round) {
                const int n = 5 + static_cast<int>(rng.next_below(8));
                const std::vector<std::uint32_t> adj = oracles::random_graph(rng, n, p);
                INFO("n=" << n << " p=" << p << " cap=" << cap);

                AdmissionState st;
                std::uint32_t in_mask = 0;
                std::vector<int> in;
                for (int v = 0; v < n; ++v) {
                    std::vector<int> nbrs;
                    for (int u : in)
                        if (adj[static_cast<std::size_t>(v)] & (1u << u))
                            nbrs.push_back(u);

                    auto with_v = induced(adj, in_mask | (1u << v));
                    const int would = family_max(oracles::maximal_cliques_through(with_v, v));
                    const bool ok = st.admit(v, nbrs, cap);
                    CHECK(ok == (would <= cap));
                    if (!ok) continue;

                    in.push_back(v);
                    in_mask |= 1u << v;
                    for (int u : in) {
                        CHECK(st.families.at(u).cliques ==
                              oracles::maximal_cliques_through(induced(adj, in_mask), u));
                        CHECK(st.families.at(u).max_size ==
                              family_max(st.families.at(u).cliques));
                    }
                }
            }
        }
    }
}

TEST_CASE("streamed admission fills cells up to the clique cap") {
    RadioParams radio;
    Topology topo = build_topology(2, radio, 4, 9);
    std::vector<int> order;
    for (const Station& s : topo.stations) order.push_back(s.id);
    Rng rng(3);
    rng.shuffle(order);

    const int cap = 3;
    AdmissionReport rep = run_admission_stream(topo, radio.cs_range, order, cap);
    REQUIRE(rep.rows.size() == order.size());
    CHECK(rep.cap == cap);
    CHECK(rep.cs_range == radio.cs_range);
    CHECK(rep.grid_dim == 2);

    int running = 0;
    std::map<int, int> per_cell;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const AdmissionRow& row = rep.rows[i];
        CHECK(row.request_index == static_cast<int>(i));
        CHECK(row.station_id == order[i]);
        CHECK(row.cell == topo.stations[static_cast<std::size_t>(order[i])].cell);
        if (row.admitted) {
            ++running;
            per_cell[row.cell] += 1;
        }
        CHECK(row.admitted_total == running);
        CHECK(row.max_clique_after <= cap);
    }
    CHECK(rep.admitted_total == running);
    CHECK(rep.admitted_per_cell == per_cell);
    CHECK(rep.admitted_total > 0);
    CHECK(rep.admitted_total < static_cast<int>(order.size()));

    // Replay the stream against the state machine directly.
    AdmissionState st;
    std::vector<Session> sessions = make_sessions(topo);
    std::vector<int> live;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Session& cand = sessions[static_cast<std::size_t>(order[i])];
        std::vector<int> nbrs;
        for (int uid : live) {
            const Session& other = sessions[static_cast<std::size_t>(uid)];
            bool clash = other.cell == cand.cell ||
                         conflict_test(cand, other, radio.cs_range,
                                       radio.interference_margin) != ConflictKind::none;
            if (clash) nbrs.push_back(uid);
        }
        bool ok = st.admit(order[i], nbrs, cap);
        CHECK(ok == rep.rows[i].admitted);
        if (ok) live.push_back(order[i]);
    }
}

TEST_CASE("an unbounded cap admits everyone and reports the largest clique") {
    RadioParams radio;
    Topology topo = build_topology(2, radio, 3, 21);
    std::vector<int> order;
    for (const Station& s : topo.stations) order.push_back(s.id);

    AdmissionReport rep = run_admission_stream(topo, radio.cs_range, order, 99);
    CHECK(rep.admitted_total == static_cast<int>(order.size()));

    ConflictGraph g = build_admission_graph(topo, radio.cs_range);
    std::vector<std::uint32_t> adj(order.size(), 0);
    for (const auto& [edge, label] : g.labels) {
        adj[static_cast<std::size_t>(edge.first)] |= 1u << edge.second;
        adj[static_cast<std::size_t>(edge.second)] |= 1u << edge.first;
    }
    int best = 0;
    for (const Clique& c : oracles::all_maximal_cliques(adj))
        best = std::max(best, static_cast<int>(c.size()));
    CHECK(rep.rows.back().max_clique_after == best);
}

TEST_CASE("streamed admission rejects bad candidate lists") {
    RadioParams radio;
    Topology topo = build_topology(1, radio, 2, 1);
    CHECK_THROWS_AS(run_admission_stream(topo, 550.0, {0, 7}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_admission_stream(topo, 550.0, {0, 1, 0}, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_admission_stream(topo, 550.0, {0, 1}, 0),
                    std::invalid_argument);
}

TEST_CASE("admission tables serialize to csv and a summary") {
    RadioParams radio;
    Topology topo = build_topology(1, radio, 3, 2);
    AdmissionReport rep = run_admission_stream(topo, radio.cs_range, {0, 1, 2}, 2);

    const std::string csv = to_csv(rep);
    const std::string header =
        "request_index,station_id,cell_id,decision,admitted_total,max_clique_after\n";
    REQUIRE(csv.rfind(header, 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.find("0,0,0,admitted,1,1\n") != std::string::npos);
    CHECK(csv.find("2,2,0,rejected,2,2\n") != std::string::npos);

    const nlohmann::json j = summary_json(rep);
    CHECK(j.at("cap") == 2);
    CHECK(j.at("requests") == 3);
    CHECK(j.at("admitted_total") == 2);
    CHECK(j.at("admitted_per_cell").at("0") == 2);
    CHECK(j.at("mean_admitted_per_ap") == 2.0);
}

TEST_CASE("state serialization is canonical") {
    AdmissionState a = five_vertex_state(8);
    AdmissionState b = five_vertex_state(8);
    CHECK(a.serialize() == b.serialize());

    const nlohmann::json j = nlohmann::json::parse(a.serialize());
    CHECK(j.at("admitted") == nlohmann::json({1, 2, 3, 4, 5}));
    CHECK(j.at("families").at("1").at("m") == 4);
}
