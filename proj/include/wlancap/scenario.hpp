#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "capacity_model.hpp"
#include "clique_admission.hpp"
#include "conflict_graph.hpp"
#include "cotdma_coloring.hpp"
#include "geometry.hpp"
#include "rng.hpp"

namespace wlancap {

inline constexpr char kVersion[] = "0.1.0";

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { topology, admit, color, sweep, capacity, replicate };

inline std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::topology: return "topology";
        case RunMode::admit: return "admit";
        case RunMode::color: return "color";
        case RunMode::sweep: return "sweep";
        case RunMode::capacity: return "capacity";
        case RunMode::replicate: return "replicate";
    }
    return "topology";
}

inline RunMode run_mode_from_string(const std::string& s) {
    if (s == "topology") return RunMode::topology;
    if (s == "admit") return RunMode::admit;
    if (s == "color") return RunMode::color;
    if (s == "sweep") return RunMode::sweep;
    if (s == "capacity") return RunMode::capacity;
    if (s == "replicate") return RunMode::replicate;
    throw config_error("unknown mode: " + s);
}

/// Everything a run needs, loadable from JSON and overridable from the
/// command line. Zero or empty values mean "use the mode's default".
struct ScenarioConfig {
    RunMode mode = RunMode::topology;
    int grid_dim = 5;
    int stations_per_cell = 0; ///< 0: derive from mode
    std::string scheme;        ///< none|single|three|seven, empty: mode default
    RadioParams radio;

    int clique_cap = 8;

    int num_channels = 3;
    int num_slots = 1;
    int single_cell_capacity = 12;
    double cs_over_radius = -1.0; ///< negative: use radio.cs_range
    bool sector_rule = false;

    std::vector<int> slots_values;
    std::vector<double> cs_ratios;
    int trials = 5;

    std::string codec = "gsm_6_10";
    int payload_bytes = 0;
    double packets_per_second = 0.0;
    int frames = 4;
    TimingParams timing;

    std::vector<std::uint64_t> seeds = {1};
    std::string out_dir;
    std::string format = "csv";
    std::string table;

    std::string resolved_scheme() const {
        if (!scheme.empty()) return scheme;
        switch (mode) {
            case RunMode::topology: return "none";
            case RunMode::admit: return "single";
            default: return "three";
        }
    }

    int resolved_stations_per_cell() const {
        if (stations_per_cell > 0) return stations_per_cell;
        if (mode == RunMode::topology) return 12;
        return single_cell_capacity;
    }

    double resolved_cs_range() const {
        if (sector_rule) return sector_cs_range(num_slots, radio.cell_radius);
        if (cs_over_radius >= 0.0) return cs_over_radius * radio.cell_radius;
        return radio.cs_range;
    }

    void validate() const {
        if (grid_dim < 1) throw config_error("grid_dim must be at least 1");
        if (stations_per_cell < 0)
            throw config_error("stations_per_cell must be non-negative");
        if (format != "csv" && format != "json")
            throw config_error("format must be csv or json");
        if (seeds.empty()) throw config_error("at least one seed is required");
        std::string sch = resolved_scheme();
        if (sch != "none" && sch != "single" && sch != "three" && sch != "seven")
            throw config_error("unknown scheme: " + sch);
        try {
            radio.validate();
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("radio: ") + e.what());
        }
        try {
            switch (mode) {
                case RunMode::topology:
                    break;
                case RunMode::admit:
                    if (clique_cap < 1) throw config_error("clique_cap must be at least 1");
                    break;
                case RunMode::color: {
                    CoTDMAParams p{num_channels, num_slots, single_cell_capacity,
                                   sch != "none"};
                    p.validate();
                    break;
                }
                case RunMode::sweep: {
                    if (slots_values.empty())
                        throw config_error("sweep needs slots_values");
                    if (!sector_rule && cs_ratios.empty())
                        throw config_error("sweep needs cs_ratios or sector_rule");
                    if (trials < 1) throw config_error("trials must be at least 1");
                    for (int n : slots_values) {
                        CoTDMAParams p{num_channels, n, single_cell_capacity,
                                       sch != "none"};
                        p.validate();
                        if (sector_rule) sector_cs_range(n, radio.cell_radius);
                    }
                    break;
                }
                case RunMode::capacity: {
                    if (frames < 1) throw config_error("frames must be at least 1");
                    if (num_slots < 1) throw config_error("num_slots must be at least 1");
                    if (single_cell_capacity < 1)
                        throw config_error("single_cell_capacity must be at least 1");
                    timing.validate();
                    if (codec != "gsm_6_10" &&
                        (payload_bytes <= 0 || !(packets_per_second > 0.0)))
                        throw config_error(
                            "custom codec needs payload_bytes and packets_per_second");
                    break;
                }
                case RunMode::replicate:
                    if (table != "table2" && table != "table4" && table != "fig11_14")
                        throw config_error("table must be table2, table4 or fig11_14");
                    break;
            }
        } catch (const std::invalid_argument& e) {
            throw config_error(e.what());
        }
    }
};

inline nlohmann::json to_json(const TimingParams& t) {
    return {{"beacon_interval_ms", t.beacon_interval_ms},
            {"beacon_ms", t.beacon_ms},
            {"delay_budget_ms", t.delay_budget_ms}};
}

inline nlohmann::json to_json(const ScenarioConfig& c) {
    return {{"mode", to_string(c.mode)},
            {"grid_dim", c.grid_dim},
            {"stations_per_cell", c.stations_per_cell},
            {"scheme", c.resolved_scheme()},
            {"radio", to_json(c.radio)},
            {"clique_cap", c.clique_cap},
            {"num_channels", c.num_channels},
            {"num_slots", c.num_slots},
            {"single_cell_capacity", c.single_cell_capacity},
            {"cs_over_radius", c.cs_over_radius},
            {"sector_rule", c.sector_rule},
            {"slots_values", c.slots_values},
            {"cs_ratios", c.cs_ratios},
            {"trials", c.trials},
            {"codec", c.codec},
            {"payload_bytes", c.payload_bytes},
            {"packets_per_second", c.packets_per_second},
            {"frames", c.frames},
            {"timing", to_json(c.timing)},
            {"seeds", c.seeds},
            {"format", c.format},
            {"table", c.table}};
}

inline ScenarioConfig scenario_from_json(const nlohmann::json& j) {
    ScenarioConfig c;
    try {
        if (j.contains("mode")) c.mode = run_mode_from_string(j.at("mode").get<std::string>());
        if (j.contains("grid_dim")) c.grid_dim = j.at("grid_dim").get<int>();
        if (j.contains("stations_per_cell"))
            c.stations_per_cell = j.at("stations_per_cell").get<int>();
        if (j.contains("scheme")) c.scheme = j.at("scheme").get<std::string>();
        if (j.contains("radio")) c.radio = radio_from_json(j.at("radio"));
        if (j.contains("clique_cap")) c.clique_cap = j.at("clique_cap").get<int>();
        if (j.contains("num_channels")) c.num_channels = j.at("num_channels").get<int>();
        if (j.contains("num_slots")) c.num_slots = j.at("num_slots").get<int>();
        if (j.contains("single_cell_capacity"))
            c.single_cell_capacity = j.at("single_cell_capacity").get<int>();
        if (j.contains("cs_over_radius"))
            c.cs_over_radius = j.at("cs_over_radius").get<double>();
        if (j.contains("sector_rule")) c.sector_rule = j.at("sector_rule").get<bool>();
        if (j.contains("slots_values"))
            c.slots_values = j.at("slots_values").get<std::vector<int>>();
        if (j.contains("cs_ratios"))
            c.cs_ratios = j.at("cs_ratios").get<std::vector<double>>();
        if (j.contains("trials")) c.trials = j.at("trials").get<int>();
        if (j.contains("codec")) c.codec = j.at("codec").get<std::string>();
        if (j.contains("payload_bytes")) c.payload_bytes = j.at("payload_bytes").get<int>();
        if (j.contains("packets_per_second"))
            c.packets_per_second = j.at("packets_per_second").get<double>();
        if (j.contains("frames")) c.frames = j.at("frames").get<int>();
        if (j.contains("timing")) {
            const auto& t = j.at("timing");
            if (t.contains("beacon_interval_ms"))
                c.timing.beacon_interval_ms = t.at("beacon_interval_ms").get<double>();
            if (t.contains("beacon_ms")) c.timing.beacon_ms = t.at("beacon_ms").get<double>();
            if (t.contains("delay_budget_ms"))
                c.timing.delay_budget_ms = t.at("delay_budget_ms").get<double>();
        }
        if (j.contains("seeds")) {
            c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        } else {
            std::uint64_t base = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 1;
            int count = j.contains("seed_count") ? j.at("seed_count").get<int>() : 1;
            if (count < 1) throw config_error("seed_count must be at least 1");
            c.seeds.clear();
            for (int i = 0; i < count; ++i)
                c.seeds.push_back(base + static_cast<std::uint64_t>(i));
        }
        if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
        if (j.contains("format")) c.format = j.at("format").get<std::string>();
        if (j.contains("table")) c.table = j.at("table").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    return c;
}

inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

/// One produced artifact: file name, the schema it conforms to, and the
/// exact bytes. Contents carry no timings, so replays match byte for byte.
struct RunOutput {
    std::string path;
    std::string schema;
    std::string content;
};

struct RunManifest {
    std::string version;
    std::string config_hash;
    nlohmann::json config;
    std::vector<std::pair<std::string, std::string>> outputs; ///< (path, schema)
    nlohmann::json timings;
};

inline nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& [path, schema] : m.outputs)
        outs.push_back({{"path", path}, {"schema", schema}});
    return {{"version", m.version},
            {"config_hash", m.config_hash},
            {"config", m.config},
            {"outputs", outs},
            {"timings", m.timings}};
}

struct RunResult {
    RunManifest manifest;
    std::vector<RunOutput> outputs;
};

namespace detail {

inline void push_output(RunResult& res, const std::string& path,
                        const std::string& schema, std::string content) {
    res.outputs.push_back({path, schema, std::move(content)});
    res.manifest.outputs.emplace_back(path, schema);
}

inline Topology scenario_topology(const ScenarioConfig& cfg, std::uint64_t seed) {
    Topology t = build_topology(cfg.grid_dim, cfg.radio,
                                cfg.resolved_stations_per_cell(), seed);
    std::string sch = cfg.resolved_scheme();
    if (sch == "single") return assign_frequencies(t, FrequencyScheme::single);
    if (sch == "three") return assign_frequencies(t, FrequencyScheme::three);
    if (sch == "seven") return assign_frequencies(t, FrequencyScheme::seven);
    return t;
}

/// Stream tag for drawing the arrival order, distinct from the (row, col)
/// placement streams.
inline constexpr std::uint64_t kArrivalTag = 0x61727276ULL;

inline std::vector<int> arrival_order(const Topology& topo, std::uint64_t seed) {
    std::vector<int> order;
    order.reserve(topo.stations.size());
    for (const Station& s : topo.stations) order.push_back(s.id);
    Rng rng(substream(seed, kArrivalTag, kArrivalTag));
    rng.shuffle(order);
    return order;
}

inline nlohmann::json admission_rows_json(const AdmissionReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const AdmissionRow& row : r.rows)
        rows.push_back({{"request_index", row.request_index},
                        {"station_id", row.station_id},
                        {"cell_id", row.cell},
                        {"decision", row.admitted ? "admitted" : "rejected"},
                        {"admitted_total", row.admitted_total},
                        {"max_clique_after", row.max_clique_after}});
    return rows;
}

inline nlohmann::json sweep_rows_json(const SweepReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& row : r.rows)
        rows.push_back({{"n", row.slots},
                        {"cs_range_over_dmax", row.cs_over_radius},
                        {"trial", row.trial},
                        {"colored", row.colored},
                        {"total", row.total},
                        {"coverage", row.coverage()}});
    return rows;
}

struct ComparisonRow {
    std::string label;
    std::optional<double> reference;
    double measured = 0.0;
};

inline nlohmann::json comparison_json(const std::string& experiment,
                                      const std::vector<ComparisonRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const ComparisonRow& r : rows) {
        nlohmann::json jr = {{"label", r.label}, {"measured", r.measured}};
        if (r.reference) {
            jr["reference"] = *r.reference;
            jr["deviation"] = r.measured - *r.reference;
            jr["relative_deviation"] = (r.measured - *r.reference) / *r.reference;
        } else {
            jr["reference"] = nullptr;
            jr["deviation"] = nullptr;
            jr["relative_deviation"] = nullptr;
        }
        out.push_back(jr);
    }
    return {{"experiment", experiment}, {"rows", out}};
}

inline std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = "label,reference,measured,deviation\n";
    for (const ComparisonRow& r : rows) {
        out += r.label;
        out += ',';
        out += r.reference ? format_double(*r.reference) : "";
        out += ',';
        out += format_double(r.measured);
        out += ',';
        out += r.reference ? format_double(r.measured - *r.reference) : "";
        out += '\n';
    }
    return out;
}

} // namespace detail

/// Replays the multi-cell admission experiment: a 5x5 single-channel grid,
/// twelve candidate sessions per cell in uniform arrival order, admission
/// capped per clique. Recorded baseline means: 62.0 admitted at cap 8,
/// 70.4 at cap 12.
inline std::vector<detail::ComparisonRow> replicate_table2(
    const ScenarioConfig& cfg, std::vector<std::pair<int, double>>* per_seed = nullptr) {
    std::vector<detail::ComparisonRow> rows;
    const std::map<int, double> reference = {{8, 62.0}, {12, 70.4}};
    for (const auto& [cap, ref] : reference) {
        double sum = 0.0;
        for (std::uint64_t seed : cfg.seeds) {
            ScenarioConfig local = cfg;
            local.mode = RunMode::admit;
            local.scheme = "single";
            local.grid_dim = 5;
            local.stations_per_cell = 12;
            Topology topo = detail::scenario_topology(local, seed);
            AdmissionReport rep = run_admission_stream(
                topo, cfg.radio.cs_range, detail::arrival_order(topo, seed), cap);
            sum += rep.admitted_total;
            if (per_seed) per_seed->push_back({cap, static_cast<double>(rep.admitted_total)});
        }
        double mean = sum / static_cast<double>(cfg.seeds.size());
        rows.push_back({"admitted_total cap=" + std::to_string(cap), ref, mean});
    }
    return rows;
}

/// Replays the coverage table at cs_range = 1.637 cell radii on a
/// three-channel 5x5 grid, for both station densities. Baseline coverage
/// percentages by slot count:
///   capacity 12: n=1: 80.0, n=2: 98.6, n=3..12: 100
///   capacity 60: n=1: 69.8, n=2: 93.0, n=3: 99.6, n=4..60: 100
inline std::vector<detail::ComparisonRow> replicate_table4(const ScenarioConfig& cfg) {
    struct Block {
        int capacity;
        std::vector<std::pair<int, double>> reference; ///< (slots, percent)
    };
    const std::vector<Block> blocks = {
        {12, {{1, 80.0}, {2, 98.6}, {3, 100.0}, {4, 100.0}, {6, 100.0}, {12, 100.0}}},
        {60, {{1, 69.8}, {2, 93.0}, {3, 99.6}, {4, 100.0}, {6, 100.0}, {60, 100.0}}}};

    std::vector<detail::ComparisonRow> rows;
    for (const Block& block : blocks) {
        ScenarioConfig local = cfg;
        local.mode = RunMode::sweep;
        local.scheme = "three";
        local.grid_dim = 5;
        local.single_cell_capacity = block.capacity;
        local.stations_per_cell = block.capacity;
        Topology topo = detail::scenario_topology(local, cfg.seeds[0]);
        CoTDMAParams base{local.num_channels, 1, block.capacity, true};
        std::vector<int> slots;
        for (const auto& [n, ref] : block.reference) slots.push_back(n);
        SweepReport rep = cs_range_sweep(topo, base, slots, {1.637},
                                         static_cast<int>(cfg.seeds.size()),
                                         cfg.seeds[0]);
        nlohmann::json summary = sweep_summary_json(rep);
        std::map<int, double> means;
        for (const auto& row : summary.at("rows"))
            means[row.at("n").get<int>()] = row.at("mean_coverage").get<double>();
        for (const auto& [n, ref] : block.reference)
            rows.push_back({"coverage_pct capacity=" + std::to_string(block.capacity) +
                                " n=" + std::to_string(n),
                            ref, 100.0 * means.at(n)});
    }
    return rows;
}

/// Measures the coverage trends behind the sector-rule and fixed-range
/// sweeps. The sector pairs follow the per-slot budget: with capacity 60
/// the one-station-per-slot point is n=60. These sweeps have no recorded
/// numeric baselines, so rows carry measurements only.
inline std::vector<detail::ComparisonRow> replicate_fig11_14(const ScenarioConfig& cfg) {
    std::vector<detail::ComparisonRow> rows;
    struct Block {
        int capacity;
        std::vector<std::pair<int, double>> sector_pairs; ///< (slots, cs ratio)
    };
    const double r13 = std::sqrt(13.0) / 2.0;
    const double r7 = std::sqrt(7.0) / 2.0;
    const double r3 = std::sqrt(3.0);
    const std::vector<Block> blocks = {
        {12, {{1, 2.0}, {2, r13}, {3, r3}, {4, r7}, {6, 1.0}, {12, 0.0}}},
        {60, {{1, 2.0}, {2, r13}, {3, r3}, {4, r7}, {6, 1.0}, {60, 0.0}}}};

    for (const Block& block : blocks) {
        ScenarioConfig local = cfg;
        local.mode = RunMode::sweep;
        local.scheme = "three";
        local.grid_dim = 5;
        local.single_cell_capacity = block.capacity;
        local.stations_per_cell = block.capacity;
        Topology topo = detail::scenario_topology(local, cfg.seeds[0]);
        CoTDMAParams base{local.num_channels, 1, block.capacity, true};
        for (const auto& [n, ratio] : block.sector_pairs) {
            SweepReport rep = cs_range_sweep(topo, base, {n}, {ratio},
                                             static_cast<int>(cfg.seeds.size()),
                                             cfg.seeds[0]);
            nlohmann::json summary = sweep_summary_json(rep);
            double mean = summary.at("rows").at(0).at("mean_coverage").get<double>();
            rows.push_back({"sector_coverage_pct capacity=" + std::to_string(block.capacity) +
                                " n=" + std::to_string(n),
                            std::nullopt, 100.0 * mean});
        }
        const std::vector<double> ratios = {1.0, 1.2, 1.4, 1.5, 1.637, 1.8, 2.0};
        std::vector<int> slots;
        for (const auto& [n, ratio] : block.sector_pairs) slots.push_back(n);
        SweepReport rep = cs_range_sweep(topo, base, slots, ratios,
                                         static_cast<int>(cfg.seeds.size()),
                                         cfg.seeds[0]);
        nlohmann::json summary = sweep_summary_json(rep);
        for (const auto& row : summary.at("rows"))
            rows.push_back(
                {"fixed_coverage_pct capacity=" + std::to_string(block.capacity) +
                     " n=" + std::to_string(row.at("n").get<int>()) +
                     " cs=" + detail::format_double(row.at("cs_range_over_dmax").get<double>()),
                 std::nullopt, 100.0 * row.at("mean_coverage").get<double>()});
    }
    return rows;
}

/// Executes a configured run without touching the file system. All output
/// bytes are returned; timings live only in the manifest.
inline RunResult run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    RunResult res;
    res.manifest.version = kVersion;
    res.manifest.config = to_json(cfg);
    res.manifest.config_hash = fnv1a_hex(res.manifest.config.dump());

    auto t0 = std::chrono::steady_clock::now();
    switch (cfg.mode) {
        case RunMode::topology: {
            for (std::uint64_t seed : cfg.seeds) {
                Topology topo = detail::scenario_topology(cfg, seed);
                detail::push_output(res, "topology_seed" + std::to_string(seed) + ".json",
                                    "topology", to_json(topo).dump(2) + "\n");
            }
            break;
        }
        case RunMode::admit: {
            nlohmann::json per_seed = nlohmann::json::array();
            double mean = 0.0;
            for (std::uint64_t seed : cfg.seeds) {
                Topology topo = detail::scenario_topology(cfg, seed);
                AdmissionReport rep =
                    run_admission_stream(topo, cfg.radio.cs_range,
                                         detail::arrival_order(topo, seed), cfg.clique_cap);
                if (cfg.format == "csv")
                    detail::push_output(res, "admission_seed" + std::to_string(seed) + ".csv",
                                        "admission_rows_csv", to_csv(rep));
                else
                    detail::push_output(res, "admission_seed" + std::to_string(seed) + ".json",
                                        "admission_rows",
                                        detail::admission_rows_json(rep).dump(2) + "\n");
                nlohmann::json s = summary_json(rep);
                s["seed"] = seed;
                per_seed.push_back(s);
                mean += rep.admitted_total;
                res.manifest.timings["seed_" + std::to_string(seed) + "_seconds"] =
                    rep.total_seconds;
            }
            mean /= static_cast<double>(cfg.seeds.size());
            nlohmann::json summary = {{"cap", cfg.clique_cap},
                                      {"seeds", cfg.seeds},
                                      {"per_seed", per_seed},
                                      {"mean_admitted_total", mean},
                                      {"mean_admitted_per_ap",
                                       per_ap_capacity(mean, cfg.grid_dim)}};
            detail::push_output(res, "admission_summary.json", "admission_summary",
                                summary.dump(2) + "\n");
            break;
        }
        case RunMode::color: {
            nlohmann::json per_seed = nlohmann::json::array();
            CoTDMAParams params{cfg.num_channels, cfg.num_slots,
                                cfg.single_cell_capacity,
                                cfg.resolved_scheme() != "none"};
            double cs = cfg.resolved_cs_range();
            for (std::uint64_t seed : cfg.seeds) {
                Topology topo = detail::scenario_topology(cfg, seed);
                ConflictGraph graph = build_coloring_graph(topo, cs);
                ColoringResult result = color(graph, params);
                std::size_t violations =
                    validate_assignment(graph, result.assignment, params).size();
                detail::push_output(res, "assignment_seed" + std::to_string(seed) + ".json",
                                    "assignment", to_json(result).dump(2) + "\n");
                per_seed.push_back({{"seed", seed},
                                    {"colored", result.colored},
                                    {"total", result.total},
                                    {"coverage", result.coverage()},
                                    {"violations", violations}});
            }
            nlohmann::json summary = {{"num_channels", params.num_channels},
                                      {"num_slots", params.num_slots},
                                      {"single_cell_capacity", params.single_cell_capacity},
                                      {"cs_range", cs},
                                      {"per_seed", per_seed}};
            detail::push_output(res, "coloring_summary.json", "coloring_summary",
                                summary.dump(2) + "\n");
            break;
        }
        case RunMode::sweep: {
            Topology topo = detail::scenario_topology(cfg, cfg.seeds[0]);
            CoTDMAParams base{cfg.num_channels, 1, cfg.single_cell_capacity,
                              cfg.resolved_scheme() != "none"};
            SweepReport merged;
            if (cfg.sector_rule) {
                for (int n : cfg.slots_values) {
                    double ratio =
                        sector_cs_range(n, cfg.radio.cell_radius) / cfg.radio.cell_radius;
                    SweepReport rep = cs_range_sweep(topo, base, {n}, {ratio},
                                                     cfg.trials, cfg.seeds[0]);
                    if (merged.rows.empty()) merged = rep;
                    else {
                        merged.rows.insert(merged.rows.end(), rep.rows.begin(),
                                           rep.rows.end());
                        merged.total_seconds += rep.total_seconds;
                    }
                }
            } else {
                merged = cs_range_sweep(topo, base, cfg.slots_values, cfg.cs_ratios,
                                        cfg.trials, cfg.seeds[0]);
            }
            if (cfg.format == "csv")
                detail::push_output(res, "sweep.csv", "sweep_rows_csv", to_csv(merged));
            else
                detail::push_output(res, "sweep.json", "sweep_rows",
                                    detail::sweep_rows_json(merged).dump(2) + "\n");
            detail::push_output(res, "sweep_summary.json", "sweep_summary",
                                sweep_summary_json(merged).dump(2) + "\n");
            res.manifest.timings["sweep_seconds"] = merged.total_seconds;
            break;
        }
        case RunMode::capacity: {
            CodecProfile codec = cfg.codec == "gsm_6_10"
                                     ? gsm_6_10()
                                     : codec_profile(cfg.codec, cfg.payload_bytes,
                                                     cfg.packets_per_second);
            CapacityResult result = cotdma_capacity(codec, cfg.num_slots, cfg.frames,
                                                    cfg.single_cell_capacity);
            nlohmann::json report = capacity_report_json(
                codec, cfg.num_slots, cfg.frames, cfg.single_cell_capacity, result,
                cfg.timing);
            detail::push_output(res, "capacity.json", "capacity_report",
                                report.dump(2) + "\n");
            break;
        }
        case RunMode::replicate: {
            std::vector<detail::ComparisonRow> rows;
            if (cfg.table == "table2") rows = replicate_table2(cfg);
            else if (cfg.table == "table4") rows = replicate_table4(cfg);
            else rows = replicate_fig11_14(cfg);
            detail::push_output(res, "comparison.json", "comparison",
                                detail::comparison_json(cfg.table, rows).dump(2) + "\n");
            detail::push_output(res, "comparison.csv", "comparison_csv",
                                detail::comparison_csv(rows));
            break;
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    res.manifest.timings["total_seconds"] = std::chrono::duration<double>(t1 - t0).count();
    return res;
}

/// Writes a run's outputs plus manifest.json under `dir`.
inline void write_run(const RunResult& res, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create " + dir + ": " + ec.message());
    auto write = [&](const std::string& name, const std::string& content) {
        fs::path p = fs::path(dir) / name;
        std::ofstream out(p, std::ios::binary);
        if (!out) throw io_error("cannot open " + p.string());
        out << content;
        if (!out) throw io_error("cannot write " + p.string());
    };
    for (const RunOutput& o : res.outputs) write(o.path, o.content);
    write("manifest.json", to_json(res.manifest).dump(2) + "\n");
}

} // namespace wlancap
