// Command line front end: builds a ScenarioConfig from an optional JSON
// config file plus flag overrides, runs it, and writes or prints the
// results. Exit codes: 0 ok, 2 invalid configuration, 3 infeasible
// parameters, 4 I/O failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wlancap/wlancap.hpp"

namespace {

wlancap::ScenarioConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw wlancap::io_error("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw wlancap::config_error("config parse error: " + std::string(e.what()));
    }
    return wlancap::scenario_from_json(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voice capacity planning for multi-cell 802.11 WLANs"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;
    std::string scheme;
    std::uint64_t seed = 0;
    int seed_count = 0;
    int grid_dim = 0;
    int stations_per_cell = 0;
    int clique_cap = 0;
    int num_channels = 0;
    int num_slots = 0;
    int cell_capacity = 0;
    int frames = 0;
    int trials = 0;
    double cs_ratio = -1.0;
    bool sector = false;
    std::vector<int> slots_values;
    std::vector<double> cs_ratios;
    std::string codec;
    int payload_bytes = 0;
    double packets_per_second = 0.0;
    std::string table;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file; flags override it");
        cmd->add_option("--seed", seed, "base seed");
        cmd->add_option("--seeds", seed_count, "number of seeds, counted up from --seed");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--format", format, "tabular output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--grid-dim", grid_dim, "cells per grid side");
        cmd->add_option("--stations-per-cell", stations_per_cell, "clients per cell");
        cmd->add_option("--scheme", scheme, "frequency plan: none, single, three, seven")
            ->check(CLI::IsMember({"none", "single", "three", "seven"}));
    };

    CLI::App* c_topology = app.add_subcommand("topology", "generate cell layouts and placements");
    add_common(c_topology);

    CLI::App* c_admit = app.add_subcommand("admit", "stream admission control over random arrivals");
    add_common(c_admit);
    c_admit->add_option("--cap", clique_cap, "largest allowed conflict clique");

    CLI::App* c_color = app.add_subcommand("color", "two-layer channel and slot assignment");
    add_common(c_color);
    c_color->add_option("--channels", num_channels, "first-layer colors");
    c_color->add_option("--slots", num_slots, "second-layer colors");
    c_color->add_option("--cell-capacity", cell_capacity, "sessions one lone cell sustains");
    c_color->add_option("--cs-ratio", cs_ratio, "carrier-sense range in cell radii");
    c_color->add_flag("--sector", sector, "derive carrier-sense range from the sector rule");

    CLI::App* c_sweep = app.add_subcommand("sweep", "coverage across slot counts and cs ranges");
    add_common(c_sweep);
    c_sweep->add_option("--channels", num_channels, "first-layer colors");
    c_sweep->add_option("--cell-capacity", cell_capacity, "sessions one lone cell sustains");
    c_sweep->add_option("--slots-list", slots_values, "slot counts to sweep")
        ->delimiter(',');
    c_sweep->add_option("--cs-ratios", cs_ratios, "carrier-sense ranges in cell radii")
        ->delimiter(',');
    c_sweep->add_flag("--sector", sector, "pair each slot count with its sector cs range");
    c_sweep->add_option("--trials", trials, "placements per grid point");

    CLI::App* c_capacity = app.add_subcommand("capacity", "closed-form per-cell session capacity");
    add_common(c_capacity);
    c_capacity->add_option("--codec", codec, "gsm_6_10 or a custom codec name");
    c_capacity->add_option("--payload-bytes", payload_bytes, "custom codec payload");
    c_capacity->add_option("--packets-per-second", packets_per_second, "custom codec rate");
    c_capacity->add_option("--slots", num_slots, "slots per frame");
    c_capacity->add_option("--frames", frames, "frames per beacon interval");
    c_capacity->add_option("--cell-capacity", cell_capacity, "sessions one lone cell sustains");

    CLI::App* c_replicate = app.add_subcommand("replicate", "rerun the recorded baseline experiments");
    add_common(c_replicate);
    c_replicate->add_option("--table", table, "table2, table4 or fig11_14")
        ->check(CLI::IsMember({"table2", "table4", "fig11_14"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        wlancap::ScenarioConfig cfg = load_config(config_path);

        CLI::App* sub = app.get_subcommands().front();
        cfg.mode = wlancap::run_mode_from_string(sub->get_name());

        auto given = [&](const char* name) {
            const CLI::Option* opt = sub->get_option_no_throw(name);
            return opt != nullptr && opt->count() > 0;
        };

        if (given("--seed") || given("--seeds")) {
            std::uint64_t base = given("--seed") ? seed : 1;
            int count = given("--seeds") ? seed_count : 1;
            if (count < 1) throw wlancap::config_error("--seeds must be at least 1");
            cfg.seeds.clear();
            for (int i = 0; i < count; ++i)
                cfg.seeds.push_back(base + static_cast<std::uint64_t>(i));
        }
        if (given("--out")) cfg.out_dir = out_dir;
        if (given("--format")) cfg.format = format;
        if (given("--grid-dim")) cfg.grid_dim = grid_dim;
        if (given("--stations-per-cell")) cfg.stations_per_cell = stations_per_cell;
        if (given("--scheme")) cfg.scheme = scheme;
        if (given("--cap")) cfg.clique_cap = clique_cap;
        if (given("--channels")) cfg.num_channels = num_channels;
        if (given("--slots")) cfg.num_slots = num_slots;
        if (given("--cell-capacity")) cfg.single_cell_capacity = cell_capacity;
        if (given("--cs-ratio")) cfg.cs_over_radius = cs_ratio;
        if (given("--sector")) cfg.sector_rule = sector;
        if (given("--slots-list")) cfg.slots_values = slots_values;
        if (given("--cs-ratios")) cfg.cs_ratios = cs_ratios;
        if (given("--trials")) cfg.trials = trials;
        if (given("--codec")) cfg.codec = codec;
        if (given("--payload-bytes")) cfg.payload_bytes = payload_bytes;
        if (given("--packets-per-second")) cfg.packets_per_second = packets_per_second;
        if (given("--table")) cfg.table = table;

        bool to_stdout = cfg.out_dir.empty() &&
                         (cfg.mode == wlancap::RunMode::topology ||
                          cfg.mode == wlancap::RunMode::capacity);
        if (cfg.out_dir.empty() && !to_stdout) cfg.out_dir = "out";

        wlancap::RunResult result = wlancap::run_scenario(cfg);
        if (to_stdout) {
            for (const wlancap::RunOutput& o : result.outputs) std::cout << o.content;
        } else {
            wlancap::write_run(result, cfg.out_dir);
            std::cout << "wrote " << result.outputs.size() + 1 << " files to "
                      << cfg.out_dir << " (config " << result.manifest.config_hash
                      << ")\n";
        }
        return 0;
    } catch (const wlancap::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const wlancap::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const wlancap::config_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    }
}
