#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rng.hpp"

namespace wlancap {

/// Absolute tolerance for distance comparisons, in meters.
inline constexpr double kDistanceTol = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Radio model shared by all modules. Lengths are meters.
struct RadioParams {
    double cell_radius = 250.0;        ///< hexagon center-to-corner radius
    double tx_range = 250.0;           ///< maximum usable link length
    double cs_range = 550.0;           ///< carrier-sense range
    double interference_margin = 0.78; ///< dimensionless margin on link length
    double path_loss_exponent = 4.0;
    double path_loss_constant = 1.0;   ///< power scale in p = k / d^a

    void validate() const {
        if (!(cell_radius > 0.0))
            throw std::invalid_argument("cell_radius must be positive");
        if (!(tx_range >= cell_radius))
            throw std::invalid_argument("tx_range must cover the cell radius");
        if (!(cs_range >= 0.0))
            throw std::invalid_argument("cs_range must be non-negative");
        if (!(interference_margin > -1.0))
            throw std::invalid_argument("interference_margin must exceed -1");
        if (!(path_loss_exponent > 0.0))
            throw std::invalid_argument("path_loss_exponent must be positive");
        if (!(path_loss_constant > 0.0))
            throw std::invalid_argument("path_loss_constant must be positive");
    }
};

/// One hexagonal cell. The access point sits at the center.
struct Cell {
    int id = 0;
    int row = 0;
    int col = 0;
    Vec2 center;
    std::optional<int> channel; ///< unset until a frequency plan is applied
};

/// One client station, associated with exactly one cell.
struct Station {
    int id = 0;
    Vec2 pos;
    int cell = 0;
    double link_length = 0.0; ///< distance to the serving access point
};

/// Received power at distance d under the power-law path loss model.
inline double received_power(const RadioParams& radio, double distance_m) {
    if (!(distance_m > 0.0))
        throw std::domain_error("distance must be positive");
    return radio.path_loss_constant / std::pow(distance_m, radio.path_loss_exponent);
}

/// Distance at which the path loss model yields the given received power.
/// Inverse of received_power.
inline double virtual_distance(const RadioParams& radio, double power) {
    if (!(power > 0.0))
        throw std::domain_error("power must be positive");
    return std::pow(radio.path_loss_constant / power, 1.0 / radio.path_loss_exponent);
}

/// Interference range of a transmitter serving a link of the given length:
/// any receiver closer than this is disturbed.
inline double interference_range(double link_length, double margin) {
    if (link_length < 0.0)
        throw std::invalid_argument("link_length must be non-negative");
    return (1.0 + margin) * link_length;
}

/// Corner k (0..5) of a flat-top hexagon.
inline Vec2 hex_corner(const Vec2& center, double radius, int k) {
    double a = (3.14159265358979323846 / 3.0) * static_cast<double>(k);
    return {center.x + radius * std::cos(a), center.y + radius * std::sin(a)};
}

/// Point-in-hexagon test for a flat-top hexagon with corners at angles
/// 0, 60, ..., 300 degrees. The boundary is included up to `tol`.
inline bool hex_contains(const Vec2& center, double radius, const Vec2& p,
                         double tol = 0.0) {
    double dx = std::fabs(p.x - center.x);
    double dy = std::fabs(p.y - center.y);
    double s3 = std::sqrt(3.0);
    return dy <= s3 * radius / 2.0 + tol && s3 * dx + dy <= s3 * radius + tol;
}

/// Planned frequency layouts. `three` and `seven` are the periodic reuse
/// patterns on the hexagonal lattice; `single` puts every cell on channel 0.
enum class FrequencyScheme { single, three, seven };

inline std::string to_string(FrequencyScheme s) {
    switch (s) {
        case FrequencyScheme::single: return "single";
        case FrequencyScheme::three: return "three";
        case FrequencyScheme::seven: return "seven";
    }
    return "single";
}

inline FrequencyScheme frequency_scheme_from_string(const std::string& s) {
    if (s == "single") return FrequencyScheme::single;
    if (s == "three") return FrequencyScheme::three;
    if (s == "seven") return FrequencyScheme::seven;
    throw std::invalid_argument("unknown frequency scheme: " + s);
}

/// A D-by-D patch of hexagonal cells with client stations.
struct Topology {
    int grid_dim = 0; ///< D: cells form a D x D rhombus of the hex lattice
    RadioParams radio;
    std::vector<Cell> cells;
    std::vector<Station> stations;
    std::uint64_t seed = 0;

    const Cell& cell(int id) const {
        if (id < 0 || id >= static_cast<int>(cells.size()))
            throw std::out_of_range("unknown cell id");
        return cells[static_cast<std::size_t>(id)];
    }

    Vec2 ap_position(int cell_id) const { return cell(cell_id).center; }

    /// Lowest-id cell whose closed hexagon contains p, if any.
    std::optional<int> associated_cell(const Vec2& p) const {
        for (const Cell& c : cells)
            if (hex_contains(c.center, radio.cell_radius, p, kDistanceTol))
                return c.id;
        return std::nullopt;
    }
};

/// Center of cell (row, col) in the flat-top layout: rows advance along x,
/// columns along y, odd rows shifted by half a cell.
inline Vec2 cell_center(int row, int col, double radius) {
    double s3 = std::sqrt(3.0);
    double y = s3 * radius * static_cast<double>(col);
    if (row % 2 != 0) y += s3 * radius / 2.0;
    return {1.5 * radius * static_cast<double>(row), y};
}

/// Builds a D x D hexagonal patch and places `stations_per_cell` clients
/// uniformly in each cell by rejection sampling from the cell's bounding
/// box. Each cell draws from its own substream keyed by (seed, row, col),
/// so enlarging the grid does not move stations of cells that keep their
/// (row, col) position. A sample is kept only if this cell is the one the
/// point would associate with, so stations on shared boundaries belong to
/// the lowest-id cell.
inline Topology build_topology(int grid_dim, const RadioParams& radio,
                               int stations_per_cell, std::uint64_t seed) {
    if (grid_dim < 1)
        throw std::invalid_argument("grid_dim must be at least 1");
    if (stations_per_cell < 0)
        throw std::invalid_argument("stations_per_cell must be non-negative");
    radio.validate();

    Topology topo;
    topo.grid_dim = grid_dim;
    topo.radio = radio;
    topo.seed = seed;

    double R = radio.cell_radius;
    for (int r = 0; r < grid_dim; ++r)
        for (int c = 0; c < grid_dim; ++c)
            topo.cells.push_back(
                {r * grid_dim + c, r, c, cell_center(r, c, R), std::nullopt});

    double half_h = std::sqrt(3.0) * R / 2.0;
    int next_id = 0;
    for (const Cell& cell : topo.cells) {
        Rng rng(substream(seed, static_cast<std::uint64_t>(cell.row),
                          static_cast<std::uint64_t>(cell.col)));
        for (int s = 0; s < stations_per_cell; ++s) {
            Vec2 p;
            for (;;) {
                p.x = rng.next_double(cell.center.x - R, cell.center.x + R);
                p.y = rng.next_double(cell.center.y - half_h, cell.center.y + half_h);
                if (!hex_contains(cell.center, R, p)) continue;
                auto owner = topo.associated_cell(p);
                if (owner && *owner == cell.id) break;
            }
            topo.stations.push_back(
                {next_id++, p, cell.id, distance(p, cell.center)});
        }
    }
    return topo;
}

/// Applies a periodic frequency plan. Returns a copy; the input is not
/// modified. The periodic templates are proper colorings of the lattice:
/// with three channels the nearest co-channel centers are 3R apart, with
/// seven they are sqrt(21)R apart.
inline Topology assign_frequencies(const Topology& topo, FrequencyScheme scheme) {
    Topology out = topo;
    for (Cell& c : out.cells) {
        int q = c.row;
        int rax = c.col - (c.row >= 0 ? c.row / 2 : (c.row - 1) / 2);
        switch (scheme) {
            case FrequencyScheme::single:
                c.channel = 0;
                break;
            case FrequencyScheme::three:
                c.channel = ((q + 2 * rax) % 3 + 3) % 3;
                break;
            case FrequencyScheme::seven:
                c.channel = ((q + 5 * rax) % 7 + 7) % 7;
                break;
        }
    }
    return out;
}

/// Applies an explicit cell -> channel map. The map must cover every cell
/// with a non-negative channel.
inline Topology assign_frequencies(const Topology& topo,
                                   const std::map<int, int>& channels) {
    Topology out = topo;
    for (Cell& c : out.cells) {
        auto it = channels.find(c.id);
        if (it == channels.end())
            throw std::invalid_argument("frequency map is missing cell " +
                                        std::to_string(c.id));
        if (it->second < 0)
            throw std::invalid_argument("channel must be non-negative for cell " +
                                        std::to_string(c.id));
        c.channel = it->second;
    }
    return out;
}

/// Carrier-sense range that just covers one sector when a cell is split
/// into n equal sectors, one TDMA slot per sector. Only the sector counts
/// of the standard split are supported.
inline double sector_cs_range(int sectors, double cell_radius) {
    switch (sectors) {
        case 1: return 2.0 * cell_radius;
        case 2: return std::sqrt(13.0) / 2.0 * cell_radius;
        case 3: return std::sqrt(3.0) * cell_radius;
        case 4: return std::sqrt(7.0) / 2.0 * cell_radius;
        case 6: return cell_radius;
        case 12: return 0.0;
        default:
            throw std::invalid_argument("unsupported sector count: " +
                                        std::to_string(sectors));
    }
}

inline nlohmann::json to_json(const RadioParams& r) {
    return {{"cell_radius", r.cell_radius},
            {"tx_range", r.tx_range},
            {"cs_range", r.cs_range},
            {"interference_margin", r.interference_margin},
            {"path_loss_exponent", r.path_loss_exponent},
            {"path_loss_constant", r.path_loss_constant}};
}

/// Missing keys keep their defaults so configs may override selectively.
inline RadioParams radio_from_json(const nlohmann::json& j) {
    RadioParams r;
    r.cell_radius = j.value("cell_radius", r.cell_radius);
    r.tx_range = j.value("tx_range", r.tx_range);
    r.cs_range = j.value("cs_range", r.cs_range);
    r.interference_margin = j.value("interference_margin", r.interference_margin);
    r.path_loss_exponent = j.value("path_loss_exponent", r.path_loss_exponent);
    r.path_loss_constant = j.value("path_loss_constant", r.path_loss_constant);
    return r;
}

inline nlohmann::json to_json(const Topology& t) {
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell& c : t.cells) {
        nlohmann::json jc = {{"id", c.id}, {"cx", c.center.x}, {"cy", c.center.y}};
        jc["channel"] = c.channel ? nlohmann::json(*c.channel) : nlohmann::json();
        cells.push_back(jc);
    }
    nlohmann::json stations = nlohmann::json::array();
    for (const Station& s : t.stations)
        stations.push_back(
            {{"id", s.id}, {"x", s.pos.x}, {"y", s.pos.y}, {"cell", s.cell}});
    return {{"D", t.grid_dim},
            {"radio", to_json(t.radio)},
            {"cells", cells},
            {"stations", stations},
            {"seed", t.seed}};
}

inline Topology topology_from_json(const nlohmann::json& j) {
    Topology t;
    t.grid_dim = j.at("D").get<int>();
    t.radio = radio_from_json(j.at("radio"));
    t.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& jc : j.at("cells")) {
        Cell c;
        c.id = jc.at("id").get<int>();
        c.row = t.grid_dim > 0 ? c.id / t.grid_dim : 0;
        c.col = t.grid_dim > 0 ? c.id % t.grid_dim : 0;
        c.center = {jc.at("cx").get<double>(), jc.at("cy").get<double>()};
        if (!jc.at("channel").is_null()) c.channel = jc.at("channel").get<int>();
        t.cells.push_back(c);
    }
    for (const auto& js : j.at("stations")) {
        Station s;
        s.id = js.at("id").get<int>();
        s.pos = {js.at("x").get<double>(), js.at("y").get<double>()};
        s.cell = js.at("cell").get<int>();
        s.link_length = distance(s.pos, t.cell(s.cell).center);
        t.stations.push_back(s);
    }
    return t;
}

} // namespace wlancap
