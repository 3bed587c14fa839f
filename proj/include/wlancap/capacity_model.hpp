#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace wlancap {

/// Raised when requested parameters cannot yield a working schedule.
struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Constant-bitrate voice codec, one packet stream per direction.
/// Rates include 40 bytes of IP/UDP/RTP headers per packet.
struct CodecProfile {
    std::string name;
    int payload_bytes = 0;
    double packets_per_second = 0.0;
    double one_way_rate_kbps = 0.0;
    double loss_adjusted_rate_kbps = 0.0;
};

inline CodecProfile codec_profile(const std::string& name, int payload_bytes,
                                  double packets_per_second) {
    if (payload_bytes <= 0)
        throw std::invalid_argument("payload_bytes must be positive");
    if (!(packets_per_second > 0.0))
        throw std::invalid_argument("packets_per_second must be positive");
    CodecProfile c;
    c.name = name;
    c.payload_bytes = payload_bytes;
    c.packets_per_second = packets_per_second;
    c.one_way_rate_kbps =
        static_cast<double>(payload_bytes + 40) * 8.0 * packets_per_second / 1000.0;
    c.loss_adjusted_rate_kbps = c.one_way_rate_kbps * 0.97;
    return c;
}

/// GSM 6.10 voice: 33-byte payload, 50 packets per second each way.
inline CodecProfile gsm_6_10() { return codec_profile("gsm_6_10", 33, 50.0); }

/// Beacon-interval timing. All values in milliseconds.
struct TimingParams {
    double beacon_interval_ms = 99.5;
    double beacon_ms = 0.5;
    double delay_budget_ms = 30.0;

    void validate() const {
        if (!(beacon_interval_ms > 0.0))
            throw std::invalid_argument("beacon_interval_ms must be positive");
        if (!(beacon_ms >= 0.0))
            throw std::invalid_argument("beacon_ms must be non-negative");
        if (!(delay_budget_ms > 0.0))
            throw std::invalid_argument("delay_budget_ms must be positive");
        if (!(beacon_ms < beacon_interval_ms))
            throw std::invalid_argument("beacon_ms must be below beacon_interval_ms");
    }
};

/// Smallest number of frames per beacon interval that keeps the queueing
/// delay of a frame within the delay budget, never below 1.
inline int min_frames(double beacon_interval_ms, double delay_budget_ms,
                      double beacon_ms) {
    if (!(beacon_interval_ms > 0.0))
        throw std::invalid_argument("beacon_interval_ms must be positive");
    if (delay_budget_ms <= beacon_ms)
        throw infeasible_error("delay budget does not even cover the beacon");
    double ratio = beacon_interval_ms / (delay_budget_ms - beacon_ms);
    int frames = static_cast<int>(std::ceil(ratio - 1e-9));
    return frames < 1 ? 1 : frames;
}

/// Voice packets one slot must carry per beacon-separation window when a
/// cell serves its full single-cell load across n slots and C frames.
/// Both directions count, hence the factor 2.
inline double packets_per_slot(double codec_packets_per_second, int slots,
                               int frames, int single_cell_capacity,
                               double separation_s = 0.1) {
    if (!(codec_packets_per_second > 0.0))
        throw std::invalid_argument("codec_packets_per_second must be positive");
    if (slots < 1) throw std::invalid_argument("slots must be at least 1");
    if (frames < 1) throw std::invalid_argument("frames must be at least 1");
    if (single_cell_capacity < 1)
        throw std::invalid_argument("single_cell_capacity must be at least 1");
    if (!(separation_s > 0.0))
        throw std::invalid_argument("separation_s must be positive");
    return 2.0 * codec_packets_per_second *
           static_cast<double>(single_cell_capacity) * separation_s /
           (static_cast<double>(slots) * static_cast<double>(frames));
}

/// Fraction of a slot left for voice after the per-slot turnaround
/// overhead of one packet-equivalent.
inline double slot_efficiency(double packets) {
    if (packets < 1.0 - 1e-12)
        throw infeasible_error("slot budget is below one packet");
    return (packets - 1.0) / packets;
}

/// Mean admitted sessions per access point for a D x D grid.
inline double per_ap_capacity(double admitted_total, int grid_dim) {
    if (grid_dim < 1) throw std::invalid_argument("grid_dim must be at least 1");
    return admitted_total /
           (static_cast<double>(grid_dim) * static_cast<double>(grid_dim));
}

struct CapacityResult {
    double packets_per_slot = 0.0;
    double efficiency = 0.0;
    int sessions_per_ap = 0;
};

/// Closed-form per-cell capacity under slotted medium sharing: the slot
/// packet budget, the efficiency after turnaround overhead, and the whole
/// number of sessions one access point sustains.
inline CapacityResult cotdma_capacity(const CodecProfile& codec, int slots,
                                      int frames, int single_cell_capacity,
                                      double separation_s = 0.1) {
    CapacityResult r;
    r.packets_per_slot = packets_per_slot(codec.packets_per_second, slots, frames,
                                          single_cell_capacity, separation_s);
    r.efficiency = slot_efficiency(r.packets_per_slot);
    r.sessions_per_ap = static_cast<int>(std::floor(
        static_cast<double>(single_cell_capacity) * r.efficiency + 1e-9));
    return r;
}

inline nlohmann::json to_json(const CodecProfile& c) {
    return {{"name", c.name},
            {"payload_bytes", c.payload_bytes},
            {"packets_per_second", c.packets_per_second},
            {"one_way_rate_kbps", c.one_way_rate_kbps},
            {"loss_adjusted_rate_kbps", c.loss_adjusted_rate_kbps}};
}

inline nlohmann::json capacity_report_json(const CodecProfile& codec, int slots,
                                           int frames, int single_cell_capacity,
                                           const CapacityResult& result,
                                           const TimingParams& timing) {
    int needed = min_frames(timing.beacon_interval_ms, timing.delay_budget_ms,
                            timing.beacon_ms);
    return {{"codec", to_json(codec)},
            {"n", slots},
            {"C", frames},
            {"C_AP_1", single_cell_capacity},
            {"r_delta_t", result.packets_per_slot},
            {"efficiency", result.efficiency},
            {"sessions_per_ap", result.sessions_per_ap},
            {"constraints", {{"min_frames", needed}, {"delay_ok", frames >= needed}}}};
}

} // namespace wlancap
