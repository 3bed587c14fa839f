#include <fstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "wlancap/wlancap.hpp"

using namespace wlancap;

namespace {

nlohmann::json load_schema(const std::string& name) {
    std::ifstream in(std::string(WLANCAP_SCHEMA_DIR) + "/" + name);
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
}

} // namespace

TEST_CASE("codec rates follow payload plus header accounting") {
    const CodecProfile gsm = gsm_6_10();
    CHECK(gsm.name == "gsm_6_10");
    CHECK(gsm.payload_bytes == 33);
    CHECK(gsm.packets_per_second == 50.0);
    CHECK(gsm.one_way_rate_kbps == 29.2);
    CHECK(gsm.loss_adjusted_rate_kbps == Catch::Approx(28.324).epsilon(1e-12));

    const CodecProfile g711 = codec_profile("g711", 160, 50.0);
    CHECK(g711.one_way_rate_kbps == 80.0);
    CHECK(g711.loss_adjusted_rate_kbps == Catch::Approx(77.6).epsilon(1e-12));

    const CodecProfile slow = codec_profile("slow", 10, 25.0);
    CHECK(slow.one_way_rate_kbps == Catch::Approx(10.0).epsilon(1e-12));

    CHECK_THROWS_AS(codec_profile("bad", 0, 50.0), std::invalid_argument);
    CHECK_THROWS_AS(codec_profile("bad", 33, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(codec_profile("bad", 33, -5.0), std::invalid_argument);
}

TEST_CASE("timing validation catches inverted intervals") {
    TimingParams t;
    REQUIRE_NOTHROW(t.validate());
    t.beacon_ms = 99.5;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = TimingParams{};
    t.beacon_interval_ms = 0.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = TimingParams{};
    t.delay_budget_ms = -1.0;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
    t = TimingParams{};
    t.beacon_ms = -0.1;
    CHECK_THROWS_AS(t.validate(), std::invalid_argument);
}

TEST_CASE("frame count grows until the delay budget is met") {
    CHECK(min_frames(99.5, 30.0, 0.5) == 4);
    CHECK(min_frames(99.5, 20.0, 0.5) == 6);
    CHECK(min_frames(99.5, 100.0, 0.5) == 1);
    CHECK(min_frames(50.0, 200.0, 0.5) == 1);

    // 99.5 / 9.95 is exactly 10; rounding noise must not add a frame.
    CHECK(min_frames(99.5, 10.45, 0.5) == 10);

    CHECK_THROWS_AS(min_frames(99.5, 0.5, 0.5), infeasible_error);
    CHECK_THROWS_AS(min_frames(99.5, 0.4, 0.5), infeasible_error);
    CHECK_THROWS_AS(min_frames(0.0, 30.0, 0.5), std::invalid_argument);
}

TEST_CASE("slot packet budget scales with load and splits") {
    CHECK(packets_per_slot(50.0, 3, 4, 12) == 10.0);
    CHECK(packets_per_slot(50.0, 1, 4, 12) == 30.0);
    CHECK(packets_per_slot(50.0, 1, 4, 20) == 50.0);
    CHECK(packets_per_slot(50.0, 3, 4, 60) == 50.0);
    CHECK(packets_per_slot(50.0, 60, 4, 12) == 0.5);
    CHECK(packets_per_slot(50.0, 3, 4, 12, 0.2) == 20.0);

    CHECK_THROWS_AS(packets_per_slot(0.0, 3, 4, 12), std::invalid_argument);
    CHECK_THROWS_AS(packets_per_slot(50.0, 0, 4, 12), std::invalid_argument);
    CHECK_THROWS_AS(packets_per_slot(50.0, 3, 0, 12), std::invalid_argument);
    CHECK_THROWS_AS(packets_per_slot(50.0, 3, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(packets_per_slot(50.0, 3, 4, 12, 0.0), std::invalid_argument);
}

TEST_CASE("slot efficiency accounts for one packet of turnaround") {
    CHECK(slot_efficiency(10.0) == 0.9);
    CHECK(slot_efficiency(50.0) == 0.98);
    CHECK(slot_efficiency(2.0) == 0.5);
    CHECK(slot_efficiency(1.0) == 0.0);
    CHECK_NOTHROW(slot_efficiency(1.0 - 1e-13));
    CHECK_THROWS_AS(slot_efficiency(1.0 - 1e-9), infeasible_error);
    CHECK_THROWS_AS(slot_efficiency(0.5), infeasible_error);
}

TEST_CASE("per-cell session capacity combines budget and efficiency") {
    const CodecProfile gsm = gsm_6_10();

    CapacityResult r = cotdma_capacity(gsm, 3, 4, 12);
    CHECK(r.packets_per_slot == 10.0);
    CHECK(r.efficiency == 0.9);
    CHECK(r.sessions_per_ap == 10);

    r = cotdma_capacity(gsm, 3, 4, 60);
    CHECK(r.packets_per_slot == 50.0);
    CHECK(r.efficiency == 0.98);
    CHECK(r.sessions_per_ap == 58);

    // 12 * (5/6) is exactly 10; the floor must not lose a session.
    r = cotdma_capacity(gsm, 5, 4, 12);
    CHECK(r.packets_per_slot == 6.0);
    CHECK(r.sessions_per_ap == 10);

    CHECK_THROWS_AS(cotdma_capacity(gsm, 60, 4, 12), infeasible_error);
}

TEST_CASE("grid average divides by the number of access points") {
    CHECK(per_ap_capacity(40.8, 5) == Catch::Approx(1.632).epsilon(1e-12));
    CHECK(per_ap_capacity(0.0, 3) == 0.0);
    CHECK(per_ap_capacity(12.0, 1) == 12.0);
    CHECK_THROWS_AS(per_ap_capacity(1.0, 0), std::invalid_argument);
}

TEST_CASE("capacity reports expose the planning inputs and constraints") {
    const CodecProfile gsm = gsm_6_10();
    const TimingParams timing;
    const CapacityResult r = cotdma_capacity(gsm, 3, 4, 12);
    const nlohmann::json j = capacity_report_json(gsm, 3, 4, 12, r, timing);

    CHECK(j.at("codec").at("name") == "gsm_6_10");
    CHECK(j.at("codec").at("one_way_rate_kbps") == 29.2);
    CHECK(j.at("n") == 3);
    CHECK(j.at("C") == 4);
    CHECK(j.at("C_AP_1") == 12);
    CHECK(j.at("r_delta_t") == 10.0);
    CHECK(j.at("efficiency") == 0.9);
    CHECK(j.at("sessions_per_ap") == 10);
    CHECK(j.at("constraints").at("min_frames") == 4);
    CHECK(j.at("constraints").at("delay_ok") == true);

    const nlohmann::json tight =
        capacity_report_json(gsm, 3, 3, 12, cotdma_capacity(gsm, 3, 3, 12), timing);
    CHECK(tight.at("constraints").at("delay_ok") == false);

    CHECK(schema_errors(j, load_schema("capacity_report.schema.json")) ==
          std::vector<std::string>{});
}
