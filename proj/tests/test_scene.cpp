#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vlcpos/scene.hpp"

using namespace vlcpos;

TEST_CASE("defaults reproduce the reference room")
{
    const Scene s = default_scene();
    CHECK(s.room.room_length == 6.0);
    CHECK(s.room.room_width == 6.0);
    CHECK(s.room.room_height == 3.5);
    CHECK(s.room.rho_wall == 0.66);
    CHECK(s.room.rho_ceiling == 0.35);
    CHECK(s.room.rho_floor == 0.60);
    REQUIRE(s.transmitters.size() == 4);
    const double xy[4][2] = {{2, 2}, {2, 4}, {4, 2}, {4, 4}};
    for (int k = 0; k < 4; ++k) {
        CHECK(s.transmitters[k].id == k + 1);
        CHECK(s.transmitters[k].position.x == xy[k][0]);
        CHECK(s.transmitters[k].position.y == xy[k][1]);
        CHECK(s.transmitters[k].position.z == 3.3);
        CHECK(s.transmitters[k].power_high == 5.0);
        CHECK(s.transmitters[k].power_low == 3.0);
    }
    CHECK(s.receiver.position.z == 1.2);
    CHECK(s.receiver.area == 1e-4);
    CHECK(s.receiver.fov_deg == 70.0);
    CHECK_NOTHROW(s.validate());
}

TEST_CASE("link geometry directly beneath the LED")
{
    TransmitterSpec tx;
    ReceiverSpec rx;
    rx.position = {2.0, 2.0, 1.2};
    const auto g = link_geometry(tx, rx);
    CHECK(g.distance == doctest::Approx(2.1).epsilon(1e-12));
    CHECK(g.cos_incidence == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.cos_irradiance == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("link geometry at 45 degrees")
{
    TransmitterSpec tx;
    ReceiverSpec rx;
    rx.position = {4.1, 2.0, 1.2};
    const auto g = link_geometry(tx, rx);
    CHECK(g.distance == doctest::Approx(std::sqrt(2.1 * 2.1 * 2)).epsilon(1e-12));
    CHECK(g.distance == doctest::Approx(2.9698).epsilon(1e-4));
    CHECK(g.cos_incidence == doctest::Approx(2.1 / g.distance).epsilon(1e-12));
    CHECK(g.cos_incidence == doctest::Approx(0.7071).epsilon(1e-4));
}

TEST_CASE("coincident endpoints are rejected")
{
    TransmitterSpec tx;
    ReceiverSpec rx;
    rx.position = tx.position;
    CHECK_THROWS_WITH(link_geometry(tx, rx), doctest::Contains("coincident endpoints"));
}

TEST_CASE("property: cosines equal (H-h)/d everywhere in the room")
{
    oracle::Gen gen(11);
    const Scene s = default_scene();
    for (int i = 0; i < 2000; ++i) {
        const auto rx = s.receiver.at(gen.uniform(0, 6), gen.uniform(0, 6));
        for (const auto& tx : s.transmitters) {
            const auto g = link_geometry(tx, rx);
            const double c = (tx.position.z - rx.position.z) / g.distance;
            REQUIRE(c > 0.0);
            REQUIRE(c <= 1.0);
            REQUIRE(g.cos_incidence == doctest::Approx(c).epsilon(1e-14));
            REQUIRE(g.cos_irradiance == doctest::Approx(c).epsilon(1e-14));
        }
    }
}

TEST_CASE("validation rejects out-of-range parameters")
{
    auto bad = [](auto mutate) {
        Scene s = default_scene();
        mutate(s);
        return s;
    };
    CHECK_THROWS(bad([](Scene& s) { s.room.room_length = 0.0; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.room.rho_wall = 1.2; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.room.rho_floor = -0.1; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.transmitters[0].lambertian_order = 0.5; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.transmitters[0].power_low = 6.0; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.receiver.fov_deg = 95.0; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.receiver.area = 0.0; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.receiver.refractive_index = 0.9; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.schedule.order = {1, 2, 3}; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.schedule.order = {1, 2, 2, 4}; }).validate());
    CHECK_THROWS(bad([](Scene& s) { s.schedule.frames_per_slot = 0; }).validate());
    CHECK_THROWS_WITH(bad([](Scene& s) { s.room.surface_element_size = 7.0; }).validate(),
                      doctest::Contains("larger than room dimension"));
}

TEST_CASE("transmitter lookup by id")
{
    const Scene s = default_scene();
    CHECK(s.transmitter(3).position.x == 4.0);
    CHECK(s.find_transmitter(9) == nullptr);
    CHECK_THROWS(s.transmitter(9));
}
