#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ite/bounds.hpp"
#include "ite/cell.hpp"

using namespace ite;

TEST_CASE("minimum dissipation of a bit flip") {
    const double ln2 = std::numbers::ln2;
    CHECK(brillouin_min_dissipation(0.5, 300.0).kT == doctest::Approx(ln2).epsilon(1e-15));
    CHECK(brillouin_min_dissipation(0.5, 300.0).joule == doctest::Approx(ln2 * kBoltzmann * 300.0).epsilon(1e-15));
    CHECK(brillouin_min_dissipation(0.25, 300.0).kT == doctest::Approx(2.0 * ln2).epsilon(1e-15));
    CHECK(brillouin_min_dissipation(1e-300, 300.0).kT > 690.0);
    CHECK_THROWS_AS(brillouin_min_dissipation(0.0, 300.0), std::invalid_argument);
    CHECK_THROWS_AS(brillouin_min_dissipation(0.6, 300.0), std::invalid_argument);
    CHECK_THROWS_AS(brillouin_min_dissipation(-0.1, 300.0), std::invalid_argument);
    CHECK_THROWS_AS(brillouin_min_dissipation(0.1, 0.0), std::invalid_argument);

    double previous = INFINITY;
    for (int i = 1; i <= 500; ++i) {
        const double e = brillouin_min_dissipation(i / 1000.0, 300.0).kT;
        CHECK(e < previous);
        previous = e;
    }
}

TEST_CASE("cooling limit for an entropy change") {
    CHECK(anderson_bound(1.0, 300.0).kT == doctest::Approx(-std::numbers::ln2).epsilon(1e-15));
    CHECK(anderson_bound(0.0, 300.0).kT == 0.0);
    CHECK(anderson_bound(0.0, 300.0).joule == 0.0);
    CHECK(anderson_bound(2.0, 300.0).kT == doctest::Approx(-2.0 * std::numbers::ln2).epsilon(1e-15));
    CHECK_THROWS_AS(anderson_bound(-1.0, 300.0), std::invalid_argument);
}

TEST_CASE("joule and kT figures agree") {
    for (const Energy& e : {brillouin_min_dissipation(0.1, 77.0), anderson_bound(3.0, 4.2), energy_from_joule(1e-20, 310.0)}) {
        CHECK(e.joule == doctest::Approx(e.kT * kBoltzmann * e.temperature).epsilon(1e-15));
    }
}

TEST_CASE("ice cube cooling against the latent-heat oracle") {
    IceCubeModel m;
    const auto b = ice_cube_erasure_energy(m);
    const double oracle_J = 0.917 * 10.0 * 333.55;
    CHECK(b.computed_cooling.joule == doctest::Approx(oracle_J).epsilon(1e-14));
    CHECK(b.computed_cooling.kT == doctest::Approx(7.384579039760769e23).epsilon(1e-12));
    CHECK(b.anderson_limit.kT == doctest::Approx(-std::numbers::ln2).epsilon(1e-15));
    CHECK(b.violation_factor == doctest::Approx(b.computed_cooling.kT / std::numbers::ln2).epsilon(1e-15));
    CHECK(b.violation_factor > 1e24);
}

TEST_CASE("ice cube cooling is linear in volume and beats the limit for any real cube") {
    IceCubeModel m;
    m.volume_cm3 = 1.0;
    const double one = ice_cube_erasure_energy(m).computed_cooling.joule;
    for (double v : {1e-21, 1e-9, 0.5, 3.0, 1e3}) {
        m.volume_cm3 = v;
        const auto b = ice_cube_erasure_energy(m);
        CHECK(b.computed_cooling.joule == doctest::Approx(one * v).epsilon(1e-14));
        CHECK(b.violation_factor > 1.0);
    }
    m.volume_cm3 = 0.0;
    CHECK_THROWS_AS(ice_cube_erasure_energy(m), std::invalid_argument);
}

TEST_CASE("sensible heat only increases the cooling") {
    IceCubeModel latent;
    IceCubeModel full = latent;
    full.include_sensible_heat = true;
    const auto a = ice_cube_erasure_energy(latent);
    const auto b = ice_cube_erasure_energy(full);
    CHECK(b.computed_cooling.joule > a.computed_cooling.joule);
    CHECK(b.violation_factor >= a.violation_factor);
    // 9.17 g: 2.1 J/(g K) over 18 K plus 4.18 J/(g K) over 26.85 K.
    CHECK(b.computed_cooling.joule - a.computed_cooling.joule ==
          doctest::Approx(9.17 * (2.1 * 18.0 + 4.18 * 26.85)).epsilon(1e-12));
}

TEST_CASE("no erasure at or below freezing") {
    IceCubeModel m;
    m.ambient_temperature = 273.15;
    CHECK_THROWS_AS(ice_cube_erasure_energy(m), NoErasureError);
    m.ambient_temperature = 250.0;
    CHECK_THROWS_AS(ice_cube_erasure_energy(m), NoErasureError);
}

TEST_CASE("entropy audit of a deterministic protocol") {
    // write 1, store, read, write 0, store, read: every state is known exactly.
    const std::vector<MemoryState> trace{{1.0}, {1.0}, {1.0}, {0.0}, {0.0}, {0.0}};
    for (const auto& e : memory_entropy_audit(trace)) {
        CHECK(e.deterministic);
        CHECK(e.entropy_nats == 0.0);
        CHECK(e.entropy_bits == 0.0);
    }

    const std::vector<MemoryState> erased{{1.0}, {0.5}};
    const auto audit = memory_entropy_audit(erased);
    CHECK(audit[0].entropy_bits == 0.0);
    CHECK_FALSE(audit[1].deterministic);
    CHECK(audit[1].entropy_bits == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(memory_entropy_audit(std::vector<MemoryState>{}).empty());
}
