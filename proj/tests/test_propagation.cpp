// SPDX-License-Identifier: Apache-2.0
//
// reflector60 - 60 GHz corridor coverage planning with a passive metal reflector
// Copyright (C) 2026 The reflector60 authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "reflector60/propagation.hpp"

#include <random>

using namespace reflector60;
using Catch::Approx;

namespace
{
    constexpr double pi = std::numbers::pi;

    RayPath straight(double length)
    {
        RayPath p;
        p.vertices = {{0.0, 0.0}, {length, 0.0}};
        p.total_length = length;
        p.delay = length / speed_of_light;
        return p;
    }

    // Two legs of equal length meeting on y = 0, same total length as straight(length)
    RayPath one_bounce(double length, const std::string &material)
    {
        RayPath p;
        const double half = 0.5 * length;
        const double h = half / std::sqrt(2.0);
        p.vertices = {{0.0, h}, {h, 0.0}, {2.0 * h, h}};
        p.reflectors = {0};
        p.bounce_materials = {material};
        p.total_length = length;
        p.delay = length / speed_of_light;
        return p;
    }
}

TEST_CASE("Propagation - Free-space loss")
{
    SECTION("1 m at 60 GHz")
    {
        // 20 log10(4 pi f / c), closed form with c = 3e8 gives 68.0 dB
        const double closed = 20.0 * std::log10(4.0 * pi * 60e9 / 3e8);
        CHECK(closed == Approx(68.0).margin(0.05));
        CHECK(fspl_db(1.0, 60e9) == Approx(68.0).margin(0.05));
        CHECK(fspl_db(1.0, 60e9) == Approx(20.0 * std::log10(4.0 * pi * 60e9 / 299792458.0)).epsilon(1e-15));
    }

    SECTION("Doubling distance or frequency adds 20 log10 2")
    {
        const double six = 20.0 * std::log10(2.0);
        CHECK(std::abs(fspl_db(2.0, 60e9) - fspl_db(1.0, 60e9) - six) < 1e-9);
        CHECK(std::abs(fspl_db(1.0, 120e9) - fspl_db(1.0, 60e9) - six) < 1e-9);
        CHECK(six == Approx(6.02).margin(0.005));
    }

    SECTION("Strictly increasing")
    {
        double prev = fspl_db(0.01, 60e9);
        for (double d = 0.02; d < 20.0; d += 0.01)
        {
            double now = fspl_db(d, 60e9);
            CHECK(now > prev);
            prev = now;
        }
        CHECK(fspl_db(1.0, 60.001e9) > fspl_db(1.0, 60e9));
    }

    SECTION("Domain errors")
    {
        CHECK_THROWS_AS(fspl_db(0.0, 60e9), std::domain_error);
        CHECK_THROWS_AS(fspl_db(1.0, -1.0), std::domain_error);
    }
}

TEST_CASE("Propagation - Materials")
{
    const auto reg = MaterialRegistry::defaults();
    CHECK(reflection_amplitude(reg, "metal") == 1.0);
    CHECK(reflection_amplitude(reg, "plasterboard") == 0.32);
    CHECK(reflection_amplitude(reg, "glass") == 0.40);
    CHECK(amplitude_to_db(0.32) == Approx(-9.9).margin(0.05));
    CHECK(amplitude_to_db(0.40) == Approx(-7.96).margin(0.05));
    CHECK_THROWS_AS(reflection_amplitude(reg, "unobtainium"), unknown_material_error);

    auto dark = reg.with_amplitude("metal", 0.0);
    CHECK(reflection_amplitude(dark, "metal") == 0.0);
    CHECK(reflection_amplitude(reg, "metal") == 1.0);

    CHECK_THROWS_AS(MaterialRegistry({{"x", "x", 1.5, ""}}), std::invalid_argument);
    CHECK_THROWS_AS(MaterialRegistry({{"x", "x", 0.5, ""}, {"x", "y", 0.4, ""}}), std::invalid_argument);
}

TEST_CASE("Propagation - Antenna patterns")
{
    const auto omni = AntennaPattern::omni(2.0);
    const auto horn = AntennaPattern::horn(22.5, 13.0, {1.0, 0.0});

    SECTION("Reference gains")
    {
        for (double deg = -180.0; deg <= 180.0; deg += 15.0)
            CHECK(antenna_gain_dbi(omni, {std::cos(deg2rad(deg)), std::sin(deg2rad(deg))}) == 2.0);
        CHECK(antenna_gain_dbi(horn, {1.0, 0.0}) == 22.5);
        CHECK(antenna_gain_dbi(horn, {std::cos(deg2rad(6.5)), std::sin(deg2rad(6.5))}) == Approx(19.5).epsilon(1e-12));
    }

    SECTION("Symmetric, bounded, floored")
    {
        for (double deg = 0.0; deg <= 180.0; deg += 0.5)
        {
            Vec2 up{std::cos(deg2rad(deg)), std::sin(deg2rad(deg))};
            Vec2 down{std::cos(deg2rad(deg)), -std::sin(deg2rad(deg))};
            double g = antenna_gain_dbi(horn, up);
            CHECK(g == Approx(antenna_gain_dbi(horn, down)).margin(1e-12));
            CHECK(g <= 22.5);
            CHECK(g >= 22.5 - 20.0);
        }
        CHECK(antenna_gain_dbi(horn, {-1.0, 0.0}) == 2.5);
    }

    SECTION("Boresight follows the pattern, direction length is irrelevant")
    {
        auto tilted = AntennaPattern::horn(22.5, 13.0, {0.0, -3.0});
        CHECK(antenna_gain_dbi(tilted, {0.0, -0.1}) == 22.5);
        CHECK(antenna_gain_dbi(tilted, {1.0, 0.0}) == 2.5);
    }
}

TEST_CASE("Propagation - Path amplitude")
{
    const auto iso = AntennaPattern::isotropic();
    const auto reg = MaterialRegistry::defaults();

    SECTION("1 m direct path at 60 GHz")
    {
        auto a = path_amplitude(straight(1.0), 60e9, iso, iso, reg);
        CHECK(std::abs(a) == Approx(db_to_amplitude(-fspl_db(1.0, 60e9))).epsilon(1e-12));
        CHECK(amplitude_to_db(std::abs(a)) == Approx(-68.0).margin(0.05));
    }

    SECTION("A metal bounce at the same length changes nothing")
    {
        auto a = path_amplitude(straight(3.0), 60e9, iso, iso, reg);
        auto b = path_amplitude(one_bounce(3.0, "metal"), 60e9, iso, iso, reg);
        CHECK(std::abs(b) == Approx(std::abs(a)).epsilon(1e-14));
    }

    SECTION("Lossy bounces strictly reduce the magnitude")
    {
        auto a = path_amplitude(straight(3.0), 60e9, iso, iso, reg);
        auto b = path_amplitude(one_bounce(3.0, "plasterboard"), 60e9, iso, iso, reg);
        CHECK(std::abs(b) < std::abs(a));
        CHECK(std::abs(b) == Approx(0.32 * std::abs(a)).epsilon(1e-13));
    }

    SECTION("Phase is -2 pi f tau")
    {
        auto p = straight(2.5);
        for (double f : {59e9, 60e9, 61e9})
        {
            auto a = path_amplitude(p, f, iso, iso, reg);
            double expected = std::remainder(-2.0 * pi * f * p.delay, 2.0 * pi);
            double diff = std::remainder(std::arg(a) - expected, 2.0 * pi);
            CHECK(std::abs(diff) < 1e-9);
        }
    }

    SECTION("Gains compose additively in dB")
    {
        auto omni = AntennaPattern::omni(2.0);
        auto horn = AntennaPattern::horn(22.5, 13.0, {-1.0, 0.0}); // Rx at the far end looks back
        auto base = path_amplitude(straight(4.0), 60e9, iso, iso, reg);
        auto full = path_amplitude(straight(4.0), 60e9, omni, horn, reg);
        CHECK(amplitude_to_db(std::abs(full)) - amplitude_to_db(std::abs(base)) == Approx(24.5).epsilon(1e-12));
    }

    SECTION("dB <-> linear round trip")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(-200.0, 60.0);
        for (int i = 0; i < 1000; ++i)
        {
            double db = u(rng);
            CHECK(amplitude_to_db(db_to_amplitude(db)) == Approx(db).epsilon(1e-12).margin(1e-12));
            CHECK(power_to_db(db_to_power(db)) == Approx(db).epsilon(1e-12).margin(1e-12));
        }
    }
}
