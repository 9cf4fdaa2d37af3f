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

#include "reflector60/campaign.hpp"

#include <cstring>

using namespace reflector60;
using Catch::Approx;

namespace
{
    CampaignResult offset_copy(const CampaignResult &r, double db)
    {
        CampaignResult out = r;
        for (auto &rec : out.records)
        {
            rec.pl_without += db;
            rec.pl_with += db;
            rec.improvement = loss_difference(rec.pl_without, rec.pl_with);
        }
        return out;
    }

    bool same_bits(double a, double b)
    {
        return std::memcmp(&a, &b, sizeof(double)) == 0;
    }
}

TEST_CASE("Campaign - Tx positions")
{
    auto config = ScenarioConfig::measured_default();
    auto tx = tx_positions(config);
    REQUIRE(tx.size() == 16);
    CHECK(tx.back() == Point2{0.81, 4.75});
    CHECK(tx.front().x == 0.81);
    CHECK(tx.front().y == Approx(1.0).epsilon(1e-15));
    for (std::size_t i = 1; i < tx.size(); ++i)
        CHECK(distance(tx[i], tx[i - 1]) == Approx(0.25).epsilon(1e-13));

    config.tx_count = 30;
    CHECK_THROWS_AS(tx_positions(config), outside_footprint_error);
    CHECK_THROWS_WITH(tx_positions(config), Catch::Matchers::ContainsSubstring("Tx1 "));
}

TEST_CASE("Campaign - Measured scenario")
{
    const auto config = ScenarioConfig::measured_default();
    const auto result = run_campaign(config);
    REQUIRE(result.records.size() == 16);

    SECTION("Records are indexed and consistent")
    {
        for (std::size_t i = 0; i < 16; ++i)
        {
            const auto &r = result.records[i];
            CHECK(r.index == i + 1);
            CHECK(r.improvement == r.pl_without - r.pl_with);
            CHECK(r.los == (i < 6));
            CHECK(r.pl_without <= 108.0);
            CHECK(r.pl_with <= 108.0);
        }
    }

    SECTION("The panel helps at the far end")
    {
        const auto &far = result.records.back();
        CHECK(far.panel_path_present);
        CHECK(far.pl_with < far.pl_without);
    }

    SECTION("Far NLOS positions without the panel sit on the floor")
    {
        for (std::size_t i = 12; i < 16; ++i)
            CHECK(result.records[i].pl_without == 108.0);
    }

    SECTION("NLOS improvement is strictly positive")
    {
        for (std::size_t i = 6; i < 16; ++i)
            CHECK(result.records[i].improvement > 0.0);
    }

    SECTION("Adding the panel never costs more than the ripple bound")
    {
        for (const auto &r : result.records)
            CHECK(r.pl_with <= r.pl_without + 0.5);
    }

    SECTION("Deterministic across runs and thread counts")
    {
        auto single = config;
        single.threads = 1;
        for (const auto &again : {run_campaign(config), run_campaign(single)})
        {
            REQUIRE(again.records.size() == 16);
            for (std::size_t i = 0; i < 16; ++i)
            {
                CHECK(same_bits(again.records[i].pl_with, result.records[i].pl_with));
                CHECK(same_bits(again.records[i].pl_without, result.records[i].pl_without));
                CHECK(again.records[i].paths_with.size() == result.records[i].paths_with.size());
            }
        }
    }
}

TEST_CASE("Campaign - Panel material switched off")
{
    auto config = ScenarioConfig::measured_default();
    config.materials = config.materials.with_amplitude("metal", 0.0);
    auto result = run_campaign(config);
    for (const auto &r : result.records)
    {
        CHECK(r.improvement == 0.0);
        CHECK(same_bits(r.pl_with, r.pl_without));
    }
    auto curve = improvement_curve(result);
    CHECK(curve.max_db == 0.0);
}

TEST_CASE("Campaign - Without a floor")
{
    auto config = ScenarioConfig::measured_default();
    config.noise_floor_db.reset();
    auto result = run_campaign(config);
    bool above = false;
    for (const auto &r : result.records)
        above = above || r.pl_without > 108.0;
    CHECK(above);
}

TEST_CASE("Campaign - Improvement curve")
{
    const auto base = run_campaign(ScenarioConfig::measured_default());

    SECTION("Identical arms give zeros")
    {
        auto same = base;
        for (auto &r : same.records)
        {
            r.pl_with = r.pl_without;
            r.improvement = loss_difference(r.pl_without, r.pl_with);
        }
        auto curve = improvement_curve(same);
        for (const auto &[index, db] : curve.points)
            CHECK(db == 0.0);
        CHECK(curve.argmax_index == 1);
    }

    SECTION("Constant 10 dB gap gives a flat curve")
    {
        auto synthetic = base;
        for (auto &r : synthetic.records)
        {
            r.pl_without = 90.0;
            r.pl_with = 80.0;
            r.improvement = loss_difference(r.pl_without, r.pl_with);
        }
        for (const auto &[index, db] : improvement_curve(synthetic).points)
            CHECK(db == 10.0);
    }

    SECTION("Argmax is invariant under a common offset")
    {
        auto curve = improvement_curve(base);
        for (double db : {-30.0, 3.0, 17.5})
            CHECK(improvement_curve(offset_copy(base, db)).argmax_index == curve.argmax_index);
        CHECK(curve.max_db > 0.0);
    }

    SECTION("Equal infinities give zero")
    {
        const double inf = std::numeric_limits<double>::infinity();
        CHECK(loss_difference(inf, inf) == 0.0);
        CHECK(loss_difference(inf, 80.0) == inf);
    }
}

TEST_CASE("Campaign - Single positions")
{
    const auto config = ScenarioConfig::measured_default();
    const auto placement = panel_placement(config);

    SECTION("With-panel boresight points at the panel center")
    {
        auto r = simulate_position(config, {0.81, 4.75}, true, placement);
        const double angle = std::atan2(-r.rx_boresight.y, -r.rx_boresight.x);
        CHECK(rad2deg(angle) == Approx(12.987).margin(0.005));
        CHECK_FALSE(r.los);
        CHECK(std::isfinite(r.path_loss_db));
    }

    SECTION("Corner aim is available for the no-panel arm")
    {
        auto corner = config;
        corner.rx_aim_without_panel = RxAim::corner;
        auto r = simulate_position(corner, {0.81, 4.75}, false, placement);
        CHECK(r.rx_boresight.x == Approx(-3.69 / std::hypot(3.69, 1.0)).epsilon(1e-14));
        CHECK(r.rx_boresight.y == Approx(-1.0 / std::hypot(3.69, 1.0)).epsilon(1e-14));
        CHECK(rx_aim_from_string("corner") == RxAim::corner);
        CHECK_THROWS_AS(rx_aim_from_string("sky"), std::invalid_argument);
    }

    SECTION("Gain de-embedding shifts the loss by the nominal gains")
    {
        auto raw = config;
        raw.deembed_gains = false;
        raw.noise_floor_db.reset();
        auto cooked = raw;
        cooked.deembed_gains = true;
        auto a = simulate_position(raw, {0.81, 2.0}, true, placement);
        auto b = simulate_position(cooked, {0.81, 2.0}, true, placement);
        CHECK(b.path_loss_db - a.path_loss_db == Approx(24.5).epsilon(1e-12));
    }

    SECTION("Alpha override bypasses the solver")
    {
        auto fixed = config;
        fixed.alpha_override = deg2rad(30.0);
        auto p = panel_placement(fixed);
        CHECK(p.alpha == deg2rad(30.0));
        CHECK(std::abs(p.residual) > 1e-3);
        CHECK(p.panel.endpoint_a.x == Approx(0.595 * std::cos(deg2rad(30.0))).epsilon(1e-14));
    }

    SECTION("Invalid configs")
    {
        auto bad = config;
        bad.rx = {2.0, 3.0};
        CHECK_THROWS_AS(bad.validate(), outside_footprint_error);
        bad = config;
        bad.panel_material = "adamantium";
        CHECK_THROWS_AS(bad.validate(), unknown_material_error);
        bad = config;
        bad.tx_step = 0.0;
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    }
}

TEST_CASE("Campaign - Coverage map")
{
    const auto config = ScenarioConfig::measured_default();
    CoverageRequest req;
    req.nx = 12;
    req.ny = 15;
    auto with = coverage_map(config, req);
    req.with_panel = false;
    auto without = coverage_map(config, req);

    REQUIRE(with.path_loss_db.size() == 12 * 15);
    CHECK(with.xs.front() == 0.0);
    CHECK(with.xs.back() == 3.69);
    CHECK(with.ys.back() == 4.75);

    std::size_t inside = 0;
    for (std::size_t iy = 0; iy < req.ny; ++iy)
        for (std::size_t ix = 0; ix < req.nx; ++ix)
        {
            const auto &cell = with.path_loss_db[iy * req.nx + ix];
            const bool in = config.layout.contains({with.xs[ix], with.ys[iy]});
            CHECK(cell.has_value() == in);
            if (cell && without.path_loss_db[iy * req.nx + ix])
            {
                ++inside;
                CHECK(*cell <= *without.path_loss_db[iy * req.nx + ix] + 0.5);
            }
        }
    CHECK(inside > 20);

    req.nx = 1000;
    req.ny = 1000;
    CHECK_THROWS_AS(coverage_map(config, req), std::invalid_argument);
}
