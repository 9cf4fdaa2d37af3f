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

#include "reflector60/api.hpp"

#include "httplib.h"

#include <thread>

using namespace reflector60;
using Catch::Approx;

TEST_CASE("API - Dispatch")
{
    SECTION("Solve with defaults")
    {
        auto r = api::dispatch("/api/solve-orientation", "");
        REQUIRE(r.status == 200);
        CHECK(r.body.at("solution").at("alpha_deg").get<double>() == Approx(42.198).margin(0.005));
        CHECK(r.body.at("solution").at("beta_deg").get<double>() == Approx(12.987).margin(0.005));
    }

    SECTION("Solve errors map to 422")
    {
        auto none = api::dispatch("/api/solve-orientation",
                                  R"({"layout": {"L_T": 1.0, "L_R": 3.69, "l_T": 3.5, "l_R": 0.01}, "panel_width": 2.0})");
        CHECK(none.status == 422);
        auto two = api::dispatch("/api/solve-orientation",
                                 R"({"layout": {"L_T": 1.0, "L_R": 2.0, "l_T": 1.2, "l_R": 1.6}, "panel_width": 3.5})");
        CHECK(two.status == 422);
        CHECK(two.body.at("roots_deg").size() == 2);
    }

    SECTION("Bad input maps to 400, unknown endpoint to 404")
    {
        CHECK(api::dispatch("/api/solve-orientation", "{not json").status == 400);
        CHECK(api::dispatch("/api/solve-orientation", R"({"panel_width": -1})").status == 400);
        CHECK(api::dispatch("/api/simulate", R"({"tx": [2.0, 3.0]})").status == 400);
        CHECK(api::dispatch("/api/simulate", R"({"tx_index": 17})").status == 400);
        CHECK(api::dispatch("/api/simulate", R"({"speed": 1})").status == 400);
        CHECK(api::dispatch("/api/simulate", R"({"pdp": "kaiser"})").status == 400);
        CHECK(api::dispatch("/api/campaign", R"({"scenario": {"schema": 7}})").status == 400);
        CHECK(api::dispatch("/api/campaign", "[]").status == 400);
        CHECK(api::dispatch("/api/teleport", "{}").status == 404);
        CHECK(api::dispatch("/api/simulate", "{not json").body.contains("error"));
    }

    SECTION("Simulate the far position")
    {
        auto r = api::dispatch("/api/simulate", R"({"tx_index": 16, "pdp": "hann"})");
        REQUIRE(r.status == 200);
        CHECK(r.body.at("with_panel") == true);
        CHECK(r.body.at("los") == false);
        CHECK(r.body.at("solution").at("alpha_deg").get<double>() == Approx(42.198).margin(0.005));
        CHECK(r.body.at("path_loss_db").is_number());
        CHECK(r.body.at("pdp").at("delays_s").size() == 401);
        bool panel = false;
        for (const auto &p : r.body.at("paths"))
            panel = panel || (p.at("reflectors").size() == 1 && p.at("reflectors")[0] == panel_reflector);
        CHECK(panel);
    }

    SECTION("Simulate matches the campaign")
    {
        auto camp = api::dispatch("/api/campaign", "{}");
        REQUIRE(camp.status == 200);
        for (int k : {1, 7, 16})
        {
            auto with = api::dispatch("/api/simulate", R"({"tx_index": )" + std::to_string(k) + "}");
            auto without = api::dispatch("/api/simulate", R"({"with_panel": false, "tx_index": )" + std::to_string(k) + "}");
            const auto &pos = camp.body.at("positions")[k - 1];
            CHECK(with.body.at("path_loss_db") == pos.at("pl_with_db"));
            CHECK(without.body.at("path_loss_db") == pos.at("pl_without_db"));
        }
    }

    SECTION("Free Tx point")
    {
        auto r = api::dispatch("/api/simulate", R"({"tx": {"x": 0.5, "y": 3.3}, "with_panel": false})");
        REQUIRE(r.status == 200);
        CHECK(r.body.at("tx")[0] == 0.5);
        CHECK(r.body.at("with_panel") == false);
    }

    SECTION("Coverage grid")
    {
        auto r = api::dispatch("/api/coverage", R"({"grid": {"nx": 4, "ny": 5}})");
        REQUIRE(r.status == 200);
        CHECK(r.body.at("xs").size() == 4);
        CHECK(r.body.at("ys").size() == 5);
        CHECK(r.body.at("path_loss_db").size() == 20);
        CHECK(r.body.contains("solution"));
    }
}

TEST_CASE("API - HTTP server on loopback")
{
    httplib::Server server;
    api::install_routes(server);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    client.set_read_timeout(60, 0);

    auto health = client.Get("/api/health");
    REQUIRE(health);
    CHECK(health->status == 200);

    auto solve = client.Post("/api/solve-orientation", R"({"panel_width": 0.595})", "application/json");
    REQUIRE(solve);
    CHECK(solve->status == 200);
    CHECK(solve->get_header_value("Access-Control-Allow-Origin") == "*");
    auto body = json::parse(solve->body);
    CHECK(body.at("solution").at("x_A").get<double>() == Approx(0.4408).margin(5e-4));

    auto bad = client.Post("/api/simulate", R"({"tx": [9, 9]})", "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);

    auto camp = client.Post("/api/campaign", "{}", "application/json");
    REQUIRE(camp);
    CHECK(camp->status == 200);
    CHECK(json::parse(camp->body).at("positions").size() == 16);

    server.stop();
    worker.join();
}
