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

#include "reflector60/api.hpp"

#include "httplib.h"

namespace reflector60::api
{
    namespace
    {
        ScenarioConfig scenario_of(const json &request)
        {
            if (!request.is_object())
                throw config_error("Request body must be a JSON object.");
            return request.contains("scenario") ? config_from_json(request.at("scenario")) : ScenarioConfig::measured_default();
        }

        void allow_only(const json &request, std::initializer_list<const char *> keys)
        {
            for (const auto &[k, v] : request.items())
                if (std::find_if(keys.begin(), keys.end(), [&](const char *a)
                                 { return k == a; }) == keys.end())
                    throw config_error("Unknown request key '" + k + "'.");
        }
    }

    json solve_orientation(const json &request)
    {
        if (!request.is_object())
            throw config_error("Request body must be a JSON object.");
        allow_only(request, {"layout", "panel_width"});
        CorridorLayout layout = request.contains("layout") ? layout_from_json(request.at("layout")) : CorridorLayout::measured_default();
        double width = 0.595;
        if (request.contains("panel_width"))
        {
            if (!request.at("panel_width").is_number())
                throw config_error("'panel_width' must be a number.");
            width = request.at("panel_width").get<double>();
        }
        auto sol = solve_reflector_orientation(layout, width);
        return {{"solution", solution_to_json(sol)}};
    }

    json simulate(const json &request)
    {
        auto config = scenario_of(request);
        allow_only(request, {"scenario", "tx", "tx_index", "with_panel", "pdp"});

        Point2 tx;
        if (request.contains("tx"))
            tx = point_from_json(request.at("tx"));
        else
        {
            const auto positions = tx_positions(config);
            std::size_t k = positions.size();
            if (request.contains("tx_index"))
            {
                const auto &v = request.at("tx_index");
                if (!v.is_number_integer())
                    throw config_error("'tx_index' must be an integer.");
                const auto idx = v.get<long long>();
                if (idx < 1 || static_cast<std::size_t>(idx) > positions.size())
                    throw config_error("'tx_index' out of range 1.." + std::to_string(positions.size()) + ".");
                k = static_cast<std::size_t>(idx);
            }
            tx = positions[k - 1];
        }
        bool with_panel = true;
        if (request.contains("with_panel"))
        {
            if (!request.at("with_panel").is_boolean())
                throw config_error("'with_panel' must be a boolean.");
            with_panel = request.at("with_panel").get<bool>();
        }

        const auto placement = panel_placement(config);
        const auto sim = simulate_position(config, tx, with_panel, placement);
        json out = simulation_to_json(sim, config, placement);
        if (request.contains("pdp"))
        {
            if (!request.at("pdp").is_string())
                throw config_error("'pdp' must name a window.");
            out["pdp"] = pdp_to_json(power_delay_profile(sim.trace, window_from_string(request.at("pdp").get<std::string>())));
        }
        return out;
    }

    json campaign(const json &request)
    {
        auto config = scenario_of(request);
        allow_only(request, {"scenario"});
        return campaign_to_json(run_campaign(config));
    }

    json coverage(const json &request)
    {
        auto config = scenario_of(request);
        allow_only(request, {"scenario", "grid"});
        CoverageRequest grid;
        if (request.contains("grid"))
            grid = coverage_request_from_json(request.at("grid"));
        return coverage_to_json(coverage_map(config, grid), panel_placement(config));
    }

    Response dispatch(const std::string &endpoint, const std::string &body)
    {
        const auto error = [](int status, const std::string &msg)
        {
            return Response{status, json{{"error", msg}}};
        };

        json request;
        try
        {
            request = body.empty() ? json::object() : json::parse(body);
        }
        catch (const json::parse_error &e)
        {
            return error(400, std::string("Invalid JSON: ") + e.what());
        }

        try
        {
            if (endpoint == "/api/solve-orientation")
                return {200, solve_orientation(request)};
            if (endpoint == "/api/simulate")
                return {200, simulate(request)};
            if (endpoint == "/api/campaign")
                return {200, campaign(request)};
            if (endpoint == "/api/coverage")
                return {200, coverage(request)};
            return error(404, "Unknown endpoint '" + endpoint + "'.");
        }
        catch (const ambiguous_root_error &e)
        {
            auto r = error(422, e.what());
            json roots = json::array();
            for (double x : e.roots)
                roots.push_back(rad2deg(x));
            r.body["roots_deg"] = roots;
            return r;
        }
        catch (const no_root_error &e)
        {
            return error(422, e.what());
        }
        catch (const std::invalid_argument &e)
        {
            return error(400, e.what());
        }
        catch (const std::domain_error &e)
        {
            return error(400, e.what());
        }
        catch (const std::out_of_range &e)
        {
            return error(400, e.what());
        }
        catch (const json::exception &e)
        {
            return error(400, e.what());
        }
        catch (const std::exception &e)
        {
            return error(500, e.what());
        }
    }

    void install_routes(httplib::Server &server)
    {
        for (const char *ep : {"/api/solve-orientation", "/api/simulate", "/api/campaign", "/api/coverage"})
        {
            server.Post(ep, [ep](const httplib::Request &req, httplib::Response &res)
                        {
                            auto r = dispatch(ep, req.body);
                            res.status = r.status;
                            res.set_content(r.body.dump(), "application/json"); });
        }
        server.Get("/api/health", [](const httplib::Request &, httplib::Response &res)
                   { res.set_content(R"({"status":"ok"})", "application/json"); });

        // The planner UI may be served from another local origin
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
        server.Options(R"(/api/.*)", [](const httplib::Request &, httplib::Response &res)
                       {
                           res.set_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS");
                           res.set_header("Access-Control-Allow-Headers", "Content-Type");
                           res.status = 204; });
    }

    bool serve(const std::string &host, int port)
    {
        httplib::Server server;
        install_routes(server);
        return server.listen(host, port);
    }
}
