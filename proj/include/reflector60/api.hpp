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

// Local JSON-over-HTTP API used by the planner front end.
//
//   POST /api/solve-orientation  {"layout": {...}?, "panel_width": 0.595?}
//   POST /api/simulate           {"scenario": {...}?, "tx": [x, y] | "tx_index": k, "with_panel": true?, "pdp": "hann"?}
//   POST /api/campaign           {"scenario": {...}?}
//   POST /api/coverage           {"scenario": {...}?, "grid": {...}?}
//   GET  /api/health
//
// Every request is evaluated independently; no state survives between requests.

#ifndef REFLECTOR60_API_HPP
#define REFLECTOR60_API_HPP

#include "reflector60/serialize.hpp"

#include <string>

namespace httplib
{
    class Server;
}

namespace reflector60::api
{
    struct Response
    {
        int status = 200;
        json body;
    };

    json solve_orientation(const json &request);
    json simulate(const json &request);
    json campaign(const json &request);
    json coverage(const json &request);

    // Parses the body, dispatches on the endpoint path and maps exceptions to
    // 400 (bad input), 404 (unknown endpoint), 422 (no/ambiguous root) or 500.
    Response dispatch(const std::string &endpoint, const std::string &body);

    void install_routes(httplib::Server &server);

    // Blocks until the server stops. Returns false if the socket cannot be bound.
    bool serve(const std::string &host, int port);
}

#endif
