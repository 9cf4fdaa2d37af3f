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

#ifndef REFLECTOR60_RAYTRACE_HPP
#define REFLECTOR60_RAYTRACE_HPP

#include "reflector60/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reflector60
{
    inline constexpr double speed_of_light = 299792458.0; // m/s

    // Reflector identity used in RayPath::reflectors: wall index, or panel_reflector
    inline constexpr int panel_reflector = -1;

    struct Environment
    {
        CorridorLayout layout;
        std::optional<ReflectorPanel> panel;

        // Throws std::invalid_argument if the layout is invalid or the panel leaves the footprint
        void validate() const;
    };

    // Specular path Tx -> bounces -> Rx
    struct RayPath
    {
        std::vector<Point2> vertices;            // first = Tx, last = Rx
        std::vector<int> reflectors;             // one per interior vertex
        std::vector<std::string> bounce_materials;
        double total_length = 0.0;               // meters
        double delay = 0.0;                      // seconds

        std::size_t bounce_count() const { return reflectors.size(); }
        bool uses_panel() const;
        Vec2 departure_direction() const { return vertices[1] - vertices[0]; }
        Vec2 arrival_direction() const { return vertices[vertices.size() - 2] - vertices.back(); } // from Rx toward the source side
    };

    struct TraceOptions
    {
        double endpoint_tolerance = 1e-9; // bounce points closer than this to a segment end are rejected
        double min_leg_length = 1e-9;
    };

    // True iff the straight Tx-Rx segment meets a wall away from its own endpoints.
    // The panel never blocks. Throws outside_footprint_error.
    bool los_blocked(const Point2 &tx, const Point2 &rx, const Environment &env);

    // All specular paths with at most max_order bounces (walls and panel), sorted by delay.
    // max_order must be in [0, 3].
    std::vector<RayPath> enumerate_paths(const Point2 &tx, const Point2 &rx, const Environment &env,
                                         int max_order = 2, const TraceOptions &options = {});

    // Single bounce off the panel front face, if the specular point lands on the panel
    std::optional<RayPath> panel_path(const Point2 &tx, const Point2 &rx, const Environment &env,
                                      const TraceOptions &options = {});

    // Angle between the incoming leg (from -> at) and the reflecting line, in [0, pi/2]
    double grazing_angle(const Point2 &from, const Point2 &at, const Segment &reflector);

    // Segment a reflector id refers to in this environment
    Segment reflector_segment(const Environment &env, int id);
}

#endif
