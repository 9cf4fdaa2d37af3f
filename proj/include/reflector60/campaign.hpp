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

#ifndef REFLECTOR60_CAMPAIGN_HPP
#define REFLECTOR60_CAMPAIGN_HPP

#include "reflector60/channel.hpp"
#include "reflector60/geometry.hpp"
#include "reflector60/propagation.hpp"
#include "reflector60/raytrace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace reflector60
{
    // Where the Rx horn points when the panel is removed
    enum class RxAim
    {
        panel_center, // same boresight as the with-panel arm (toward M)
        corner        // toward the corner O
    };

    std::string to_string(RxAim aim);
    RxAim rx_aim_from_string(const std::string &name);

    // Tx walks along the part B axis x = tx_axis_x; position k (1-based) sits at
    // y = L_T + l_R - (tx_count - k) * tx_step, so the last one is the far end T.
    struct ScenarioConfig
    {
        CorridorLayout layout = CorridorLayout::measured_default();
        double panel_width = 0.595;
        std::size_t tx_count = 16;
        double tx_step = 0.25;
        Point2 rx{3.69, 1.0};
        std::optional<double> tx_axis_x; // defaults to l_T / 2
        AntennaPattern tx_antenna = AntennaPattern::omni(2.0);
        AntennaPattern rx_antenna = AntennaPattern::horn(22.5, 13.0); // boresight set per arm
        SweepGrid sweep;
        std::optional<double> noise_floor_db = 108.0;
        int max_order = 2;
        MaterialRegistry materials = MaterialRegistry::defaults();
        std::string panel_material = "metal";
        std::optional<double> alpha_override; // radians; bypasses the solver
        RxAim rx_aim_without_panel = RxAim::panel_center;
        std::size_t threads = 0; // 0: hardware concurrency

        // Divide the trace by the nominal peak gains, like a de-embedded measurement
        bool deembed_gains = true;

        // Recorded only; the model is planar at antenna height
        double antenna_height = 1.37;
        double panel_length = 0.982;

        static ScenarioConfig measured_default() { return {}; }

        double axis_x() const { return tx_axis_x.value_or(0.5 * layout.tx_corridor_width); }
        void validate() const; // throws std::invalid_argument / outside_footprint_error
    };

    // Positions 1..tx_count; throws outside_footprint_error naming the first bad one
    std::vector<Point2> tx_positions(const ScenarioConfig &config);

    // Solver output, or the fixed alpha_override with beta/gamma derived from it
    AngleSolution panel_placement(const ScenarioConfig &config);

    Environment make_environment(const ScenarioConfig &config, const std::optional<AngleSolution> &placement);

    struct SimulationResult
    {
        Point2 tx;
        Point2 rx;
        bool with_panel = false;
        bool los = false;
        Vec2 rx_boresight;
        std::vector<RayPath> paths;
        ComplexTrace trace; // gains removed when config.deembed_gains
        double path_loss_db = 0.0; // clamped to the floor when configured; +inf if below measurable
    };

    // One Tx position, one arm. placement is required (it fixes the Rx boresight
    // even for the no-panel arm when rx_aim_without_panel == panel_center).
    SimulationResult simulate_position(const ScenarioConfig &config, const Point2 &tx, bool with_panel,
                                       const AngleSolution &placement);

    struct PositionRecord
    {
        std::size_t index = 0; // 1-based
        Point2 tx;
        bool los = false;
        double pl_without = 0.0;
        double pl_with = 0.0;
        double improvement = 0.0; // pl_without - pl_with
        bool panel_path_present = false;
        std::vector<RayPath> paths_without;
        std::vector<RayPath> paths_with;
    };

    struct CampaignResult
    {
        AngleSolution placement;
        std::optional<double> noise_floor_db;
        std::vector<PositionRecord> records;
    };

    // Every position evaluated with and without the panel. Positions run in
    // parallel; records come back in index order.
    CampaignResult run_campaign(const ScenarioConfig &config);

    struct ImprovementCurve
    {
        std::vector<std::pair<std::size_t, double>> points; // (index, dB)
        std::size_t argmax_index = 0;                       // first index reaching the maximum
        double max_db = 0.0;
    };

    ImprovementCurve improvement_curve(const CampaignResult &result);

    // Difference of two losses, with equal infinities giving 0
    double loss_difference(double pl_without, double pl_with);

    struct CoverageRequest
    {
        double x_min = 0.0, x_max = 3.69;
        double y_min = 0.0, y_max = 4.75;
        std::size_t nx = 38, ny = 48;
        bool with_panel = true;
    };

    struct CoverageGrid
    {
        std::vector<double> xs;
        std::vector<double> ys;
        std::vector<std::optional<double>> path_loss_db; // row-major [iy * nx + ix]; empty outside the corridor
        bool with_panel = true;
    };

    CoverageGrid coverage_map(const ScenarioConfig &config, const CoverageRequest &request);
}

#endif
