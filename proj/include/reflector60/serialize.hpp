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

// JSON documents exchanged by the CLI and the HTTP API. Angles are degrees,
// lengths meters, frequencies Hz. See docs/formats.md.

#ifndef REFLECTOR60_SERIALIZE_HPP
#define REFLECTOR60_SERIALIZE_HPP

#include "reflector60/campaign.hpp"

#include "json.hpp"

#include <iosfwd>
#include <stdexcept>

namespace reflector60
{
    using json = nlohmann::json;

    inline constexpr int config_schema_version = 1;

    class config_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    json point_to_json(const Point2 &p);
    Point2 point_from_json(const json &j);

    // Keys L_T, L_R, l_T, l_R; optional wall_material, wall_materials, walls
    CorridorLayout layout_from_json(const json &j);
    json layout_to_json(const CorridorLayout &layout);

    MaterialRegistry materials_from_json(const json &j); // merged over the defaults
    json materials_to_json(const MaterialRegistry &registry);

    AntennaPattern antenna_from_json(const json &j);
    json antenna_to_json(const AntennaPattern &pattern);

    SweepGrid sweep_from_json(const json &j);
    json sweep_to_json(const SweepGrid &grid);

    // Missing keys keep the measured defaults; unknown keys are rejected
    ScenarioConfig config_from_json(const json &j);
    json config_to_json(const ScenarioConfig &config);

    json solution_to_json(const AngleSolution &solution);
    json path_to_json(const RayPath &path);
    json path_to_json(const RayPath &path, const ScenarioConfig &config, const Vec2 &rx_boresight);
    json simulation_to_json(const SimulationResult &sim, const ScenarioConfig &config, const AngleSolution &placement);
    json campaign_to_json(const CampaignResult &result);
    json improvement_to_json(const ImprovementCurve &curve);
    json coverage_to_json(const CoverageGrid &grid, const AngleSolution &placement);
    CoverageRequest coverage_request_from_json(const json &j);
    json pdp_to_json(const PowerDelayProfile &pdp);

    // Finite doubles as numbers, infinities as null
    json number_or_null(double v);

    // index,tx_x_m,tx_y_m,los,pl_without_db,pl_with_db,improvement_db,paths_without,paths_with,panel_path
    void write_campaign_csv(const CampaignResult &result, std::ostream &out);

    // Two columns "index pl_db" for one arm
    void write_campaign_series(const CampaignResult &result, bool with_panel, std::ostream &out);

    json read_json_file(const std::string &path);
}

#endif
