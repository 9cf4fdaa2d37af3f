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

#include "reflector60/campaign.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

namespace reflector60
{
    std::string to_string(RxAim aim)
    {
        return aim == RxAim::corner ? "corner" : "panel_center";
    }

    RxAim rx_aim_from_string(const std::string &name)
    {
        if (name == "panel_center")
            return RxAim::panel_center;
        if (name == "corner")
            return RxAim::corner;
        throw std::invalid_argument("Unknown Rx aim '" + name + "' (expected panel_center or corner).");
    }

    void ScenarioConfig::validate() const
    {
        layout.validate();
        for (const auto &w : layout.walls)
            materials.at(w.material);
        materials.at(panel_material);
        if (!(panel_width > 0.0) || !std::isfinite(panel_width))
            throw std::invalid_argument("Panel width must be positive.");
        if (tx_count < 1)
            throw std::invalid_argument("tx_count must be at least 1.");
        if (!(tx_step > 0.0) || !std::isfinite(tx_step))
            throw std::invalid_argument("tx_step must be positive.");
        if (max_order < 0 || max_order > 3)
            throw std::invalid_argument("max_order must be between 0 and 3.");
        if (noise_floor_db && !std::isfinite(*noise_floor_db))
            throw std::invalid_argument("Noise floor must be finite.");
        if (alpha_override && !(*alpha_override > 0.0 && *alpha_override < 0.5 * std::numbers::pi))
            throw std::invalid_argument("Alpha override must lie strictly between 0 and 90 degrees.");
        tx_antenna.validate();
        rx_antenna.validate();
        sweep.validate();
        if (!layout.contains(rx))
            throw outside_footprint_error("Rx is outside the corridor footprint.");
    }

    std::vector<Point2> tx_positions(const ScenarioConfig &config)
    {
        if (config.tx_count < 1 || !(config.tx_step > 0.0))
            throw std::invalid_argument("tx_count must be >= 1 and tx_step > 0.");

        const double x = config.axis_x();
        const double far_y = config.layout.total_tx_extent();
        std::vector<Point2> out;
        out.reserve(config.tx_count);
        for (std::size_t k = 1; k <= config.tx_count; ++k)
        {
            Point2 p{x, far_y - static_cast<double>(config.tx_count - k) * config.tx_step};
            if (!config.layout.contains(p))
            {
                std::ostringstream msg;
                msg << "Tx" << k << " (" << p.x << ", " << p.y << ") is outside the corridor footprint.";
                throw outside_footprint_error(msg.str());
            }
            out.push_back(p);
        }
        return out;
    }

    AngleSolution panel_placement(const ScenarioConfig &config)
    {
        if (!config.alpha_override)
            return solve_reflector_orientation(config.layout, config.panel_width);

        AngleSolution s;
        s.alpha = *config.alpha_override;
        s.beta = beta_from_alpha(s.alpha, config.layout, config.panel_width);
        s.gamma = gamma_from_alpha(s.alpha, config.layout, config.panel_width);
        s.residual = orientation_residual(s.alpha, config.layout, config.panel_width);
        s.panel = panel_from_alpha(s.alpha, config.panel_width);
        return s;
    }

    Environment make_environment(const ScenarioConfig &config, const std::optional<AngleSolution> &placement)
    {
        Environment env;
        env.layout = config.layout;
        if (placement)
        {
            env.panel = placement->panel;
            env.panel->material = config.panel_material;
        }
        env.validate();
        return env;
    }

    SimulationResult simulate_position(const ScenarioConfig &config, const Point2 &tx, bool with_panel,
                                       const AngleSolution &placement)
    {
        SimulationResult r;
        r.tx = tx;
        r.rx = config.rx;
        r.with_panel = with_panel;

        const auto env = make_environment(config, with_panel ? std::optional<AngleSolution>(placement) : std::nullopt);
        r.los = !los_blocked(tx, config.rx, env);

        const Point2 aim = (with_panel || config.rx_aim_without_panel == RxAim::panel_center)
                               ? placement.panel.center
                               : Point2{0.0, 0.0};
        r.rx_boresight = (aim - config.rx).normalized();

        AntennaPattern rx_pattern = config.rx_antenna;
        rx_pattern.boresight = r.rx_boresight;

        r.paths = enumerate_paths(tx, config.rx, env, config.max_order);
        r.trace = synthesize_frequency_response(r.paths, config.sweep, config.tx_antenna, rx_pattern, config.materials);
        if (config.deembed_gains)
        {
            const double k = db_to_amplitude(-(config.tx_antenna.peak_gain_dbi + rx_pattern.peak_gain_dbi));
            for (auto &v : r.trace.values)
                v *= k;
        }
        r.path_loss_db = path_loss_db(r.trace, config.noise_floor_db);
        return r;
    }

    double loss_difference(double pl_without, double pl_with)
    {
        if (pl_without == pl_with)
            return 0.0;
        return pl_without - pl_with;
    }

    CampaignResult run_campaign(const ScenarioConfig &config)
    {
        config.validate();
        const auto positions = tx_positions(config);

        CampaignResult result;
        result.placement = panel_placement(config);
        result.noise_floor_db = config.noise_floor_db;

        const auto evaluate = [&](std::size_t i)
        {
            try
            {
                PositionRecord rec;
                rec.index = i + 1;
                rec.tx = positions[i];
                auto without = simulate_position(config, rec.tx, false, result.placement);
                auto with = simulate_position(config, rec.tx, true, result.placement);
                rec.los = without.los;
                rec.pl_without = without.path_loss_db;
                rec.pl_with = with.path_loss_db;
                rec.improvement = loss_difference(rec.pl_without, rec.pl_with);
                rec.panel_path_present = std::any_of(with.paths.begin(), with.paths.end(), [](const RayPath &p)
                                                     { return p.bounce_count() == 1 && p.uses_panel(); });
                rec.paths_without = std::move(without.paths);
                rec.paths_with = std::move(with.paths);
                return rec;
            }
            catch (const std::exception &e)
            {
                throw std::runtime_error("Tx" + std::to_string(i + 1) + ": " + e.what());
            }
        };

        std::size_t workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
        workers = std::min(workers, positions.size());

        result.records.resize(positions.size());
        std::vector<std::future<void>> jobs;
        for (std::size_t w = 0; w < workers; ++w)
            jobs.push_back(std::async(std::launch::async, [&, w]
                                      {
                                          for (std::size_t i = w; i < positions.size(); i += workers)
                                              result.records[i] = evaluate(i); }));
        for (auto &j : jobs)
            j.get();
        return result;
    }

    ImprovementCurve improvement_curve(const CampaignResult &result)
    {
        ImprovementCurve curve;
        bool first = true;
        for (const auto &rec : result.records)
        {
            curve.points.emplace_back(rec.index, rec.improvement);
            if (std::isnan(rec.improvement))
                continue;
            if (first || rec.improvement > curve.max_db)
            {
                curve.max_db = rec.improvement;
                curve.argmax_index = rec.index;
                first = false;
            }
        }
        return curve;
    }

    CoverageGrid coverage_map(const ScenarioConfig &config, const CoverageRequest &req)
    {
        config.validate();
        if (req.nx < 1 || req.ny < 1 || req.nx * req.ny > 250000)
            throw std::invalid_argument("Coverage grid must have between 1 and 250000 points.");
        if (!(req.x_max >= req.x_min) || !(req.y_max >= req.y_min))
            throw std::invalid_argument("Coverage bounds must satisfy min <= max.");

        const auto placement = panel_placement(config);
        CoverageGrid grid;
        grid.with_panel = req.with_panel;
        const auto axis = [](double lo, double hi, std::size_t n)
        {
            std::vector<double> v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
            if (n > 1)
                v[n - 1] = hi;
            return v;
        };
        grid.xs = axis(req.x_min, req.x_max, req.nx);
        grid.ys = axis(req.y_min, req.y_max, req.ny);
        grid.path_loss_db.resize(req.nx * req.ny);

        for (std::size_t iy = 0; iy < req.ny; ++iy)
            for (std::size_t ix = 0; ix < req.nx; ++ix)
            {
                const Point2 tx{grid.xs[ix], grid.ys[iy]};
                if (!config.layout.contains(tx) || distance(tx, config.rx) < 1e-6)
                    continue;
                grid.path_loss_db[iy * req.nx + ix] = simulate_position(config, tx, req.with_panel, placement).path_loss_db;
            }
        return grid;
    }
}
