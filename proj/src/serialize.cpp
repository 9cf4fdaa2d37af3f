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

#include "reflector60/serialize.hpp"
#include "reflector60/calibration.hpp"

#include <fstream>
#include <ostream>
#include <set>

namespace reflector60
{
    namespace
    {
        double number(const json &j, const char *key)
        {
            if (!j.contains(key))
                throw config_error(std::string("Missing key '") + key + "'.");
            const auto &v = j.at(key);
            if (!v.is_number())
                throw config_error(std::string("Key '") + key + "' must be a number.");
            double d = v.get<double>();
            if (!std::isfinite(d))
                throw config_error(std::string("Key '") + key + "' must be finite.");
            return d;
        }

        double number_or(const json &j, const char *key, double fallback)
        {
            return j.contains(key) ? number(j, key) : fallback;
        }

        std::size_t count(const json &j, const char *key)
        {
            const auto &v = j.at(key);
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw config_error(std::string("Key '") + key + "' must be a non-negative integer.");
            return v.get<std::size_t>();
        }

        std::string text(const json &j, const char *key)
        {
            const auto &v = j.at(key);
            if (!v.is_string())
                throw config_error(std::string("Key '") + key + "' must be a string.");
            return v.get<std::string>();
        }

        void reject_unknown(const json &j, std::initializer_list<const char *> allowed, const char *where)
        {
            if (!j.is_object())
                throw config_error(std::string(where) + " must be a JSON object.");
            std::set<std::string> ok(allowed.begin(), allowed.end());
            for (const auto &[k, v] : j.items())
                if (!ok.count(k))
                    throw config_error(std::string("Unknown key '") + k + "' in " + where + ".");
        }

        Vec2 direction_from_deg(double deg)
        {
            return {std::cos(deg2rad(deg)), std::sin(deg2rad(deg))};
        }

        double direction_to_deg(const Vec2 &v)
        {
            return rad2deg(std::atan2(v.y, v.x));
        }
    }

    json number_or_null(double v)
    {
        return std::isfinite(v) ? json(v) : json(nullptr);
    }

    json point_to_json(const Point2 &p)
    {
        return json::array({p.x, p.y});
    }

    Point2 point_from_json(const json &j)
    {
        if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
            return {j[0].get<double>(), j[1].get<double>()};
        if (j.is_object() && j.contains("x") && j.contains("y"))
            return {number(j, "x"), number(j, "y")};
        throw config_error("A point must be [x, y] or {\"x\": .., \"y\": ..}.");
    }

    // ----- Layout ----------------------------------------------------------

    CorridorLayout layout_from_json(const json &j)
    {
        reject_unknown(j, {"L_T", "L_R", "l_T", "l_R", "wall_material", "wall_materials", "walls"}, "layout");

        CorridorLayout layout;
        try
        {
            layout = CorridorLayout::from_dimensions(number(j, "L_T"), number(j, "L_R"), number(j, "l_T"), number(j, "l_R"));
        }
        catch (const config_error &)
        {
            throw;
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }

        // Generated walls: plasterboard, glazed part B inner side, unless overridden
        const std::string base = j.contains("wall_material") ? text(j, "wall_material") : "plasterboard";
        for (auto &w : layout.walls)
            w.material = (w.name == wall_inner_b && !j.contains("wall_material")) ? "glass" : base;

        if (j.contains("wall_materials"))
        {
            const auto &wm = j.at("wall_materials");
            if (!wm.is_object())
                throw config_error("'wall_materials' must map wall names to material ids.");
            for (const auto &[name, mat] : wm.items())
            {
                auto it = std::find_if(layout.walls.begin(), layout.walls.end(), [&](const WallSegment &w)
                                       { return w.name == name; });
                if (it == layout.walls.end())
                    throw config_error("Unknown wall name '" + name + "' in wall_materials.");
                if (!mat.is_string())
                    throw config_error("Material for wall '" + name + "' must be a string.");
                it->material = mat.get<std::string>();
            }
        }

        if (j.contains("walls"))
        {
            const auto &walls = j.at("walls");
            if (!walls.is_array() || walls.empty())
                throw config_error("'walls' must be a non-empty array.");
            layout.walls.clear();
            for (std::size_t i = 0; i < walls.size(); ++i)
            {
                const auto &w = walls[i];
                reject_unknown(w, {"name", "a", "b", "material"}, "wall");
                if (!w.contains("a") || !w.contains("b"))
                    throw config_error("Each wall needs endpoints 'a' and 'b'.");
                WallSegment seg;
                seg.a = point_from_json(w.at("a"));
                seg.b = point_from_json(w.at("b"));
                seg.material = w.contains("material") ? text(w, "material") : base;
                seg.name = w.contains("name") ? text(w, "name") : "wall" + std::to_string(i);
                layout.walls.push_back(seg);
            }
        }

        try
        {
            layout.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }
        return layout;
    }

    json layout_to_json(const CorridorLayout &layout)
    {
        json walls = json::array();
        for (const auto &w : layout.walls)
            walls.push_back({{"name", w.name}, {"a", point_to_json(w.a)}, {"b", point_to_json(w.b)}, {"material", w.material}});
        return {
            {"L_T", layout.tx_corridor_length},
            {"L_R", layout.rx_corridor_length},
            {"l_T", layout.tx_corridor_width},
            {"l_R", layout.rx_corridor_width},
            {"walls", walls},
        };
    }

    // ----- Materials, antennas, sweep --------------------------------------

    MaterialRegistry materials_from_json(const json &j)
    {
        if (!j.is_array())
            throw config_error("'materials' must be an array.");
        auto list = MaterialRegistry::defaults().materials();
        for (const auto &m : j)
        {
            reject_unknown(m, {"id", "name", "reflection_amplitude", "source"}, "material");
            Material mat;
            mat.id = text(m, "id");
            mat.name = m.contains("name") ? text(m, "name") : mat.id;
            mat.reflection_amplitude = number(m, "reflection_amplitude");
            mat.source = m.contains("source") ? text(m, "source") : "user";
            auto it = std::find_if(list.begin(), list.end(), [&](const Material &x)
                                   { return x.id == mat.id; });
            if (it != list.end())
                *it = mat;
            else
                list.push_back(mat);
        }
        try
        {
            return MaterialRegistry(list);
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }
    }

    json materials_to_json(const MaterialRegistry &registry)
    {
        json out = json::array();
        for (const auto &m : registry.materials())
            out.push_back({{"id", m.id}, {"name", m.name}, {"reflection_amplitude", m.reflection_amplitude}, {"source", m.source}});
        return out;
    }

    AntennaPattern antenna_from_json(const json &j)
    {
        reject_unknown(j, {"kind", "gain_dbi", "hpbw_deg", "boresight_deg", "backlobe_db"}, "antenna");
        const std::string kind = text(j, "kind");
        AntennaPattern p;
        if (kind == "omni")
            p = AntennaPattern::omni(number_or(j, "gain_dbi", 2.0));
        else if (kind == "horn")
            p = AntennaPattern::horn(number_or(j, "gain_dbi", 22.5), number_or(j, "hpbw_deg", 13.0));
        else
            throw config_error("Antenna kind must be 'omni' or 'horn'.");
        if (j.contains("boresight_deg"))
            p.boresight = direction_from_deg(number(j, "boresight_deg"));
        p.backlobe_db = number_or(j, "backlobe_db", p.backlobe_db);
        try
        {
            p.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }
        return p;
    }

    json antenna_to_json(const AntennaPattern &p)
    {
        json j{{"kind", p.kind == AntennaKind::horn ? "horn" : "omni"}, {"gain_dbi", p.peak_gain_dbi}};
        if (p.kind == AntennaKind::horn)
        {
            j["hpbw_deg"] = p.azimuth_hpbw_deg;
            j["backlobe_db"] = p.backlobe_db;
        }
        return j;
    }

    SweepGrid sweep_from_json(const json &j)
    {
        reject_unknown(j, {"center_hz", "bandwidth_hz", "n_points"}, "sweep");
        SweepGrid g;
        g.center_hz = number_or(j, "center_hz", g.center_hz);
        g.bandwidth_hz = number_or(j, "bandwidth_hz", g.bandwidth_hz);
        if (j.contains("n_points"))
            g.n_points = count(j, "n_points");
        try
        {
            g.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }
        return g;
    }

    json sweep_to_json(const SweepGrid &g)
    {
        return {{"center_hz", g.center_hz}, {"bandwidth_hz", g.bandwidth_hz}, {"n_points", g.n_points}, {"step_hz", g.step()}};
    }

    // ----- Scenario --------------------------------------------------------

    ScenarioConfig config_from_json(const json &j)
    {
        reject_unknown(j, {"schema", "layout", "panel_width", "panel_length", "panel_material", "alpha_deg",
                           "tx_count", "tx_step", "tx_axis_x", "rx", "tx_antenna", "rx_antenna",
                           "rx_aim_without_panel", "sweep", "noise_floor_db", "max_order", "antenna_height",
                           "materials", "threads", "deembed_gains"},
                       "scenario");
        if (j.contains("schema") && (!j.at("schema").is_number_integer() || j.at("schema").get<int>() != config_schema_version))
            throw config_error("Unsupported scenario schema (expected " + std::to_string(config_schema_version) + ").");

        ScenarioConfig c;
        if (j.contains("layout"))
        {
            c.layout = layout_from_json(j.at("layout"));
            c.rx = {c.layout.rx_corridor_length, 0.5 * c.layout.rx_corridor_width};
        }
        c.panel_width = number_or(j, "panel_width", c.panel_width);
        c.panel_length = number_or(j, "panel_length", c.panel_length);
        if (j.contains("panel_material"))
            c.panel_material = text(j, "panel_material");
        if (j.contains("alpha_deg") && !j.at("alpha_deg").is_null())
            c.alpha_override = deg2rad(number(j, "alpha_deg"));
        if (j.contains("tx_count"))
            c.tx_count = count(j, "tx_count");
        c.tx_step = number_or(j, "tx_step", c.tx_step);
        if (j.contains("tx_axis_x") && !j.at("tx_axis_x").is_null())
            c.tx_axis_x = number(j, "tx_axis_x");
        if (j.contains("rx"))
            c.rx = point_from_json(j.at("rx"));
        if (j.contains("tx_antenna"))
            c.tx_antenna = antenna_from_json(j.at("tx_antenna"));
        if (j.contains("rx_antenna"))
            c.rx_antenna = antenna_from_json(j.at("rx_antenna"));
        if (j.contains("rx_aim_without_panel"))
        {
            try
            {
                c.rx_aim_without_panel = rx_aim_from_string(text(j, "rx_aim_without_panel"));
            }
            catch (const std::invalid_argument &e)
            {
                throw config_error(e.what());
            }
        }
        if (j.contains("sweep"))
            c.sweep = sweep_from_json(j.at("sweep"));
        if (j.contains("noise_floor_db"))
        {
            if (j.at("noise_floor_db").is_null())
                c.noise_floor_db.reset();
            else
                c.noise_floor_db = number(j, "noise_floor_db");
        }
        if (j.contains("max_order"))
            c.max_order = static_cast<int>(count(j, "max_order"));
        c.antenna_height = number_or(j, "antenna_height", c.antenna_height);
        if (j.contains("materials"))
            c.materials = materials_from_json(j.at("materials"));
        if (j.contains("threads"))
            c.threads = count(j, "threads");
        if (j.contains("deembed_gains"))
        {
            if (!j.at("deembed_gains").is_boolean())
                throw config_error("'deembed_gains' must be a boolean.");
            c.deembed_gains = j.at("deembed_gains").get<bool>();
        }

        try
        {
            c.validate();
        }
        catch (const config_error &)
        {
            throw;
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(e.what());
        }
        catch (const std::out_of_range &e)
        {
            throw config_error(e.what());
        }
        return c;
    }

    json config_to_json(const ScenarioConfig &c)
    {
        json j{
            {"schema", config_schema_version},
            {"layout", layout_to_json(c.layout)},
            {"panel_width", c.panel_width},
            {"panel_length", c.panel_length},
            {"panel_material", c.panel_material},
            {"tx_count", c.tx_count},
            {"tx_step", c.tx_step},
            {"tx_axis_x", c.axis_x()},
            {"rx", point_to_json(c.rx)},
            {"tx_antenna", antenna_to_json(c.tx_antenna)},
            {"rx_antenna", antenna_to_json(c.rx_antenna)},
            {"rx_aim_without_panel", to_string(c.rx_aim_without_panel)},
            {"sweep", sweep_to_json(c.sweep)},
            {"noise_floor_db", c.noise_floor_db ? json(*c.noise_floor_db) : json(nullptr)},
            {"max_order", c.max_order},
            {"antenna_height", c.antenna_height},
            {"materials", materials_to_json(c.materials)},
            {"deembed_gains", c.deembed_gains},
        };
        j["sweep"].erase("step_hz");
        if (c.alpha_override)
            j["alpha_deg"] = rad2deg(*c.alpha_override);
        return j;
    }

    // ----- Results ---------------------------------------------------------

    json solution_to_json(const AngleSolution &s)
    {
        return {
            {"alpha_deg", rad2deg(s.alpha)},
            {"beta_deg", rad2deg(s.beta)},
            {"gamma_deg", rad2deg(s.gamma)},
            {"residual_rad", s.residual},
            {"panel_width", s.panel.width},
            {"A", point_to_json(s.panel.endpoint_a)},
            {"B", point_to_json(s.panel.endpoint_b)},
            {"M", point_to_json(s.panel.center)},
            {"x_A", s.panel.endpoint_a.x},
            {"y_B", s.panel.endpoint_b.y},
        };
    }

    json path_to_json(const RayPath &path)
    {
        json verts = json::array();
        for (const auto &v : path.vertices)
            verts.push_back(point_to_json(v));
        return {
            {"vertices", verts},
            {"reflectors", path.reflectors},
            {"materials", path.bounce_materials},
            {"bounces", path.bounce_count()},
            {"length_m", path.total_length},
            {"delay_s", path.delay},
        };
    }

    json path_to_json(const RayPath &path, const ScenarioConfig &config, const Vec2 &rx_boresight)
    {
        json j = path_to_json(path);
        AntennaPattern rx = config.rx_antenna;
        rx.boresight = rx_boresight;
        const auto a = path_amplitude(path, config.sweep.center_hz, config.tx_antenna, rx, config.materials);
        double g = amplitude_to_db(std::abs(a));
        if (config.deembed_gains)
            g -= config.tx_antenna.peak_gain_dbi + rx.peak_gain_dbi;
        j["gain_db"] = number_or_null(g);
        return j;
    }

    json simulation_to_json(const SimulationResult &sim, const ScenarioConfig &config, const AngleSolution &placement)
    {
        json paths = json::array();
        for (const auto &p : sim.paths)
            paths.push_back(path_to_json(p, config, sim.rx_boresight));

        double peak = 0.0, mean = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        for (const auto &v : sim.trace.values)
        {
            double pw = std::norm(v);
            peak = std::max(peak, pw);
            lo = std::min(lo, pw);
            mean += pw;
        }
        mean /= static_cast<double>(std::max<std::size_t>(1, sim.trace.values.size()));

        return {
            {"tx", point_to_json(sim.tx)},
            {"rx", point_to_json(sim.rx)},
            {"with_panel", sim.with_panel},
            {"los", sim.los},
            {"path_loss_db", number_or_null(sim.path_loss_db)},
            {"below_measurable", !std::isfinite(sim.path_loss_db)},
            {"noise_floor_db", config.noise_floor_db ? json(*config.noise_floor_db) : json(nullptr)},
            {"rx_boresight_deg", direction_to_deg(sim.rx_boresight)},
            {"paths", paths},
            {"trace_summary",
             {{"sweep", sweep_to_json(sim.trace.grid)},
              {"mean_power_db", number_or_null(power_to_db(mean))},
              {"max_power_db", number_or_null(power_to_db(peak))},
              {"min_power_db", number_or_null(power_to_db(lo))}}},
            {"solution", solution_to_json(placement)},
        };
    }

    json campaign_to_json(const CampaignResult &result)
    {
        json positions = json::array();
        for (const auto &r : result.records)
        {
            json pw = json::array(), pn = json::array();
            for (const auto &p : r.paths_without)
                pn.push_back(path_to_json(p));
            for (const auto &p : r.paths_with)
                pw.push_back(path_to_json(p));
            positions.push_back({
                {"index", r.index},
                {"tx", point_to_json(r.tx)},
                {"los", r.los},
                {"pl_without_db", number_or_null(r.pl_without)},
                {"pl_with_db", number_or_null(r.pl_with)},
                {"improvement_db", number_or_null(r.improvement)},
                {"panel_path", r.panel_path_present},
                {"path_count_without", r.paths_without.size()},
                {"path_count_with", r.paths_with.size()},
                {"paths_without", pn},
                {"paths_with", pw},
            });
        }
        return {
            {"solution", solution_to_json(result.placement)},
            {"noise_floor_db", result.noise_floor_db ? json(*result.noise_floor_db) : json(nullptr)},
            {"positions", positions},
            {"improvement", improvement_to_json(improvement_curve(result))},
        };
    }

    json improvement_to_json(const ImprovementCurve &curve)
    {
        json pts = json::array();
        for (const auto &[i, db] : curve.points)
            pts.push_back({{"index", i}, {"improvement_db", number_or_null(db)}});
        return {{"points", pts}, {"argmax_index", curve.argmax_index}, {"max_db", number_or_null(curve.max_db)}};
    }

    json coverage_to_json(const CoverageGrid &grid, const AngleSolution &placement)
    {
        json values = json::array();
        for (const auto &v : grid.path_loss_db)
            values.push_back(v ? number_or_null(*v) : json(nullptr));
        return {
            {"xs", grid.xs},
            {"ys", grid.ys},
            {"nx", grid.xs.size()},
            {"ny", grid.ys.size()},
            {"with_panel", grid.with_panel},
            {"path_loss_db", values},
            {"solution", solution_to_json(placement)},
        };
    }

    CoverageRequest coverage_request_from_json(const json &j)
    {
        reject_unknown(j, {"x_min", "x_max", "y_min", "y_max", "nx", "ny", "with_panel"}, "coverage grid");
        CoverageRequest r;
        r.x_min = number_or(j, "x_min", r.x_min);
        r.x_max = number_or(j, "x_max", r.x_max);
        r.y_min = number_or(j, "y_min", r.y_min);
        r.y_max = number_or(j, "y_max", r.y_max);
        if (j.contains("nx"))
            r.nx = count(j, "nx");
        if (j.contains("ny"))
            r.ny = count(j, "ny");
        if (j.contains("with_panel"))
        {
            if (!j.at("with_panel").is_boolean())
                throw config_error("'with_panel' must be a boolean.");
            r.with_panel = j.at("with_panel").get<bool>();
        }
        return r;
    }

    json pdp_to_json(const PowerDelayProfile &pdp)
    {
        json powers = json::array();
        for (double p : pdp.powers_db)
            powers.push_back(number_or_null(p));
        return {{"window", to_string(pdp.window)}, {"delays_s", pdp.delays}, {"powers_db", powers}};
    }

    void write_campaign_csv(const CampaignResult &result, std::ostream &out)
    {
        out << "index,tx_x_m,tx_y_m,los,pl_without_db,pl_with_db,improvement_db,paths_without,paths_with,panel_path\n";
        for (const auto &r : result.records)
            out << r.index << ',' << format_double(r.tx.x) << ',' << format_double(r.tx.y) << ','
                << (r.los ? 1 : 0) << ',' << format_double(r.pl_without) << ',' << format_double(r.pl_with) << ','
                << format_double(r.improvement) << ',' << r.paths_without.size() << ',' << r.paths_with.size() << ','
                << (r.panel_path_present ? 1 : 0) << '\n';
    }

    void write_campaign_series(const CampaignResult &result, bool with_panel, std::ostream &out)
    {
        out << "# index pl_" << (with_panel ? "with" : "without") << "_db\n";
        for (const auto &r : result.records)
            out << r.index << ' ' << format_double(with_panel ? r.pl_with : r.pl_without) << '\n';
    }

    json read_json_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("Cannot open '" + path + "'.");
        try
        {
            return json::parse(in);
        }
        catch (const json::parse_error &e)
        {
            throw config_error("Invalid JSON in '" + path + "': " + e.what());
        }
    }
}
