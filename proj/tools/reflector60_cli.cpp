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
#include "reflector60/calibration.hpp"
#include "reflector60/serialize.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

using namespace reflector60;
namespace fs = std::filesystem;

namespace
{
    void emit(const json &doc, const std::string &output)
    {
        if (output.empty() || output == "-")
        {
            std::cout << doc.dump(2) << '\n';
            return;
        }
        std::ofstream out(output);
        if (!out)
            throw std::runtime_error("Cannot write '" + output + "'.");
        out << doc.dump(2) << '\n';
    }

    ScenarioConfig load_config(const std::string &path)
    {
        return path.empty() ? ScenarioConfig::measured_default() : config_from_json(read_json_file(path));
    }

    void write_text(const fs::path &path, const std::string &content)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("Cannot write '" + path.string() + "'.");
        out << content;
    }

    std::string fmt_db(double v)
    {
        if (!std::isfinite(v))
            return "below";
        std::ostringstream s;
        s << std::fixed << std::setprecision(2) << v;
        return s.str();
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"reflector60: 60 GHz corridor coverage with a passive metal reflector"};
    app.require_subcommand(1);

    // solve
    auto *solve = app.add_subcommand("solve", "Solve the reflector orientation for a corridor layout");
    std::string solve_layout, solve_out;
    double solve_width = 0.595;
    solve->add_option("-l,--layout", solve_layout, "Layout JSON (default: measured corridor)")->check(CLI::ExistingFile);
    solve->add_option("-a,--panel-width", solve_width, "Panel horizontal width in meters");
    solve->add_option("-o,--output", solve_out, "Output JSON file (default: stdout)");

    // simulate
    auto *sim = app.add_subcommand("simulate", "Trace one Tx position and report paths and path loss");
    std::string sim_config, sim_out, sim_pdp;
    std::vector<double> sim_tx;
    int sim_index = 0;
    bool sim_no_panel = false;
    sim->add_option("-c,--config", sim_config, "Scenario JSON (default: measured scenario)")->check(CLI::ExistingFile);
    auto *tx_opt = sim->add_option("--tx", sim_tx, "Tx position x y in meters")->expected(2);
    sim->add_option("--tx-index", sim_index, "Tx position index (1-based)")->excludes(tx_opt);
    sim->add_flag("--no-panel", sim_no_panel, "Remove the reflector");
    sim->add_option("--pdp", sim_pdp, "Include a power delay profile (rectangular|hann)");
    sim->add_option("-o,--output", sim_out, "Output JSON file (default: stdout)");

    // campaign
    auto *camp = app.add_subcommand("campaign", "Run all Tx positions with and without the reflector");
    std::string camp_config, camp_dir = "results";
    camp->add_option("-c,--config", camp_config, "Scenario JSON (default: measured scenario)")->check(CLI::ExistingFile);
    camp->add_option("-d,--out-dir", camp_dir, "Directory for campaign.csv, campaign.json and series files");

    // calibrate
    auto *cal = app.add_subcommand("calibrate", "De-embed a measured sweep with a back-to-back sweep");
    std::string cal_measured, cal_bb, cal_out;
    double cal_att = 40.0, cal_gtx = 2.0, cal_grx = 22.5;
    cal->add_option("-m,--measured", cal_measured, "Measured sweep CSV (H_M)")->required()->check(CLI::ExistingFile);
    cal->add_option("-b,--back-to-back", cal_bb, "Back-to-back sweep CSV (H_BB)")->required()->check(CLI::ExistingFile);
    cal->add_option("--attenuator", cal_att, "Back-to-back attenuator in dB");
    cal->add_option("--g-tx", cal_gtx, "Tx antenna gain in dBi");
    cal->add_option("--g-rx", cal_grx, "Rx antenna gain in dBi");
    cal->add_option("-o,--output", cal_out, "De-embedded channel CSV")->required();

    // serve
    auto *srv = app.add_subcommand("serve", "Serve the JSON API over HTTP");
    std::string host = "127.0.0.1";
    int port = 8060;
    srv->add_option("--host", host, "Bind address (loopback by default)");
    srv->add_option("-p,--port", port, "TCP port");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*solve)
        {
            CorridorLayout layout = solve_layout.empty() ? CorridorLayout::measured_default()
                                                         : layout_from_json(read_json_file(solve_layout));
            auto sol = solve_reflector_orientation(layout, solve_width);
            emit({{"solution", solution_to_json(sol)}}, solve_out);
        }
        else if (*sim)
        {
            json req{{"scenario", config_to_json(load_config(sim_config))}, {"with_panel", !sim_no_panel}};
            if (!sim_tx.empty())
                req["tx"] = {sim_tx[0], sim_tx[1]};
            else if (sim_index > 0)
                req["tx_index"] = sim_index;
            if (!sim_pdp.empty())
                req["pdp"] = sim_pdp;
            emit(api::simulate(req), sim_out);
        }
        else if (*camp)
        {
            auto config = load_config(camp_config);
            auto result = run_campaign(config);

            fs::create_directories(camp_dir);
            std::ostringstream csv, with, without;
            write_campaign_csv(result, csv);
            write_campaign_series(result, true, with);
            write_campaign_series(result, false, without);
            write_text(fs::path(camp_dir) / "campaign.csv", csv.str());
            write_text(fs::path(camp_dir) / "series_with.dat", with.str());
            write_text(fs::path(camp_dir) / "series_without.dat", without.str());
            write_text(fs::path(camp_dir) / "campaign.json", campaign_to_json(result).dump(2) + "\n");

            const auto &s = result.placement;
            std::cout << "alpha = " << std::fixed << std::setprecision(3) << rad2deg(s.alpha)
                      << " deg, beta = " << rad2deg(s.beta) << " deg, gamma = " << rad2deg(s.gamma) << " deg\n";
            std::cout << " pos   tx_y[m]  LOS  PL_without  PL_with  improvement\n";
            for (const auto &r : result.records)
                std::cout << std::setw(4) << r.index << std::setw(10) << std::setprecision(2) << r.tx.y
                          << std::setw(5) << (r.los ? "yes" : "no") << std::setw(12) << fmt_db(r.pl_without)
                          << std::setw(9) << fmt_db(r.pl_with) << std::setw(13) << fmt_db(r.improvement) << '\n';
            auto curve = improvement_curve(result);
            std::cout << "max improvement " << fmt_db(curve.max_db) << " dB at position " << curve.argmax_index << '\n';
            std::cout << "wrote " << camp_dir << "/campaign.{csv,json}, series_{with,without}.dat\n";
        }
        else if (*cal)
        {
            auto measured = read_sweep_file(cal_measured);
            auto bb = read_sweep_file(cal_bb);
            auto channel = deembed_channel(measured, bb, cal_att, cal_gtx, cal_grx);
            write_sweep_file(channel, cal_out);
            std::cout << "path loss (band average) " << fmt_db(path_loss_db(channel)) << " dB\n";
        }
        else if (*srv)
        {
            std::cout << "serving on http://" << host << ":" << port << "/api\n" << std::flush;
            if (!api::serve(host, port))
            {
                std::cerr << "error: cannot bind " << host << ":" << port << '\n';
                return 1;
            }
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
