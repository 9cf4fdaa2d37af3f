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

#include "reflector60/propagation.hpp"

#include <algorithm>

namespace reflector60
{
    MaterialRegistry::MaterialRegistry(const std::vector<Material> &materials)
    {
        for (const auto &m : materials)
        {
            if (m.id.empty())
                throw std::invalid_argument("Material id must not be empty.");
            if (!(m.reflection_amplitude >= 0.0 && m.reflection_amplitude <= 1.0))
                throw std::invalid_argument("Material '" + m.id + "' reflection amplitude must be in [0, 1].");
            if (!table_.emplace(m.id, m).second)
                throw std::invalid_argument("Duplicate material id '" + m.id + "'.");
        }
    }

    MaterialRegistry MaterialRegistry::defaults()
    {
        return MaterialRegistry({
            {"metal", "Metal plate", 1.0, "perfect conductor idealization"},
            {"plasterboard", "Plasterboard wall", 0.32, "about -10 dB; typical 60 GHz indoor drywall reflection loss"},
            {"glass", "Glass (doors, glazed side)", 0.40, "about -8 dB; typical 60 GHz window glass reflection loss"},
            {"wood", "Wooden door", 0.25, "about -12 dB; typical 60 GHz wooden door reflection loss"},
        });
    }

    const Material &MaterialRegistry::at(const std::string &id) const
    {
        auto it = table_.find(id);
        if (it == table_.end())
            throw unknown_material_error("Unknown material id '" + id + "'.");
        return it->second;
    }

    std::vector<Material> MaterialRegistry::materials() const
    {
        std::vector<Material> out;
        for (const auto &[id, m] : table_)
            out.push_back(m);
        return out;
    }

    MaterialRegistry MaterialRegistry::with_amplitude(const std::string &id, double amplitude) const
    {
        auto list = materials();
        auto it = std::find_if(list.begin(), list.end(), [&](const Material &m)
                               { return m.id == id; });
        if (it == list.end())
            list.push_back({id, id, amplitude, "override"});
        else
            it->reflection_amplitude = amplitude;
        return MaterialRegistry(list);
    }

    double reflection_amplitude(const MaterialRegistry &registry, const std::string &material_id)
    {
        return registry.at(material_id).reflection_amplitude;
    }

    // ----- Antennas --------------------------------------------------------

    AntennaPattern AntennaPattern::omni(double gain_dbi)
    {
        AntennaPattern p;
        p.kind = AntennaKind::omni;
        p.peak_gain_dbi = gain_dbi;
        return p;
    }

    AntennaPattern AntennaPattern::horn(double gain_dbi, double hpbw_deg, Vec2 boresight)
    {
        AntennaPattern p;
        p.kind = AntennaKind::horn;
        p.peak_gain_dbi = gain_dbi;
        p.azimuth_hpbw_deg = hpbw_deg;
        p.boresight = boresight;
        return p;
    }

    void AntennaPattern::validate() const
    {
        if (!std::isfinite(peak_gain_dbi))
            throw std::invalid_argument("Antenna peak gain must be finite.");
        if (kind == AntennaKind::horn)
        {
            if (!(azimuth_hpbw_deg > 0.0) || !std::isfinite(azimuth_hpbw_deg))
                throw std::invalid_argument("Horn HPBW must be positive.");
            if (!(boresight.norm() > 0.0))
                throw std::invalid_argument("Horn boresight must be a non-zero direction.");
            if (!(backlobe_db >= 0.0))
                throw std::invalid_argument("Backlobe level must be non-negative.");
        }
    }

    double antenna_gain_dbi(const AntennaPattern &pattern, const Vec2 &direction)
    {
        if (pattern.kind == AntennaKind::omni)
            return pattern.peak_gain_dbi;

        const Vec2 u = direction.normalized();
        const Vec2 b = pattern.boresight.normalized();
        const double theta = std::abs(std::atan2(cross(b, u), dot(b, u)));
        const double half = 0.5 * deg2rad(pattern.azimuth_hpbw_deg);
        const double rolloff = 3.0 * (theta / half) * (theta / half);
        return pattern.peak_gain_dbi - std::min(rolloff, pattern.backlobe_db);
    }

    // ----- Path terms ------------------------------------------------------

    double fspl_db(double distance_m, double frequency_hz)
    {
        if (!(distance_m > 0.0) || !(frequency_hz > 0.0))
            throw std::domain_error("Free-space loss needs positive distance and frequency.");
        return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / speed_of_light);
    }

    std::complex<double> path_amplitude(const RayPath &path, double frequency_hz,
                                        const AntennaPattern &tx_pattern, const AntennaPattern &rx_pattern,
                                        const MaterialRegistry &materials)
    {
        if (path.vertices.size() < 2 || !(path.total_length > 0.0))
            throw std::invalid_argument("Path needs at least two vertices and a positive length.");
        if (!(frequency_hz > 0.0))
            throw std::domain_error("Frequency must be positive.");

        // c / (4 pi d f) is the linear amplitude of the Friis loss
        double magnitude = speed_of_light / (4.0 * std::numbers::pi * path.total_length * frequency_hz);
        for (const auto &m : path.bounce_materials)
            magnitude *= materials.at(m).reflection_amplitude;
        magnitude *= db_to_amplitude(antenna_gain_dbi(tx_pattern, path.departure_direction()));
        magnitude *= db_to_amplitude(antenna_gain_dbi(rx_pattern, path.arrival_direction()));

        const double phase = -2.0 * std::numbers::pi * frequency_hz * path.delay;
        return std::polar(magnitude, phase);
    }
}
