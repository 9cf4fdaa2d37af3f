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

#ifndef REFLECTOR60_PROPAGATION_HPP
#define REFLECTOR60_PROPAGATION_HPP

#include "reflector60/raytrace.hpp"

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace reflector60
{
    inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }
    inline double amplitude_to_db(double amplitude) { return 20.0 * std::log10(amplitude); }
    inline double db_to_power(double db) { return std::pow(10.0, db / 10.0); }
    inline double power_to_db(double power) { return 10.0 * std::log10(power); }

    class unknown_material_error : public std::out_of_range
    {
    public:
        using std::out_of_range::out_of_range;
    };

    // Scalar, angle- and frequency-independent reflection coefficient magnitude
    struct Material
    {
        std::string id;
        std::string name;
        double reflection_amplitude = 1.0; // |Gamma| in [0, 1]
        std::string source;
    };

    // Immutable id -> Material table
    class MaterialRegistry
    {
    public:
        MaterialRegistry() = default;
        explicit MaterialRegistry(const std::vector<Material> &materials);

        // metal 1.0, plasterboard 0.32, glass 0.40, wood 0.25
        static MaterialRegistry defaults();

        const Material &at(const std::string &id) const; // throws unknown_material_error
        bool contains(const std::string &id) const { return table_.count(id) != 0; }
        std::vector<Material> materials() const;

        // Copy with one entry's amplitude replaced (or added)
        MaterialRegistry with_amplitude(const std::string &id, double amplitude) const;

    private:
        std::map<std::string, Material> table_;
    };

    double reflection_amplitude(const MaterialRegistry &registry, const std::string &material_id);

    enum class AntennaKind
    {
        omni,
        horn
    };

    // Azimuth-only pattern. The horn main lobe is Gaussian in dB, -3 dB at
    // half the HPBW, floored at peak - backlobe_db.
    struct AntennaPattern
    {
        AntennaKind kind = AntennaKind::omni;
        double peak_gain_dbi = 0.0;
        double azimuth_hpbw_deg = 360.0;
        Vec2 boresight{1.0, 0.0};
        double backlobe_db = 20.0;

        static AntennaPattern omni(double gain_dbi = 2.0);
        static AntennaPattern horn(double gain_dbi = 22.5, double hpbw_deg = 13.0, Vec2 boresight = {1.0, 0.0});
        static AntennaPattern isotropic() { return omni(0.0); }

        void validate() const;
    };

    // Free-space loss 20 log10(4 pi d f / c). Throws std::domain_error for non-positive inputs.
    double fspl_db(double distance_m, double frequency_hz);

    // Gain toward a direction (need not be unit length)
    double antenna_gain_dbi(const AntennaPattern &pattern, const Vec2 &direction);

    // Complex amplitude of one path at one frequency, antenna gains included
    std::complex<double> path_amplitude(const RayPath &path, double frequency_hz,
                                        const AntennaPattern &tx_pattern, const AntennaPattern &rx_pattern,
                                        const MaterialRegistry &materials);
}

#endif
