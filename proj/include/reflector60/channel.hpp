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

#ifndef REFLECTOR60_CHANNEL_HPP
#define REFLECTOR60_CHANNEL_HPP

#include "reflector60/propagation.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace reflector60
{
    // Uniform sweep with inclusive endpoints: f_i = center - bandwidth/2 + i * step
    struct SweepGrid
    {
        double center_hz = 60e9;
        double bandwidth_hz = 2e9;
        std::size_t n_points = 401;

        static SweepGrid measured_default() { return {}; }

        double step() const { return bandwidth_hz / static_cast<double>(n_points - 1); }
        double start() const { return center_hz - 0.5 * bandwidth_hz; }
        double frequency(std::size_t i) const { return start() + static_cast<double>(i) * step(); }
        std::vector<double> frequencies() const;

        void validate() const; // throws std::invalid_argument
        bool operator==(const SweepGrid &) const = default;
    };

    class grid_mismatch_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Complex frequency response sampled on a SweepGrid
    struct ComplexTrace
    {
        SweepGrid grid;
        std::vector<std::complex<double>> values;

        static ComplexTrace constant(const SweepGrid &grid, std::complex<double> value);
        void validate() const; // length matches grid, all samples finite
        std::size_t size() const { return values.size(); }
    };

    // Throws grid_mismatch_error unless the grids agree
    void require_same_grid(const ComplexTrace &a, const ComplexTrace &b);

    // values[i] = sum over paths of path_amplitude(path, f_i, ...)
    ComplexTrace synthesize_frequency_response(const std::vector<RayPath> &paths, const SweepGrid &grid,
                                               const AntennaPattern &tx_pattern, const AntennaPattern &rx_pattern,
                                               const MaterialRegistry &materials);

    // -10 log10(mean |H|^2), clamped to the noise floor when one is given.
    // An all-zero trace without a floor returns +infinity ("below measurable").
    double path_loss_db(const ComplexTrace &trace, std::optional<double> noise_floor_db = std::nullopt);

    enum class Window
    {
        rectangular,
        hann
    };

    std::string to_string(Window w);
    Window window_from_string(const std::string &name); // throws std::invalid_argument

    struct PowerDelayProfile
    {
        std::vector<double> delays;    // seconds
        std::vector<double> powers_db; // -inf for empty bins
        Window window = Window::rectangular;

        double resolution() const { return delays.size() > 1 ? delays[1] - delays[0] : 0.0; }
        std::size_t peak_bin() const;
    };

    // Inverse DFT of the windowed sweep. Bin n sits at delay n / (N * step).
    // Normalized by the window sum so that an on-bin single path peaks at its
    // own |amplitude| in dB.
    PowerDelayProfile power_delay_profile(const ComplexTrace &trace, Window window = Window::rectangular);
}

#endif
