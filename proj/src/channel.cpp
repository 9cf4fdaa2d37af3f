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

#include "reflector60/channel.hpp"

#include <algorithm>
#include <limits>

namespace reflector60
{
    std::vector<double> SweepGrid::frequencies() const
    {
        std::vector<double> f(n_points);
        for (std::size_t i = 0; i < n_points; ++i)
            f[i] = frequency(i);
        return f;
    }

    void SweepGrid::validate() const
    {
        if (n_points < 2)
            throw std::invalid_argument("Sweep grid needs at least 2 points.");
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            throw std::invalid_argument("Sweep bandwidth must be finite and positive.");
        if (!(center_hz > 0.0) || !std::isfinite(center_hz))
            throw std::invalid_argument("Sweep center frequency must be finite and positive.");
        if (!(start() > 0.0))
            throw std::invalid_argument("Sweep must not extend to non-positive frequencies.");
    }

    ComplexTrace ComplexTrace::constant(const SweepGrid &grid, std::complex<double> value)
    {
        grid.validate();
        return {grid, std::vector<std::complex<double>>(grid.n_points, value)};
    }

    void ComplexTrace::validate() const
    {
        grid.validate();
        if (values.size() != grid.n_points)
            throw std::invalid_argument("Trace length " + std::to_string(values.size()) +
                                        " does not match grid size " + std::to_string(grid.n_points) + ".");
        for (const auto &v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("Trace contains non-finite samples.");
    }

    void require_same_grid(const ComplexTrace &a, const ComplexTrace &b)
    {
        if (!(a.grid == b.grid) || a.values.size() != b.values.size())
            throw grid_mismatch_error("Traces are sampled on different frequency grids.");
    }

    ComplexTrace synthesize_frequency_response(const std::vector<RayPath> &paths, const SweepGrid &grid,
                                               const AntennaPattern &tx_pattern, const AntennaPattern &rx_pattern,
                                               const MaterialRegistry &materials)
    {
        auto trace = ComplexTrace::constant(grid, {0.0, 0.0});
        for (std::size_t i = 0; i < grid.n_points; ++i)
        {
            const double f = grid.frequency(i);
            for (const auto &p : paths)
                trace.values[i] += path_amplitude(p, f, tx_pattern, rx_pattern, materials);
        }
        return trace;
    }

    double path_loss_db(const ComplexTrace &trace, std::optional<double> noise_floor_db)
    {
        if (trace.values.empty())
            throw std::invalid_argument("Path loss of an empty trace is undefined.");

        double sum = 0.0;
        for (const auto &v : trace.values)
            sum += std::norm(v);
        const double mean = sum / static_cast<double>(trace.values.size());

        double pl = (mean > 0.0) ? -power_to_db(mean) : std::numeric_limits<double>::infinity();
        if (noise_floor_db)
            pl = std::min(pl, *noise_floor_db);
        return pl;
    }

    std::string to_string(Window w)
    {
        return w == Window::hann ? "hann" : "rectangular";
    }

    Window window_from_string(const std::string &name)
    {
        if (name == "rectangular" || name == "rect")
            return Window::rectangular;
        if (name == "hann")
            return Window::hann;
        throw std::invalid_argument("Unknown window '" + name + "' (expected rectangular or hann).");
    }

    std::size_t PowerDelayProfile::peak_bin() const
    {
        if (powers_db.empty())
            throw std::invalid_argument("Empty power delay profile.");
        return static_cast<std::size_t>(std::max_element(powers_db.begin(), powers_db.end()) - powers_db.begin());
    }

    PowerDelayProfile power_delay_profile(const ComplexTrace &trace, Window window)
    {
        trace.validate();
        const std::size_t n = trace.values.size();

        std::vector<double> w(n, 1.0);
        if (window == Window::hann)
            for (std::size_t i = 0; i < n; ++i)
                w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
        double w_sum = 0.0;
        for (double x : w)
            w_sum += x;

        // Twiddle table, exp(+j 2 pi m / N)
        std::vector<std::complex<double>> twiddle(n);
        for (std::size_t m = 0; m < n; ++m)
            twiddle[m] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));

        PowerDelayProfile pdp;
        pdp.window = window;
        pdp.delays.resize(n);
        pdp.powers_db.resize(n);
        const double bin = 1.0 / (static_cast<double>(n) * trace.grid.step());
        for (std::size_t k = 0; k < n; ++k)
        {
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t i = 0; i < n; ++i)
                acc += w[i] * trace.values[i] * twiddle[(i * k) % n];
            acc /= w_sum;
            pdp.delays[k] = static_cast<double>(k) * bin;
            pdp.powers_db[k] = power_to_db(std::norm(acc));
        }
        return pdp;
    }
}
