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

#include "reflector60/calibration.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace reflector60
{
    RigSignature RigSignature::ideal(const SweepGrid &grid, double g_tx_dbi, double g_rx_dbi, double attenuator_db)
    {
        RigSignature rig;
        rig.tx_response = ComplexTrace::constant(grid, {1.0, 0.0});
        rig.rx_response = ComplexTrace::constant(grid, {1.0, 0.0});
        rig.g_tx_dbi = g_tx_dbi;
        rig.g_rx_dbi = g_rx_dbi;
        rig.attenuator_db = attenuator_db;
        return rig;
    }

    void RigSignature::validate() const
    {
        tx_response.validate();
        rx_response.validate();
        require_same_grid(tx_response, rx_response);
        if (!(attenuator_db >= 0.0) || !std::isfinite(attenuator_db))
            throw std::invalid_argument("Attenuator must be a finite, non-negative dB value.");
        if (!std::isfinite(g_tx_dbi) || !std::isfinite(g_rx_dbi))
            throw std::invalid_argument("Antenna gains must be finite.");
    }

    ComplexTrace compose_measured(const ComplexTrace &channel, const RigSignature &rig)
    {
        rig.validate();
        require_same_grid(channel, rig.tx_response);
        const double gains = db_to_amplitude(rig.g_tx_dbi) * db_to_amplitude(rig.g_rx_dbi);

        ComplexTrace out = channel;
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = rig.tx_response.values[i] * gains * channel.values[i] * rig.rx_response.values[i];
        return out;
    }

    ComplexTrace compose_back_to_back(const RigSignature &rig)
    {
        rig.validate();
        const double h_a = db_to_amplitude(-rig.attenuator_db);

        ComplexTrace out = rig.tx_response;
        for (std::size_t i = 0; i < out.values.size(); ++i)
            out.values[i] = rig.tx_response.values[i] * h_a * rig.rx_response.values[i];
        return out;
    }

    ComplexTrace deembed_channel(const ComplexTrace &measured, const ComplexTrace &back_to_back,
                                 double attenuator_db, double g_tx_dbi, double g_rx_dbi)
    {
        measured.validate();
        back_to_back.validate();
        require_same_grid(measured, back_to_back);

        const double h_a = db_to_amplitude(-attenuator_db);
        const double gains = db_to_amplitude(g_tx_dbi) * db_to_amplitude(g_rx_dbi);

        ComplexTrace out = measured;
        for (std::size_t i = 0; i < out.values.size(); ++i)
        {
            const auto &bb = back_to_back.values[i];
            if (std::abs(bb) < deembed_min_magnitude)
                throw deembedding_error("Back-to-back response vanishes at sample " + std::to_string(i) +
                                            "; cannot de-embed.",
                                        i);
            out.values[i] = measured.values[i] * h_a / (bb * gains);
        }
        return out;
    }

    // ----- Sweep CSV -------------------------------------------------------

    namespace
    {
        constexpr const char *header_line = "# freq_hz,re,im";

        double parse_double(std::string_view text, std::size_t line_no)
        {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size())
                throw sweep_format_error("Line " + std::to_string(line_no) + ": cannot parse number '" +
                                         std::string(text) + "'.");
            return v;
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t pos = 0;
            while (true)
            {
                auto next = s.find(sep, pos);
                out.push_back(s.substr(pos, next - pos));
                if (next == std::string_view::npos)
                    break;
                pos = next + 1;
            }
            return out;
        }

        bool next_line(std::istream &in, std::string &line)
        {
            if (!std::getline(in, line))
                return false;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            return true;
        }
    }

    std::string format_double(double v)
    {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        if (ec != std::errc())
            throw std::runtime_error("Cannot format number.");
        return std::string(buf, ptr);
    }

    void write_sweep(const ComplexTrace &trace, std::ostream &out)
    {
        trace.validate();
        out << header_line << '\n';
        out << "# center_hz=" << format_double(trace.grid.center_hz)
            << ",bandwidth_hz=" << format_double(trace.grid.bandwidth_hz)
            << ",n_points=" << trace.grid.n_points << '\n';
        for (std::size_t i = 0; i < trace.values.size(); ++i)
            out << format_double(trace.grid.frequency(i)) << ','
                << format_double(trace.values[i].real()) << ','
                << format_double(trace.values[i].imag()) << '\n';
    }

    ComplexTrace read_sweep(std::istream &in)
    {
        std::string line;
        if (!next_line(in, line) || line != header_line)
            throw sweep_format_error("Missing or malformed header line (expected '" + std::string(header_line) + "').");

        if (!next_line(in, line) || line.rfind("# ", 0) != 0)
            throw sweep_format_error("Missing metadata line.");

        SweepGrid grid;
        bool have_center = false, have_bw = false, have_n = false;
        for (auto field : split(std::string_view(line).substr(2), ','))
        {
            auto eq = field.find('=');
            if (eq == std::string_view::npos)
                throw sweep_format_error("Malformed metadata field '" + std::string(field) + "'.");
            auto key = field.substr(0, eq);
            auto value = field.substr(eq + 1);
            if (key == "center_hz")
                grid.center_hz = parse_double(value, 2), have_center = true;
            else if (key == "bandwidth_hz")
                grid.bandwidth_hz = parse_double(value, 2), have_bw = true;
            else if (key == "n_points")
            {
                std::size_t n = 0;
                auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
                if (ec != std::errc() || ptr != value.data() + value.size())
                    throw sweep_format_error("Malformed n_points '" + std::string(value) + "'.");
                grid.n_points = n, have_n = true;
            }
            else
                throw sweep_format_error("Unknown metadata key '" + std::string(key) + "'.");
        }
        if (!have_center || !have_bw || !have_n)
            throw sweep_format_error("Metadata line must declare center_hz, bandwidth_hz and n_points.");
        try
        {
            grid.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw sweep_format_error(std::string("Invalid sweep grid: ") + e.what());
        }

        ComplexTrace trace;
        trace.grid = grid;
        trace.values.reserve(grid.n_points);
        const double spacing_tol = 1e-6 * grid.step();
        double last_f = -1.0;
        std::size_t line_no = 2;
        while (next_line(in, line))
        {
            ++line_no;
            if (line.empty())
                continue;
            auto fields = split(line, ',');
            if (fields.size() != 3)
                throw sweep_format_error("Line " + std::to_string(line_no) + ": expected 3 fields.");
            double f = parse_double(fields[0], line_no);
            double re = parse_double(fields[1], line_no);
            double im = parse_double(fields[2], line_no);
            if (!trace.values.empty() && !(f > last_f))
                throw sweep_format_error("Line " + std::to_string(line_no) + ": frequencies must be strictly increasing.");
            const std::size_t i = trace.values.size();
            if (i >= grid.n_points)
                throw sweep_format_error("More samples than the declared n_points = " + std::to_string(grid.n_points) + ".");
            if (std::abs(f - grid.frequency(i)) > spacing_tol)
                throw sweep_format_error("Line " + std::to_string(line_no) + ": frequency " + format_double(f) +
                                         " does not match the declared grid.");
            last_f = f;
            trace.values.emplace_back(re, im);
        }
        if (trace.values.size() != grid.n_points)
            throw sweep_format_error("Found " + std::to_string(trace.values.size()) + " samples but header declares " +
                                     std::to_string(grid.n_points) + ".");
        return trace;
    }

    void write_sweep_file(const ComplexTrace &trace, const std::filesystem::path &path)
    {
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("Cannot open '" + tmp.string() + "' for writing.");
            write_sweep(trace, out);
            out.flush();
            if (!out)
                throw std::runtime_error("Failed writing '" + tmp.string() + "'.");
        }
        std::filesystem::rename(tmp, path);
    }

    ComplexTrace read_sweep_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("Cannot open sweep file '" + path.string() + "'.");
        return read_sweep(in);
    }
}
