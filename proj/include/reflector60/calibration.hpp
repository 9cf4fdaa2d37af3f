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

#ifndef REFLECTOR60_CALIBRATION_HPP
#define REFLECTOR60_CALIBRATION_HPP

#include "reflector60/channel.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

namespace reflector60
{
    // Sounder chain around the propagation channel: converter responses,
    // antenna gains (frequency flat) and the back-to-back attenuator.
    struct RigSignature
    {
        ComplexTrace tx_response; // H_Tx
        ComplexTrace rx_response; // H_Rx
        double g_tx_dbi = 0.0;
        double g_rx_dbi = 0.0;
        double attenuator_db = 40.0;

        // Unit converter responses on the given grid
        static RigSignature ideal(const SweepGrid &grid, double g_tx_dbi = 0.0, double g_rx_dbi = 0.0,
                                  double attenuator_db = 40.0);
        void validate() const;
    };

    class deembedding_error : public std::domain_error
    {
    public:
        deembedding_error(const std::string &what, std::size_t index)
            : std::domain_error(what), sample_index(index) {}
        std::size_t sample_index;
    };

    // |H_BB| below this is treated as a division by zero
    inline constexpr double deembed_min_magnitude = 1e-15;

    // H_M = H_Tx * G_Tx * H_C * G_Rx * H_Rx
    ComplexTrace compose_measured(const ComplexTrace &channel, const RigSignature &rig);

    // H_BB = H_Tx * H_A * H_Rx, H_A = 10^(-attenuator/20)
    ComplexTrace compose_back_to_back(const RigSignature &rig);

    // H_C = H_M * H_A / (H_BB * G_Tx * G_Rx)
    ComplexTrace deembed_channel(const ComplexTrace &measured, const ComplexTrace &back_to_back,
                                 double attenuator_db, double g_tx_dbi, double g_rx_dbi);

    // ----- Sweep CSV -------------------------------------------------------
    //
    //   # freq_hz,re,im
    //   # center_hz=<c>,bandwidth_hz=<b>,n_points=<n>
    //   <f_0>,<re_0>,<im_0>
    //   ...
    //
    // Numbers use the shortest round-trip decimal form. Lines end with '\n'.

    class sweep_format_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    void write_sweep(const ComplexTrace &trace, std::ostream &out);
    ComplexTrace read_sweep(std::istream &in);

    // Writes to a sibling temp file, then renames over the target
    void write_sweep_file(const ComplexTrace &trace, const std::filesystem::path &path);
    ComplexTrace read_sweep_file(const std::filesystem::path &path);

    // Shortest decimal text that parses back to the same double
    std::string format_double(double v);
}

#endif
