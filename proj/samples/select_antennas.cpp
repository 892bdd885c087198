// SPDX-License-Identifier: Apache-2.0
//
// oabf - on-off analog beamforming library and link simulator
// Copyright (C) 2026 The oabf authors
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

// Draws one Rayleigh channel and compares the switching schemes on it.

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <oabf/oabf.hpp>

int main(int argc, char **argv)
{
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 16;
    const auto ch = oabf::sample_rayleigh(n, /*master_seed=*/7, /*stream_index=*/0);

    const auto print = [&](const char *name, const oabf::SelectionResult &r) {
        std::cout << std::setw(16) << std::left << name << " K=" << std::setw(3) << r.selection.cardinality()
                  << " objective=" << r.objective << '\n';
    };
    print("antenna select", oabf::antenna_select(ch));
    print("half-plane", oabf::oabf_b(ch));
    print("sweep (P_o)", oabf::oabf_s(ch));
    print("sweep (P_t)", oabf::oabf_t(ch));
    std::cout << std::setw(16) << std::left << "phase aligned" << " K=" << std::setw(3) << n
              << " objective=" << oabf::phase_aligned_value(ch) << '\n';
}
