// SPDX-License-Identifier: Apache-2.0
//
// hmwn - wavenumber-domain channel analysis for holographic MIMO
// Copyright (C) 2026 the hmwn authors
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

#pragma once

namespace hmwn
{
    inline constexpr double speed_of_light_m_s = 299792458.0;

    // Carrier bookkeeping. All three fields are kept consistent on construction:
    // wavelength = c / frequency, wavenumber = 2*pi / wavelength.
    struct CarrierConfig
    {
        double frequency_hz = 0.0;
        double wavelength_m = 0.0;
        double wavenumber_rad_per_m = 0.0;
    };

    // Throws std::invalid_argument for non-positive frequency.
    CarrierConfig carrier_from_frequency(double frequency_hz);
}
