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

#include "core/carrier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmwn
{
    CarrierConfig carrier_from_frequency(double frequency_hz)
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw std::invalid_argument("carrier frequency must be positive and finite");

        CarrierConfig c;
        c.frequency_hz = frequency_hz;
        c.wavelength_m = speed_of_light_m_s / frequency_hz;
        c.wavenumber_rad_per_m = 2.0 * std::numbers::pi / c.wavelength_m;
        return c;
    }
}
