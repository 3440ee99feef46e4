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

#include "core/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hmwn
{
    PlanarArrayGeometry make_planar_array(int n_x, int n_y, double spacing_m)
    {
        if (n_x < 1 || n_y < 1)
            throw std::invalid_argument("array element counts must be positive");
        if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
            throw std::invalid_argument("element spacing must be positive and finite");

        PlanarArrayGeometry g;
        g.n_x = n_x;
        g.n_y = n_y;
        g.spacing_m = spacing_m;
        g.aperture_x_m = n_x * spacing_m;
        g.aperture_y_m = n_y * spacing_m;

        g.element_positions.set_size(3, static_cast<arma::uword>(n_x) * n_y);
        const double cx = 0.5 * (n_x - 1);
        const double cy = 0.5 * (n_y - 1);
        arma::uword col = 0;
        for (int iy = 0; iy < n_y; iy++)
            for (int ix = 0; ix < n_x; ix++, col++)
            {
                g.element_positions(0, col) = (ix - cx) * spacing_m;
                g.element_positions(1, col) = (iy - cy) * spacing_m;
                g.element_positions(2, col) = 0.0;
            }
        return g;
    }
}
