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

#include <armadillo>

namespace hmwn
{
    // Uniform planar array in the z = 0 plane, centered at the origin.
    //
    // The aperture is defined as L = N * spacing (one spacing per element, as for a
    // sampled continuous aperture), not (N - 1) * spacing. This convention shifts
    // spatial-frequency grids and lattice counts by one index relative to the
    // edge-to-edge definition, so it is applied uniformly everywhere.
    //
    // Element ordering is row-major with y outer and x inner:
    //   index = iy * n_x + ix,   x = (ix - (n_x - 1) / 2) * spacing, analogous for y.
    struct PlanarArrayGeometry
    {
        int n_x = 0;
        int n_y = 0;
        double spacing_m = 0.0;
        double aperture_x_m = 0.0; // n_x * spacing
        double aperture_y_m = 0.0; // n_y * spacing
        arma::mat element_positions; // size [3, n_x * n_y], one column per element

        int element_count() const { return n_x * n_y; }
    };

    // Throws std::invalid_argument on non-positive counts or spacing.
    PlanarArrayGeometry make_planar_array(int n_x, int n_y, double spacing_m);
}
