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

#include <optional>
#include <vector>

#include <armadillo>

#include "core/carrier.hpp"
#include "core/geometry.hpp"
#include "core/lattice.hpp"

namespace hmwn
{
    enum class AtomKind
    {
        dft,
        fh
    };

    struct AtomMeta
    {
        AtomKind kind = AtomKind::dft;
        int u = 0; // DFT bin p, or harmonic index l
        int v = 0; // DFT bin q, or harmonic index m
        double kappa_x = 0.0;
        double kappa_y = 0.0;
        bool is_propagating = false;
        std::optional<Direction> direction; // absent outside the visible region
    };

    // Atom dictionary over the array elements: one unit-norm column per atom,
    // rows in element order (y outer, x inner).
    struct Basis
    {
        arma::cx_mat atoms;
        std::vector<AtomMeta> meta;
        AtomKind kind = AtomKind::dft;

        arma::uword atom_count() const { return atoms.n_cols; }
    };

    // Square unitary 2D DFT with centered bins p in [-n_x/2, n_x/2), q likewise:
    //   a_(p,q)[i, j] = exp(j 2 pi (p i / n_x + q j / n_y)) / sqrt(n_x n_y).
    // Bin (p, q) maps to spatial frequency (2 pi p / L_x, 2 pi q / L_y); bins with
    // kappa^2 > k^2 are flagged non-propagating and carry no direction.
    Basis build_dft_basis(const PlanarArrayGeometry &geometry, const CarrierConfig &carrier);

    // Harmonic atoms on the wavenumber lattice, phase-referenced to the array
    // center:  a_(l,m)[element at (x, y)] = exp(j (kappa_x x + kappa_y y)) / sqrt(N).
    // Columns follow lattice order. At exactly critical sampling (spacing =
    // lambda/2 with even element counts) the rim indices +N/2 and -N/2 alias to
    // the same sampled atom; only the lexicographically first representative is
    // kept so the returned set is always full rank. In every non-critical
    // configuration the atom count equals the lattice cardinality.
    Basis build_fh_basis(const WavenumberLattice &lattice, const PlanarArrayGeometry &geometry);

    enum class ProjectionMode
    {
        adjoint,       // c = B^H h
        least_squares  // c = argmin ||h - B c||, via QR
    };

    struct SpectrumResult
    {
        arma::cx_vec coefficients;
        arma::vec power; // |c|^2 per atom
        arma::uword n95 = 0; // smallest count of largest powers holding >= 95% of the coefficient energy
        double residual_energy_fraction = 0.0; // ||h - B c||^2 / ||h||^2
    };

    // Throws std::invalid_argument on dimension mismatch and std::runtime_error
    // if the basis is rank-deficient in least-squares mode.
    SpectrumResult project(const Basis &basis, const arma::cx_vec &channel, ProjectionMode mode);

    struct LeakageSummary
    {
        arma::uword n95 = 0;
        double normalized = 0.0; // n95 / atom count
    };

    // Throws std::invalid_argument on a zero-energy spectrum.
    LeakageSummary leakage_n95(const SpectrumResult &spectrum);

    // Normalized inner-product magnitude between a continuous plane wave at
    // probe_kappa_x and a sampled 1D atom at atom_kappa_x over n_x elements:
    //   |sin(N u / 2) / (N sin(u / 2))|  with  u = (probe - atom) * spacing.
    double dirichlet_probe(const PlanarArrayGeometry &geometry, double probe_kappa_x, double atom_kappa_x);
}
