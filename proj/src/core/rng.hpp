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

#include <complex>
#include <cstdint>
#include <string_view>

namespace hmwn
{
    // Self-contained xoshiro256++ generator with explicit Box-Muller transforms.
    // Standard-library distributions are implementation-defined, which would break
    // the byte-reproducibility contract of the Monte-Carlo harness; this generator
    // produces identical streams for identical seeds on any platform.
    class Rng
    {
      public:
        explicit Rng(std::uint64_t seed);

        std::uint64_t next_u64();

        // Uniform on [0, 1) with 53-bit resolution.
        double uniform();

        // Standard normal N(0, 1).
        double gaussian();

        // Circularly-symmetric complex Gaussian CN(0, 1), i.e. each component
        // N(0, 1/2) so that E|z|^2 = 1.
        std::complex<double> cgaussian();

      private:
        std::uint64_t s_[4];
    };

    // 64-bit FNV-1a of a purpose string; used for seed stream separation.
    std::uint64_t fnv1a64(std::string_view text);

    // Counter-based seed derivation: every random draw in the harness flows from
    // (base_seed, purpose string, index). Streams are independent of execution
    // order, so parallel and serial runs produce identical output.
    std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view purpose, std::uint64_t index);
}
