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

#include <cstddef>
#include <functional>

namespace hmwn
{
    // Runs fn(0) .. fn(n-1) on up to `threads` workers. Work items must write to
    // disjoint index-keyed slots; results are then independent of scheduling.
    // The first exception thrown by any worker is rethrown after all join.
    void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)> &fn);
}
