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

#include <stdexcept>
#include <string>

namespace hmwn
{
    // Raised on malformed or inconsistent configuration input.
    class config_error : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    // Raised on file system failures (missing files, unwritable output).
    class io_error : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };
}
