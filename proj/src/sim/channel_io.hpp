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

#include <string>

#include "channel/generators.hpp"

namespace hmwn
{
    // Binary channel-vector format:
    //   16-byte header: magic "HMWC", u32 length (little-endian), u32 reserved = 0,
    //   then length * 2 little-endian IEEE-754 doubles, (re, im) interleaved.
    void save_channel_binary(const std::string &path, const ChannelVector &channel);

    // Validates the header; throws io_error on mismatch.
    arma::cx_vec load_channel_binary(const std::string &path);

    // CSV companion with columns index,re,im (full 17-digit precision).
    void save_channel_csv(const std::string &path, const ChannelVector &channel);
}
