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

#include "sim/channel_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "core/errors.hpp"
#include "sim/csv.hpp"

namespace hmwn
{
    static void put_u32_le(std::string &buf, std::uint32_t v)
    {
        for (int i = 0; i < 4; i++)
            buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }

    static void put_f64_le(std::string &buf, double d)
    {
        const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
        for (int i = 0; i < 8; i++)
            buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }

    static std::uint32_t get_u32_le(const unsigned char *p)
    {
        return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
               (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    }

    static double get_f64_le(const unsigned char *p)
    {
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; i--)
            v = (v << 8) | p[i];
        return std::bit_cast<double>(v);
    }

    void save_channel_binary(const std::string &path, const ChannelVector &channel)
    {
        std::string buf;
        buf.reserve(16 + channel.samples.n_elem * 16);
        buf += "HMWC";
        put_u32_le(buf, static_cast<std::uint32_t>(channel.samples.n_elem));
        put_u32_le(buf, 0); // reserved
        put_u32_le(buf, 0); // pad to a 16-byte header
        for (const auto &s : channel.samples)
        {
            put_f64_le(buf, s.real());
            put_f64_le(buf, s.imag());
        }

        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw io_error("cannot open for writing: " + path);
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out)
            throw io_error("write failed: " + path);
    }

    arma::cx_vec load_channel_binary(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw io_error("cannot open for reading: " + path);
        std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (data.size() < 16 || data.compare(0, 4, "HMWC") != 0)
            throw io_error("not a channel-vector file: " + path);
        const auto *p = reinterpret_cast<const unsigned char *>(data.data());
        const std::uint32_t n = get_u32_le(p + 4);
        if (data.size() != 16 + static_cast<std::size_t>(n) * 16)
            throw io_error("channel-vector file is truncated: " + path);

        arma::cx_vec v(n);
        for (std::uint32_t i = 0; i < n; i++)
        {
            const unsigned char *q = p + 16 + static_cast<std::size_t>(i) * 16;
            v[i] = {get_f64_le(q), get_f64_le(q + 8)};
        }
        return v;
    }

    void save_channel_csv(const std::string &path, const ChannelVector &channel)
    {
        CsvFile csv(path, "index,re,im");
        for (arma::uword i = 0; i < channel.samples.n_elem; i++)
            csv.raw_row(std::to_string(i) + "," + format_double(channel.samples[i].real(), 17) + "," +
                        format_double(channel.samples[i].imag(), 17));
        csv.close();
    }
}
