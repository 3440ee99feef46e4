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

#include "sim/csv.hpp"

#include <cstdio>

#include "core/errors.hpp"

namespace hmwn
{
    std::string format_double(double value, int significant_digits)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
        return buf;
    }

    CsvFile::CsvFile(const std::string &path, const std::string &header) : path_(path)
    {
        out_.open(path, std::ios::binary | std::ios::trunc);
        if (!out_)
            throw io_error("cannot open for writing: " + path);
        out_ << header << '\n';
    }

    void CsvFile::raw_row(const std::string &line)
    {
        out_ << line << '\n';
    }

    void CsvFile::close()
    {
        if (out_.is_open())
        {
            out_.flush();
            if (!out_)
                throw io_error("write failed: " + path_);
            out_.close();
        }
    }
}
