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

#include <fstream>
#include <string>

namespace hmwn
{
    // snprintf-based %g formatting with a fixed significant-digit count; the C
    // locale is never touched, so output bytes are stable run to run.
    std::string format_double(double value, int significant_digits = 12);

    // Minimal deterministic CSV writer: fixed header, '\n' line endings.
    class CsvFile
    {
      public:
        CsvFile(const std::string &path, const std::string &header);

        void raw_row(const std::string &line);

        template <typename... Fields>
        void row(const Fields &...fields)
        {
            std::string line;
            append_all(line, fields...);
            raw_row(line);
        }

        void close();

      private:
        static void append_field(std::string &line, const std::string &f) { line += f; }
        static void append_field(std::string &line, const char *f) { line += f; }
        static void append_field(std::string &line, double f) { line += format_double(f); }
        static void append_field(std::string &line, int f) { line += std::to_string(f); }
        static void append_field(std::string &line, long f) { line += std::to_string(f); }
        static void append_field(std::string &line, unsigned long long f) { line += std::to_string(f); }
        static void append_field(std::string &line, unsigned long f) { line += std::to_string(f); }
        static void append_field(std::string &line, unsigned f) { line += std::to_string(f); }

        template <typename First, typename... Rest>
        static void append_all(std::string &line, const First &first, const Rest &...rest)
        {
            append_field(line, first);
            if constexpr (sizeof...(rest) > 0)
            {
                line += ',';
                append_all(line, rest...);
            }
        }

        std::ofstream out_;
        std::string path_;
    };
}
