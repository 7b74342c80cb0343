/*
   Copyright 2026 The tcra authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TCRA_IO_HPP
#define TCRA_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tcra/density_evolution.hpp"

namespace tcra {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Design (de)serialization. Short-code outers carry a code spec (rm/cyclic/
// named/inline hex matrix) plus a profile kind; the profile is materialized on
// load, with exact falling back to sampling when the enumeration budget is
// exceeded.
SystemDesign load_design_json(const std::string& path, int sampled_profile_samples = 100'000,
                              std::uint64_t profile_seed = 1, unsigned threads = 0);
SystemDesign design_from_json_text(const std::string& text, int sampled_profile_samples = 100'000,
                                   std::uint64_t profile_seed = 1, unsigned threads = 0);
std::string design_to_json_text(const SystemDesign& design);

// Code persistence: {label, n, k, d_min, h as hex-packed rows, optional profile}.
std::string code_to_json_text(const LinearBlockCode& code, const ErasureFailureProfile* profile);
LinearBlockCode code_from_json_text(const std::string& text);

// Named short codes available on the CLI: "hamming74", "spc3", "rm-r-m",
// "cyclic24" (the generator 1+x^4+x^6+x^10 reference code).
LinearBlockCode named_code(const std::string& name);

/// Reproducibility record carried in every output file header.
struct RunManifest {
    std::string subcommand;
    std::string config_digest;  // FNV-1a over the canonical config text
    std::string version = kToolkitVersion;
    std::uint64_t root_seed = 0;

    std::string header_line() const;  // "# tcra ..." comment with a timestamp field
};

std::string fnv1a_hex(const std::string& text);

// CSV with a manifest header comment, one header row, '.' decimal separator,
// 12 significant digits. Written atomically (temp file + rename).
void write_csv(const std::string& path, const RunManifest& manifest,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);
void write_text_atomic(const std::string& path, const std::string& content);

std::string format_sig(double v);  // 12 significant digits

}  // namespace tcra

#endif
