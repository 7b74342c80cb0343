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

#ifndef TCRA_ERASURE_PROFILE_HPP
#define TCRA_ERASURE_PROFILE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcra/block_code.hpp"

namespace tcra {

enum class ProfileKind { exact, sampled, step, linear };

/// P_E(H): probability that block MAP erasure decoding fails given E erasures
/// placed uniformly at random. p_e[E] = 0 for E < d_min, 1 for E > n - k,
/// monotone non-decreasing in E.
struct ErasureFailureProfile {
    std::vector<double> p_e;  // length n + 1
    ProfileKind kind = ProfileKind::exact;

    int n() const { return static_cast<int>(p_e.size()) - 1; }
};

struct ProfileBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact fraction of E-column submatrices with deficient rank, enumerated for
// d_min <= E <= n - k with both endpoints forced analytically. Throws
// ProfileBudgetExceeded when sum_{E=d_min}^{n-k} C(n,E) exceeds the budget;
// callers are expected to fall back to sampled_profile.
ErasureFailureProfile exact_profile(const LinearBlockCode& code,
                                    std::uint64_t budget = std::uint64_t{1} << 30);

// How many subset rank tests exact_profile would enumerate (saturating).
std::uint64_t exact_profile_cost(const LinearBlockCode& code);

// Monte Carlo estimate with samples_per_e uniform E-subsets per erasure count;
// endpoints forced, isotonic clamping restores monotonicity. Parallel over E.
ErasureFailureProfile sampled_profile(const LinearBlockCode& code, int samples_per_e,
                                      std::uint64_t seed, unsigned threads = 0);

// Step approximation: fails exactly when E >= d_min (bounded distance view;
// an upper bound on the MAP failure probability).
ErasureFailureProfile step_profile(int n, int k, int d_min);

// Linear ramp between the two analytic endpoints; exact for MDS codes.
ErasureFailureProfile linear_profile(int n, int k, int d_min);

ProfileKind profile_kind_from_string(const std::string& s);
std::string to_string(ProfileKind kind);

}  // namespace tcra

#endif
