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

#ifndef TCRA_BLOCK_CODE_HPP
#define TCRA_BLOCK_CODE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcra/gf2_matrix.hpp"
#include "tcra/rng.hpp"

namespace tcra {

// Erasure-channel symbol: 0, 1, or erased.
constexpr std::int8_t kErased = -1;
using ErasureWord = std::vector<std::int8_t>;

/// Binary linear block code given by its parity check matrix.
///
/// Invariants: h has n columns, rank(h) = n - k, d_min >= 1. For random LDPC
/// instances d_min is not computed and is stored as the trivial lower bound 1.
struct LinearBlockCode {
    Gf2Matrix h;
    int n = 0;
    int k = 0;
    int d_min = 1;
    std::string label;

    double rate() const { return static_cast<double>(k) / n; }
};

// Validates the (h, n, k) relationship; throws std::invalid_argument.
LinearBlockCode make_code(Gf2Matrix h, int d_min, std::string label);

/// Block MAP erasure decoding: recovers all erased positions when the erased
/// columns of H have full column rank, otherwise fails without recovering any
/// bit. Throws std::invalid_argument when the non-erased symbols are
/// inconsistent with every codeword (impossible over a pure erasure channel).
std::optional<std::vector<std::uint8_t>> map_erase_decode(const LinearBlockCode& code,
                                                          const ErasureWord& word);

// Standard constructions.
LinearBlockCode reed_muller(int r, int m);
LinearBlockCode cyclic_code(const std::vector<int>& generator_powers, int n);
LinearBlockCode hamming74();
LinearBlockCode single_parity_check(int n);
LinearBlockCode repetition_code(int n);

// Exhaustive minimum-weight search over all 2^k - 1 nonzero codewords;
// intended for short codes (guarded to n <= 24).
int minimum_distance(const Gf2Matrix& generator, int n, int k);

/// Uniformly random codeword sampler: one-time RREF of H, then free positions
/// are drawn uniformly and pivots completed by back-substitution.
class CodewordSampler {
   public:
    explicit CodewordSampler(const LinearBlockCode& code);
    explicit CodewordSampler(const Gf2Matrix& h);
    std::vector<std::uint8_t> sample(Rng& rng) const;
    int dimension() const { return static_cast<int>(free_cols_.size()); }

   private:
    Gf2Matrix reduced_;
    std::vector<int> pivot_cols_;
    std::vector<int> free_cols_;
    std::size_t n_ = 0;
};

/// Random LDPC parity-check construction from degree distributions by socket
/// permutation, with edge-swap repair until the bipartite graph is simple and
/// 4-cycle free (no two checks share two variables). Degree histograms match
/// the target node-perspective pmfs to within 1/n in total variation.
/// Throws std::runtime_error after the repair budget is exhausted.
LinearBlockCode build_ldpc(const class DegreePolynomial& lambda_or_node,
                           const class DegreePolynomial& rho_edge, int n, Rng& rng);

}  // namespace tcra

#endif
