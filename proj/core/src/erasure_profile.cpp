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

#include "tcra/erasure_profile.hpp"

#include <algorithm>
#include <cmath>

#include "tcra/parallel.hpp"

namespace tcra {

namespace {
// C(n, k) saturating at 2^63.
std::uint64_t binom_sat(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long double r = 1.0L;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > 9.2e18L) return std::uint64_t{1} << 63;
    }
    return static_cast<std::uint64_t>(r + 0.5L);
}

void force_endpoints(std::vector<double>& p, int n, int k, int d_min) {
    for (int e = 0; e <= n; ++e) {
        if (e < d_min) p[static_cast<std::size_t>(e)] = 0.0;
        else if (e > n - k) p[static_cast<std::size_t>(e)] = 1.0;
    }
}
}  // namespace

std::uint64_t exact_profile_cost(const LinearBlockCode& code) {
    std::uint64_t total = 0;
    for (int e = code.d_min; e <= code.n - code.k; ++e) {
        const std::uint64_t c = binom_sat(code.n, e);
        if (total + c < total || c == (std::uint64_t{1} << 63)) return std::uint64_t{1} << 63;
        total += c;
    }
    return total;
}

ErasureFailureProfile exact_profile(const LinearBlockCode& code, std::uint64_t budget) {
    const int n = code.n;
    const int k = code.k;
    const int e_max = n - k;
    if (exact_profile_cost(code) > budget)
        throw ProfileBudgetExceeded("exact_profile: enumeration over " + code.label +
                                    " exceeds the subset budget; use sampled_profile");
    ErasureFailureProfile out;
    out.kind = ProfileKind::exact;
    out.p_e.assign(static_cast<std::size_t>(n) + 1, 0.0);
    force_endpoints(out.p_e, n, k, code.d_min);
    if (code.d_min > e_max) return out;  // both shortcuts cover every E

    // Count column subsets of each size whose submatrix has full column rank.
    // DFS over increasing column indices; dependent branches die immediately,
    // so the visit count is the number of independent subsets of size <= e_max.
    std::vector<std::vector<std::uint64_t>> packed(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        packed[static_cast<std::size_t>(c)].resize(code.h.column_words());
        code.h.pack_column(static_cast<std::size_t>(c), packed[static_cast<std::size_t>(c)].data());
    }
    std::vector<std::uint64_t> full_rank_count(static_cast<std::size_t>(e_max) + 1, 0);
    full_rank_count[0] = 1;
    Gf2ColumnBasis basis(code.h.rows());
    // Explicit stack of next-column indices per depth.
    std::vector<int> next(static_cast<std::size_t>(e_max) + 1, 0);
    int depth = 0;
    while (depth >= 0) {
        int& c = next[static_cast<std::size_t>(depth)];
        if (c >= n || depth == e_max) {
            --depth;
            if (depth >= 0) basis.pop();
            continue;
        }
        const int col = c++;
        if (basis.try_add(packed[static_cast<std::size_t>(col)].data())) {
            ++depth;
            ++full_rank_count[static_cast<std::size_t>(depth)];
            next[static_cast<std::size_t>(depth)] = col + 1;
        }
    }
    for (int e = code.d_min; e <= e_max; ++e) {
        const long double total = static_cast<long double>(binom_sat(n, e));
        out.p_e[static_cast<std::size_t>(e)] =
            static_cast<double>(1.0L - full_rank_count[static_cast<std::size_t>(e)] / total);
    }
    return out;
}

ErasureFailureProfile sampled_profile(const LinearBlockCode& code, int samples_per_e,
                                      std::uint64_t seed, unsigned threads) {
    if (samples_per_e < 1) throw std::invalid_argument("sampled_profile: need samples_per_e >= 1");
    const int n = code.n;
    const int k = code.k;
    ErasureFailureProfile out;
    out.kind = ProfileKind::sampled;
    out.p_e.assign(static_cast<std::size_t>(n) + 1, 0.0);
    force_endpoints(out.p_e, n, k, code.d_min);
    const int e_lo = code.d_min;
    const int e_hi = n - k;
    if (e_lo > e_hi) return out;

    std::vector<std::vector<std::uint64_t>> packed(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        packed[static_cast<std::size_t>(c)].resize(code.h.column_words());
        code.h.pack_column(static_cast<std::size_t>(c), packed[static_cast<std::size_t>(c)].data());
    }
    parallel_for(static_cast<std::size_t>(e_hi - e_lo + 1), threads, [&](std::size_t task) {
        const int e = e_lo + static_cast<int>(task);
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(e)));
        std::vector<int> idx(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
        Gf2ColumnBasis basis(code.h.rows());
        long long deficient = 0;
        for (int s = 0; s < samples_per_e; ++s) {
            // Partial Fisher-Yates: the first e entries become the subset.
            for (int i = 0; i < e; ++i) {
                const std::size_t j =
                    static_cast<std::size_t>(i) + rng.next_below(static_cast<std::uint64_t>(n - i));
                std::swap(idx[static_cast<std::size_t>(i)], idx[j]);
            }
            basis.clear();
            bool dependent = false;
            for (int i = 0; i < e; ++i) {
                if (!basis.try_add(packed[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])].data())) {
                    dependent = true;
                    break;
                }
            }
            deficient += dependent ? 1 : 0;
        }
        out.p_e[static_cast<std::size_t>(e)] =
            static_cast<double>(deficient) / static_cast<double>(samples_per_e);
    });
    // Isotonic clamp: Monte Carlo noise must not violate monotonicity.
    for (int e = 1; e <= n; ++e)
        out.p_e[static_cast<std::size_t>(e)] =
            std::max(out.p_e[static_cast<std::size_t>(e)], out.p_e[static_cast<std::size_t>(e - 1)]);
    force_endpoints(out.p_e, n, k, code.d_min);
    return out;
}

ErasureFailureProfile step_profile(int n, int k, int d_min) {
    if (d_min > n - k + 1)
        throw std::invalid_argument("step_profile: d_min exceeds the Singleton bound");
    ErasureFailureProfile out;
    out.kind = ProfileKind::step;
    out.p_e.assign(static_cast<std::size_t>(n) + 1, 1.0);
    for (int e = 0; e < d_min; ++e) out.p_e[static_cast<std::size_t>(e)] = 0.0;
    return out;
}

ErasureFailureProfile linear_profile(int n, int k, int d_min) {
    if (d_min > n - k + 1)
        throw std::invalid_argument("linear_profile: d_min exceeds the Singleton bound");
    ErasureFailureProfile out;
    out.kind = ProfileKind::linear;
    out.p_e.assign(static_cast<std::size_t>(n) + 1, 0.0);
    for (int e = 0; e <= n; ++e) {
        double v;
        if (e < d_min) v = 0.0;
        else if (e > n - k) v = 1.0;
        else v = static_cast<double>(e - (d_min - 1)) / static_cast<double>((n - k + 1) - (d_min - 1));
        out.p_e[static_cast<std::size_t>(e)] = v;
    }
    return out;
}

ProfileKind profile_kind_from_string(const std::string& s) {
    if (s == "exact") return ProfileKind::exact;
    if (s == "sampled") return ProfileKind::sampled;
    if (s == "step") return ProfileKind::step;
    if (s == "linear") return ProfileKind::linear;
    throw std::invalid_argument("unknown profile kind '" + s + "'");
}

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::exact: return "exact";
        case ProfileKind::sampled: return "sampled";
        case ProfileKind::step: return "step";
        case ProfileKind::linear: return "linear";
    }
    return "?";
}

}  // namespace tcra
