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

#include "tcra/block_code.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tcra {

LinearBlockCode make_code(Gf2Matrix h, int d_min, std::string label) {
    const int n = static_cast<int>(h.cols());
    const int k = n - static_cast<int>(h.rank());
    if (d_min < 1) throw std::invalid_argument("block code: d_min must be >= 1");
    LinearBlockCode code;
    code.h = std::move(h);
    code.n = n;
    code.k = k;
    code.d_min = d_min;
    code.label = std::move(label);
    return code;
}

std::optional<std::vector<std::uint8_t>> map_erase_decode(const LinearBlockCode& code,
                                                          const ErasureWord& word) {
    if (static_cast<int>(word.size()) != code.n)
        throw std::invalid_argument("erasure decode: word length mismatch");
    std::vector<int> erased;
    for (int i = 0; i < code.n; ++i)
        if (word[static_cast<std::size_t>(i)] == kErased) erased.push_back(i);

    // Syndrome of the known part: s = H_knowns * c_knowns.
    std::vector<std::uint64_t> syndrome(code.h.column_words(), 0);
    std::vector<std::uint64_t> col(code.h.column_words());
    for (int i = 0; i < code.n; ++i) {
        if (word[static_cast<std::size_t>(i)] == 1) {
            code.h.pack_column(static_cast<std::size_t>(i), col.data());
            for (std::size_t w = 0; w < syndrome.size(); ++w) syndrome[w] ^= col[w];
        }
    }
    if (erased.empty()) {
        bool zero = true;
        for (std::uint64_t w : syndrome) zero &= (w == 0);
        if (!zero)
            throw std::invalid_argument("erasure decode: received symbols satisfy no codeword");
        std::vector<std::uint8_t> out(word.begin(), word.end());
        return out;
    }
    auto solution = solve_erased_columns(code.h, erased, syndrome);
    if (!solution) return std::nullopt;
    std::vector<std::uint8_t> out(static_cast<std::size_t>(code.n), 0);
    for (int i = 0; i < code.n; ++i)
        if (word[static_cast<std::size_t>(i)] != kErased)
            out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(word[static_cast<std::size_t>(i)]);
    for (std::size_t j = 0; j < erased.size(); ++j)
        out[static_cast<std::size_t>(erased[j])] = (*solution)[j];
    return out;
}

namespace {
long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Evaluation-vector generator matrix of RM(r, m): one row per monomial of
// degree <= r in m boolean variables.
Gf2Matrix rm_generator(int r, int m) {
    const std::size_t n = std::size_t{1} << m;
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<int> subset;
    // Enumerate variable subsets by increasing size.
    for (int deg = 0; deg <= r; ++deg) {
        std::vector<int> idx(static_cast<std::size_t>(deg));
        for (int i = 0; i < deg; ++i) idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<std::uint8_t> row(n, 1);
            for (std::size_t x = 0; x < n; ++x)
                for (int v : idx)
                    if (!((x >> v) & 1)) {
                        row[x] = 0;
                        break;
                    }
            rows.push_back(std::move(row));
            if (deg == 0) break;
            int i = deg - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - deg + i) --i;
            if (i < 0) break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < deg; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return Gf2Matrix::from_rows(rows);
}
}  // namespace

LinearBlockCode reed_muller(int r, int m) {
    if (m < 1 || r < 0 || r > m) throw std::invalid_argument("reed_muller: need 0 <= r <= m");
    const int n = 1 << m;
    int k = 0;
    for (int i = 0; i <= r; ++i) k += static_cast<int>(binom(m, i));
    const int d_min = 1 << (m - r);
    // Parity check = generator of the dual code RM(m-r-1, m).
    Gf2Matrix h = (r == m) ? Gf2Matrix(0, static_cast<std::size_t>(n))
                           : rm_generator(m - r - 1, m);
    LinearBlockCode code = make_code(std::move(h), d_min, "rm(" + std::to_string(r) + "," +
                                                              std::to_string(m) + ")");
    if (code.k != k) throw std::logic_error("reed_muller: dual dimension mismatch");
    return code;
}

int minimum_distance(const Gf2Matrix& generator, int n, int k) {
    if (n > 24 || k > 24) throw std::invalid_argument("minimum_distance: exhaustive search capped at n <= 24");
    if (k == 0) return n;  // no nonzero codewords; by convention d = n
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < n; ++c)
            if (generator.get(static_cast<std::size_t>(i), static_cast<std::size_t>(c)))
                rows[static_cast<std::size_t>(i)] |= 1u << c;
    int best = n + 1;
    std::uint32_t word = 0;
    // Gray-code walk over all nonzero information words: step g flips bit ctz(g).
    for (std::uint32_t g = 1; g < (1u << k); ++g) {
        word ^= rows[static_cast<std::size_t>(std::countr_zero(g))];
        if (word != 0) best = std::min(best, std::popcount(word));
    }
    return best;
}

LinearBlockCode cyclic_code(const std::vector<int>& generator_powers, int n) {
    if (n < 1 || n > 24) throw std::invalid_argument("cyclic_code: supported for 1 <= n <= 24");
    std::uint32_t g = 0;
    for (int p : generator_powers) {
        if (p < 0 || p >= n) throw std::invalid_argument("cyclic_code: generator power out of range");
        g ^= 1u << p;
    }
    if (!(g & 1u)) throw std::invalid_argument("cyclic_code: generator needs a nonzero constant term");
    const int deg = 31 - std::countl_zero(g);
    auto poly_mod = [&](std::uint64_t a) {
        while (a != 0) {
            const int b = 63 - std::countl_zero(a);
            if (b < deg) break;
            a ^= static_cast<std::uint64_t>(g) << (b - deg);
        }
        return static_cast<std::uint32_t>(a);
    };
    // Divisibility of x^n + 1 by g.
    if (poly_mod((std::uint64_t{1} << n) ^ 1u) != 0)
        throw std::invalid_argument("cyclic_code: generator does not divide x^n + 1");
    const int k = n - deg;
    // Systematic encoding: codeword = [parity | message], parity from x^{deg+i} mod g.
    Gf2Matrix gen(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    for (int i = 0; i < k; ++i) {
        const std::uint32_t rem = poly_mod(std::uint64_t{1} << (deg + i));
        for (int b = 0; b < deg; ++b)
            if ((rem >> b) & 1) gen.set(static_cast<std::size_t>(i), static_cast<std::size_t>(b), true);
        gen.set(static_cast<std::size_t>(i), static_cast<std::size_t>(deg + i), true);
    }
    // H = [I | P^T] matches the systematic generator [P | I].
    Gf2Matrix h(static_cast<std::size_t>(deg), static_cast<std::size_t>(n));
    for (int r = 0; r < deg; ++r) {
        h.set(static_cast<std::size_t>(r), static_cast<std::size_t>(r), true);
        for (int i = 0; i < k; ++i)
            if (gen.get(static_cast<std::size_t>(i), static_cast<std::size_t>(r)))
                h.set(static_cast<std::size_t>(r), static_cast<std::size_t>(deg + i), true);
    }
    const int d = (k == n) ? 1 : minimum_distance(gen, n, k);
    std::string label = "cyclic(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
    return make_code(std::move(h), d, std::move(label));
}

LinearBlockCode hamming74() {
    // Columns are the nonzero vectors of F_2^3 in natural order 1..7.
    Gf2Matrix h(3, 7);
    for (int c = 1; c <= 7; ++c)
        for (int b = 0; b < 3; ++b)
            if ((c >> b) & 1) h.set(static_cast<std::size_t>(b), static_cast<std::size_t>(c - 1), true);
    return make_code(std::move(h), 3, "hamming(7,4)");
}

LinearBlockCode single_parity_check(int n) {
    Gf2Matrix h(1, static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) h.set(0, static_cast<std::size_t>(c), true);
    return make_code(std::move(h), 2, "spc(" + std::to_string(n) + ")");
}

LinearBlockCode repetition_code(int n) {
    Gf2Matrix h(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n));
    for (int r = 0; r + 1 < n; ++r) {
        h.set(static_cast<std::size_t>(r), static_cast<std::size_t>(r), true);
        h.set(static_cast<std::size_t>(r), static_cast<std::size_t>(r + 1), true);
    }
    return make_code(std::move(h), n, "repetition(" + std::to_string(n) + ")");
}

CodewordSampler::CodewordSampler(const LinearBlockCode& code) : CodewordSampler(code.h) {}

CodewordSampler::CodewordSampler(const Gf2Matrix& h) : reduced_(h), n_(h.cols()) {
    pivot_cols_ = reduced_.reduce();
    std::vector<bool> is_pivot(n_, false);
    for (int c : pivot_cols_) is_pivot[static_cast<std::size_t>(c)] = true;
    for (std::size_t c = 0; c < n_; ++c)
        if (!is_pivot[c]) free_cols_.push_back(static_cast<int>(c));
}

std::vector<std::uint8_t> CodewordSampler::sample(Rng& rng) const {
    std::vector<std::uint8_t> cw(n_, 0);
    for (int c : free_cols_) cw[static_cast<std::size_t>(c)] = rng.next_bool() ? 1 : 0;
    // Pivot r of the reduced matrix fixes bit pivot_cols_[r] from the free bits.
    for (std::size_t r = 0; r < pivot_cols_.size(); ++r) {
        std::uint8_t acc = 0;
        for (int c : free_cols_)
            if (cw[static_cast<std::size_t>(c)] &&
                reduced_.get(r, static_cast<std::size_t>(c)))
                acc ^= 1;
        cw[static_cast<std::size_t>(pivot_cols_[r])] = acc;
    }
    return cw;
}

}  // namespace tcra
