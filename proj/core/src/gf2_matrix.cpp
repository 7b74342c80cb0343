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

#include "tcra/gf2_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcra {

Gf2Matrix::Gf2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), bits_(rows * words_per_row_, 0) {}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
    Gf2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::vector<std::uint8_t>>& rows) {
    if (rows.empty()) return Gf2Matrix(0, 0);
    Gf2Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size())
            throw std::invalid_argument("gf2: ragged row lengths");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (rows[r][c] & 1) m.set(r, c, true);
    }
    return m;
}

void Gf2Matrix::xor_row_into(std::size_t src, std::size_t dst) {
    std::uint64_t* d = bits_.data() + dst * words_per_row_;
    const std::uint64_t* s = bits_.data() + src * words_per_row_;
    for (std::size_t w = 0; w < words_per_row_; ++w) d[w] ^= s[w];
}

std::size_t Gf2Matrix::rank() const {
    Gf2Matrix tmp = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pivot = r;
        while (pivot < rows_ && !tmp.get(pivot, c)) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != r) {
            for (std::size_t w = 0; w < words_per_row_; ++w)
                std::swap(tmp.bits_[r * words_per_row_ + w], tmp.bits_[pivot * words_per_row_ + w]);
        }
        for (std::size_t i = r + 1; i < rows_; ++i)
            if (tmp.get(i, c)) tmp.xor_row_into(r, i);
        ++r;
    }
    return r;
}

void Gf2Matrix::pack_column(std::size_t c, std::uint64_t* out) const {
    const std::size_t cw = column_words();
    std::fill(out, out + cw, 0ULL);
    for (std::size_t r = 0; r < rows_; ++r)
        if (get(r, c)) out[r >> 6] |= 1ULL << (r & 63);
}

std::size_t Gf2Matrix::column_rank(const std::vector<int>& columns) const {
    Gf2ColumnBasis basis(rows_);
    std::vector<std::uint64_t> col(column_words());
    for (int c : columns) {
        pack_column(static_cast<std::size_t>(c), col.data());
        basis.try_add(col.data());
    }
    return basis.rank();
}

std::vector<int> Gf2Matrix::reduce() {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pivot = r;
        while (pivot < rows_ && !get(pivot, c)) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != r) {
            for (std::size_t w = 0; w < words_per_row_; ++w)
                std::swap(bits_[r * words_per_row_ + w], bits_[pivot * words_per_row_ + w]);
        }
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r && get(i, c)) xor_row_into(r, i);
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

std::vector<std::string> Gf2Matrix::to_hex_rows() const {
    static const char* digits = "0123456789abcdef";
    std::vector<std::string> out;
    out.reserve(rows_);
    const std::size_t nibbles = (cols_ + 3) / 4;
    std::vector<int> nib(nibbles);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::fill(nib.begin(), nib.end(), 0);
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) nib[c / 4] |= 1 << (c & 3);
        std::string s(nibbles, '0');
        for (std::size_t i = 0; i < nibbles; ++i) s[i] = digits[nib[i]];
        out.push_back(std::move(s));
    }
    return out;
}

Gf2Matrix Gf2Matrix::from_hex_rows(const std::vector<std::string>& hex, std::size_t cols) {
    Gf2Matrix m(hex.size(), cols);
    for (std::size_t r = 0; r < hex.size(); ++r) {
        const std::string& s = hex[r];
        if (s.size() != (cols + 3) / 4)
            throw std::invalid_argument("gf2: hex row length does not match column count");
        for (std::size_t c = 0; c < cols; ++c) {
            const char ch = s[c / 4];
            const int nib = ch >= 'a' ? ch - 'a' + 10 : (ch >= 'A' ? ch - 'A' + 10 : ch - '0');
            if (nib & (1 << (c & 3))) m.set(r, c, true);
        }
    }
    return m;
}

bool Gf2ColumnBasis::try_add(const std::uint64_t* col) {
    std::copy(col, col + words_, scratch_.begin());
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        const int p = pivots_[i];
        if ((scratch_[static_cast<std::size_t>(p) >> 6] >> (p & 63)) & 1ULL) {
            const std::uint64_t* v = vectors_[i].data();
            for (std::size_t w = 0; w < words_; ++w) scratch_[w] ^= v[w];
        }
    }
    int pivot = -1;
    for (std::size_t w = 0; w < words_; ++w) {
        if (scratch_[w]) {
            pivot = static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(scratch_[w])));
            break;
        }
    }
    if (pivot < 0) return false;
    vectors_.push_back(scratch_);
    pivots_.push_back(pivot);
    return true;
}

void Gf2ColumnBasis::pop() {
    vectors_.pop_back();
    pivots_.pop_back();
}

void Gf2ColumnBasis::clear() {
    vectors_.clear();
    pivots_.clear();
}

std::optional<std::vector<std::uint8_t>> solve_erased_columns(
    const Gf2Matrix& h, const std::vector<int>& erased,
    const std::vector<std::uint64_t>& syndrome) {
    const std::size_t m = h.rows();
    const std::size_t e = erased.size();
    if (e == 0) return std::vector<std::uint8_t>{};
    // Augmented system [H_E | s], eliminated over the erased columns.
    Gf2Matrix aug(m, e + 1);
    for (std::size_t j = 0; j < e; ++j)
        for (std::size_t r = 0; r < m; ++r)
            if (h.get(r, static_cast<std::size_t>(erased[j]))) aug.set(r, j, true);
    for (std::size_t r = 0; r < m; ++r)
        if ((syndrome[r >> 6] >> (r & 63)) & 1ULL) aug.set(r, e, true);

    std::vector<int> pivots = aug.reduce();
    const bool syndrome_pivot = !pivots.empty() && pivots.back() == static_cast<int>(e);
    if (syndrome_pivot)
        throw std::invalid_argument("erasure decode: received symbols satisfy no codeword");
    if (pivots.size() < e) return std::nullopt;  // rank deficient: MAP failure
    std::vector<std::uint8_t> solution(e, 0);
    for (std::size_t r = 0; r < e; ++r)
        if (aug.get(r, e)) solution[static_cast<std::size_t>(pivots[r])] = 1;
    return solution;
}

}  // namespace tcra
