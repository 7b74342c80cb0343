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

#ifndef TCRA_GF2_MATRIX_HPP
#define TCRA_GF2_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tcra {

/// Dense GF(2) matrix, bit-packed row-major (64 columns per word).
class Gf2Matrix {
   public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols);

    static Gf2Matrix identity(std::size_t n);
    static Gf2Matrix from_rows(const std::vector<std::vector<std::uint8_t>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1ULL;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = bits_[r * words_per_row_ + (c >> 6)];
        const std::uint64_t m = 1ULL << (c & 63);
        w = v ? (w | m) : (w & ~m);
    }
    void flip(std::size_t r, std::size_t c) { bits_[r * words_per_row_ + (c >> 6)] ^= 1ULL << (c & 63); }

    const std::uint64_t* row_words(std::size_t r) const { return bits_.data() + r * words_per_row_; }
    void xor_row_into(std::size_t src, std::size_t dst);

    std::size_t rank() const;

    // Packs column c into `out` (ceil(rows/64) words, bit i = entry in row i).
    void pack_column(std::size_t c, std::uint64_t* out) const;
    std::size_t column_words() const { return (rows_ + 63) / 64; }

    // Rank of the submatrix formed by the listed columns.
    std::size_t column_rank(const std::vector<int>& columns) const;

    // Row-reduces in place (reduced row echelon form); returns pivot columns
    // in order. Zero rows are moved to the bottom.
    std::vector<int> reduce();

    bool operator==(const Gf2Matrix& other) const = default;

    std::vector<std::string> to_hex_rows() const;
    static Gf2Matrix from_hex_rows(const std::vector<std::string>& hex, std::size_t cols);

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Incremental basis of GF(2) column vectors; supports O(rank) membership
/// tests and constant-time removal of the most recently added vector, which
/// is what the erasure-profile subset enumeration needs.
class Gf2ColumnBasis {
   public:
    explicit Gf2ColumnBasis(std::size_t bit_length)
        : words_((bit_length + 63) / 64), scratch_(words_) {}

    // Reduces `col` against the basis. Returns true (and extends the basis)
    // when independent; false leaves the basis unchanged.
    bool try_add(const std::uint64_t* col);
    void pop();
    std::size_t rank() const { return pivots_.size(); }
    void clear();

   private:
    std::size_t words_;
    std::vector<std::uint64_t> scratch_;
    std::vector<std::vector<std::uint64_t>> vectors_;
    std::vector<int> pivots_;
};

// Solves H_E x = s where H_E is the submatrix of the listed (erased) columns.
// Returns the unique solution when rank(H_E) = |E|; std::nullopt when the
// system is underdetermined. Throws std::invalid_argument when inconsistent
// (the known symbols satisfy no codeword).
std::optional<std::vector<std::uint8_t>> solve_erased_columns(const Gf2Matrix& h,
                                                              const std::vector<int>& erased,
                                                              const std::vector<std::uint64_t>& syndrome);

}  // namespace tcra

#endif
