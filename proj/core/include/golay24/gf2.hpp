#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

// Dense GF(2) vectors and matrices. All public indices are 1-based;
// storage is 0-based and row-packed into 64-bit words.
namespace golay24 {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : bits_(len, 0) {}

    // Parses "1011" or "1 0 1 1"; other characters are rejected.
    static BitVector from_string(std::string_view s);
    // Bit i of `mask` becomes entry i+1.
    static BitVector from_mask(std::uint64_t mask, std::size_t len);

    std::size_t size() const { return bits_.size(); }
    int at(std::size_t i) const;             // 1-based
    void set(std::size_t i, int bit);        // 1-based
    std::uint64_t to_mask() const;           // requires size() <= 64
    std::size_t weight() const;

    BitVector operator^(const BitVector& other) const;
    bool operator==(const BitVector&) const = default;

    std::string to_string() const;           // "1011"

private:
    std::vector<std::uint8_t> bits_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    static BitMatrix zero(std::size_t rows, std::size_t cols);
    // One string per row, same formats as BitVector::from_string.
    static BitMatrix from_rows(std::initializer_list<std::string_view> rows);
    static BitMatrix from_rows(const std::vector<BitVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    int at(std::size_t r, std::size_t c) const;      // 1-based
    void set(std::size_t r, std::size_t c, int bit); // 1-based
    BitVector row(std::size_t r) const;              // 1-based
    void set_row(std::size_t r, const BitVector& v);
    std::uint64_t row_mask(std::size_t r) const;     // requires cols() <= 64

    bool operator==(const BitMatrix& other) const;

    bool is_upper_triangular_unit_diagonal() const;

    // One row per line, bits separated by single spaces.
    std::string to_text() const;

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;

    friend BitMatrix kron(const BitMatrix&, const BitMatrix&);
    friend BitMatrix gf2_matmul(const BitMatrix&, const BitMatrix&);
    std::uint64_t* row_ptr(std::size_t r0) { return data_.data() + r0 * words_; }
    const std::uint64_t* row_ptr(std::size_t r0) const { return data_.data() + r0 * words_; }
};

// Kronecker product over GF(2).
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

// Matrix product with XOR accumulation. Throws on dimension mismatch.
BitMatrix gf2_matmul(const BitMatrix& a, const BitMatrix& b);

// Row vector times matrix.
BitVector gf2_vecmat(const BitVector& v, const BitMatrix& m);

struct RrefResult {
    BitMatrix matrix;                     // zero rows dropped
    std::vector<std::size_t> pivot_cols;  // ascending, 1-based
    std::size_t rank() const { return pivot_cols.size(); }
};

// Reduced row-echelon form. Pivot is the lowest-index nonzero column,
// rows are swapped into the lowest available row.
RrefResult rref(const BitMatrix& m);

// Returns R with g * R = I. Throws "not right-invertible" if g is rank
// deficient.
BitMatrix right_inverse(const BitMatrix& g);

// Returns square A with A * g = [I_k | remainder]. Requires the first k
// columns of g to be invertible.
BitMatrix systematize(const BitMatrix& g);

// Permutation of length 2^n sending index i to the bit-reversed index,
// returned 1-based: perm[i-1] is where index i maps to.
std::vector<std::size_t> bit_reversal_perm(unsigned n);

// Square 0/1 matrix P with P[i, perm[i-1]] = 1, so (v P)_j = v_{perm^{-1}(j)}.
BitMatrix permutation_matrix(const std::vector<std::size_t>& perm);

// Reorders columns: column j of the result is column perm[j-1] of m.
BitMatrix column_permute(const BitMatrix& m, const std::vector<std::size_t>& perm);

// Rearranges column blocks of width `block` per `order` (1-based block
// ids): block j of the result is block order[j-1] of m. Throws if
// m.cols() is not divisible by block.
BitMatrix block_column_permute(const BitMatrix& m, std::size_t block,
                               const std::vector<std::size_t>& order);

BitMatrix hstack(const BitMatrix& a, const BitMatrix& b);
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

}  // namespace golay24
